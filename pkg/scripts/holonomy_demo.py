"""Unwrapped parallel-transport angle for loops around and away from the focal point."""

import math

from wormhole_geom.atlas import ChartPoint
from wormhole_geom.loops import circle_loop, square_loop
from wormhole_geom.transport import TransportFrame, parallel_transport

LOOPS = [
    circle_loop(0.1, (1.0, 0.0)),
    circle_loop(0.1, (0.0, 0.8)),
    circle_loop(0.1),
    circle_loop(0.25, (0.1, 0.05)),
    square_loop(0.2),
    circle_loop(0.1, winding=2),
    circle_loop(0.1, winding=-3),
]

if __name__ == "__main__":
    vec = (1.0, 0.5, 0.3)
    print(f"{'loop':<40} {'angle / pi':>12} {'|dV|':>10}")
    for loop in LOOPS:
        u, v = loop.segments[0](0.0)[0]
        out = parallel_transport(TransportFrame(ChartPoint(u, v), vec), loop)
        dv = max(abs(a - b) for a, b in zip(out.vector, vec))
        print(f"{loop.label:<40} {out.unwrapped_angle / math.pi:12.8f} {dv:10.2e}")
