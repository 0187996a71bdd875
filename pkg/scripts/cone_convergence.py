"""Cone-point probes at shrinking radii.

Prints circumference / radial distance against 4 pi, the fitted r^2
coefficient, and the angle deficit of circular and square loops.
"""

import argparse
import math

from wormhole_geom.curvature import circle_probe, gauss_bonnet_deficit, loop_deficit
from wormhole_geom.loops import square_loop


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--radii", default="0.3,0.2,0.1,0.05,0.025,0.0125")
    args = parser.parse_args()
    radii = [float(r) for r in args.radii.split(",")]

    print(f"{'r':>8} {'ratio':>14} {'ratio/4pi-1':>12} {'C=(1-q)/r^2':>12} {'circle def':>12} {'square def':>12}")
    for r in radii:
        probe = circle_probe(r)
        q = probe.ratio / (4 * math.pi)
        print(
            f"{r:8.4f} {probe.ratio:14.10f} {q - 1:12.3e} {(1 - q) / r**2:12.6f} "
            f"{gauss_bonnet_deficit(r):12.8f} {loop_deficit(square_loop(r)):12.8f}"
        )
    print(f"-2 pi = {-2 * math.pi:.8f}; small-r expansion predicts C = 1/12 = {1 / 12:.6f}")


if __name__ == "__main__":
    main()
