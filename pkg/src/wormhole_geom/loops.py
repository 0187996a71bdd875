"""Closed piecewise-smooth loops in the meridian (u, v) plane.

A loop is a cyclic sequence of segments, each parametrised on [0, 1] and
returning position, velocity and acceleration in chart coordinates. Corners
between segments contribute their exterior angle; since the meridian metric
is conformal, coordinate angles are Riemannian angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

Segment = Callable[[float], tuple]


@dataclass(frozen=True)
class Loop:
    segments: Sequence[Segment]
    label: str = ""

    def __post_init__(self):
        if not self.segments:
            raise ValueError("a loop needs at least one segment")
        n = len(self.segments)
        for i, seg in enumerate(self.segments):
            end = seg(1.0)[0]
            start = self.segments[(i + 1) % n](0.0)[0]
            if np.max(np.abs(np.asarray(end) - np.asarray(start))) > 1e-12:
                raise ValueError(f"segment {i} does not join the next one")

    def corner_angles(self):
        """Exterior (turning) angles at the joints, in (-pi, pi]."""
        n = len(self.segments)
        out = []
        for i, seg in enumerate(self.segments):
            t_in = np.asarray(seg(1.0)[1])
            t_out = np.asarray(self.segments[(i + 1) % n](0.0)[1])
            cross = t_in[0] * t_out[1] - t_in[1] * t_out[0]
            out.append(math.atan2(cross, float(np.dot(t_in, t_out))))
        return out

    def sample(self, n=200):
        ts = np.linspace(0.0, 1.0, n, endpoint=False)
        return np.array([seg(t)[0] for seg in self.segments for t in ts])


def circle_loop(radius, center=(0.0, 0.0), winding=1):
    """Counter-clockwise coordinate circle, traversed ``winding`` times."""
    cu, cv = center
    w = 2.0 * math.pi * winding

    def seg(t):
        c, s = math.cos(w * t), math.sin(w * t)
        return (
            np.array([cu + radius * c, cv + radius * s]),
            np.array([-radius * w * s, radius * w * c]),
            np.array([-radius * w * w * c, -radius * w * w * s]),
        )

    return Loop((seg,), label=f"circle(r={radius}, c={center}, w={winding})")


def _edge(p0, p1):
    p0, p1 = np.asarray(p0, float), np.asarray(p1, float)
    d = p1 - p0
    zero = np.zeros(2)

    def seg(t):
        return p0 + t * d, d, zero

    return seg


def square_loop(half_side, center=(0.0, 0.0)):
    """Counter-clockwise axis-aligned square."""
    cu, cv = center
    h = half_side
    corners = [(cu + h, cv - h), (cu + h, cv + h), (cu - h, cv + h), (cu - h, cv - h)]
    segs = tuple(_edge(corners[i], corners[(i + 1) % 4]) for i in range(4))
    return Loop(segs, label=f"square(h={half_side}, c={center})")
