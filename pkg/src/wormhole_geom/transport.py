"""Parallel transport around loops in the meridian plane.

The rotation angle of the transported vector is integrated as an extra ODE
component, so it accumulates continuously instead of being reduced mod
2 pi. The angle is measured against the coordinate frame (d_u, d_v), which
is orthogonal because the meridian metric is conformal. Around the focal
point the vector comes back unchanged, yet the unwrapped angle is -2 pi per
counter-clockwise turn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .atlas import HALF_PI, ChartPoint
from .curvature import christoffel_array
from .errors import DomainError, SingularApproach
from .integrate import dopri54

MIN_FOCAL_CLEARANCE = 1e-3


@dataclass(frozen=True)
class TransportFrame:
    base: ChartPoint
    vector: tuple  # chart components (V^u, V^v, V^phi)
    unwrapped_angle: float = 0.0

    def norm(self):
        g = _metric_diag(self.base.u, self.base.v)
        return math.sqrt(sum(gi * c * c for gi, c in zip(g, self.vector)))


def _metric_diag(u, v):
    F = math.sinh(u) ** 2 + math.sin(v) ** 2
    return F, F, (math.cosh(u) * math.cos(v)) ** 2


def _check_loop(loop):
    pts = loop.sample(400)
    if np.min(np.hypot(pts[:, 0], pts[:, 1])) < MIN_FOCAL_CLEARANCE:
        raise SingularApproach("loop passes within 1e-3 of the focal point")
    if np.max(np.abs(pts[:, 1])) > HALF_PI - MIN_FOCAL_CLEARANCE:
        raise DomainError("loop must stay off the symmetry axis")


def parallel_transport(frame, loop, tol=1e-10):
    """Transport ``frame.vector`` once around ``loop``.

    ``frame.base`` must be the loop's starting point. The returned frame has
    the transported vector and ``unwrapped_angle`` increased by the
    continuous rotation accumulated along the way.
    """
    if not any(frame.vector):
        raise DomainError("cannot transport the zero vector")
    _check_loop(loop)
    start = loop.segments[0](0.0)[0]
    if abs(start[0] - frame.base.u) > 1e-9 or abs(start[1] - frame.base.v) > 1e-9:
        raise DomainError("frame base is not the loop's starting point")

    state = np.array([*frame.vector, 0.0], dtype=float)
    for seg in loop.segments:

        def rhs(t, y, seg=seg):
            x, xd, _ = seg(t)
            gam = christoffel_array(x[0], x[1])
            vel = np.array([xd[0], xd[1], 0.0])
            dvec = -np.einsum("abc,b,c->a", gam, vel, y[:3])
            planar = y[0] * y[0] + y[1] * y[1]
            dtheta = (y[0] * dvec[1] - y[1] * dvec[0]) / planar if planar > 0 else 0.0
            return np.array([dvec[0], dvec[1], dvec[2], dtheta])

        _, ys = dopri54(rhs, 0.0, state, 1.0, rtol=tol, atol=tol)
        state = ys[-1]
    return TransportFrame(
        frame.base,
        tuple(float(c) for c in state[:3]),
        frame.unwrapped_angle + float(state[3]),
    )
