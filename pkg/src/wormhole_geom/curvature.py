"""Connection, curvature and the two probes of the focal-circle cone point.

Pointwise, the wormhole metric is flat: its Riemann tensor vanishes wherever
the chart is regular. The curvature hides at the focal circle, where every
meridian surface has a cone point of total angle 4 pi. ``circle_probe``
measures that angle through the circumference-to-radius ratio of small
loops, and ``gauss_bonnet_deficit`` measures the enclosed curvature (-2 pi)
through the total geodesic curvature of loops around it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .atlas import EPS_CLASS, ChartPoint, Region, classify
from .errors import DomainError, SingularPoint
from .loops import circle_loop
from .metric import conformal_factor, metric_at, metric_components
from .tensors import (
    DEFAULT_STEP,
    Christoffel3,
    Riemann3,
    fd_derivative,
    fd_derivative_checked,
    fd_second_derivative,
    mat3_inverse,
)

U, V, PHI = 0, 1, 2
# metric is non-degenerate on the open disk, so only these are refused
_SINGULAR = (Region.FOCAL_CIRCLE, Region.AXIS)
_PROBE_MAX_RADIUS = 0.3
_QUAD = dict(epsabs=1e-12, epsrel=1e-10, limit=200)


@dataclass(frozen=True)
class CurvatureReport:
    point: ChartPoint
    riemann_max_abs: float
    christoffel_fd_discrepancy: float
    classified: Region


@dataclass(frozen=True)
class ConePointProbe:
    radius: float
    circumference: float
    geodesic_radius: float
    total_turning: float

    @property
    def ratio(self):
        return self.circumference / self.geodesic_radius


def _require_regular(p):
    region = classify(p)
    if region in _SINGULAR:
        raise SingularPoint(p, region)
    return region


def christoffel_array(u, v):
    """Analytic Gamma^a_{bc} as a (3, 3, 3) array, no singularity checks."""
    F, G, Fu, Fv, Gu, Gv = metric_components(u, v)
    a, b = Fu / (2 * F), Fv / (2 * F)
    gam = np.zeros((3, 3, 3))
    gam[U, U, U] = a
    gam[U, U, V] = gam[U, V, U] = b
    gam[U, V, V] = -a
    gam[U, PHI, PHI] = -Gu / (2 * F)
    gam[V, U, U] = -b
    gam[V, U, V] = gam[V, V, U] = a
    gam[V, V, V] = b
    gam[V, PHI, PHI] = -Gv / (2 * F)
    gam[PHI, U, PHI] = gam[PHI, PHI, U] = Gu / (2 * G)
    gam[PHI, V, PHI] = gam[PHI, PHI, V] = Gv / (2 * G)
    return gam


def christoffels_at(p):
    _require_regular(p)
    return Christoffel3.from_array(christoffel_array(p.u, p.v))


def christoffels_fd(p, h=DEFAULT_STEP):
    """Levi-Civita connection from finite-differenced metric components.

    Independent of the hand-derived formulas: differentiates the full metric
    matrix numerically and contracts with its inverse.
    """
    _require_regular(p)

    def g(q):
        return metric_at(ChartPoint(q[0], q[1], p.phi)).array

    q0 = np.array([p.u, p.v])
    dg = np.zeros((3, 3, 3))  # dg[c, a, b] = d_c g_ab
    dg[U] = fd_derivative(g, q0, 0, h)
    dg[V] = fd_derivative(g, q0, 1, h)
    ginv = mat3_inverse(metric_at(p)).array
    # Gamma_{abc} (first kind, index a lowered) = (d_b g_ac + d_c g_ab - d_a g_bc) / 2
    first = 0.5 * (dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg)
    return np.einsum("ad,dbc->abc", ginv, first)


def christoffel_fd_discrepancy(p, h=DEFAULT_STEP):
    return float(np.max(np.abs(christoffel_array(p.u, p.v) - christoffels_fd(p, h))))


def riemann_at(p, h=DEFAULT_STEP):
    """R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}.

    Derivatives of the analytic Christoffels by fourth-order differences;
    phi-derivatives vanish identically. Antisymmetry in (c, d) is exact.
    """
    _require_regular(p)
    q0 = np.array([p.u, p.v])

    def gam(q):
        return christoffel_array(q[0], q[1])

    d_u, gap_u = fd_derivative_checked(gam, q0, 0, h)
    d_v, gap_v = fd_derivative_checked(gam, q0, 1, h)
    dgam = np.stack([d_u, d_v, np.zeros((3, 3, 3))])  # dgam[c, a, b, d]
    g0 = gam(q0)
    # half[a, b, c, d] = d_c G^a_{db} + G^a_{ce} G^e_{db}
    half = np.einsum("cadb->abcd", dgam) + np.einsum("ace,edb->abcd", g0, g0)
    r = half - half.transpose(0, 1, 3, 2)
    return Riemann3(r, richardson_gap=max(gap_u, gap_v))


def curvature_report(p, h=DEFAULT_STEP):
    region = classify(p)
    if region is not Region.REGULAR:
        raise SingularPoint(p, region)
    return CurvatureReport(
        point=p,
        riemann_max_abs=riemann_at(p, h).max_abs(),
        christoffel_fd_discrepancy=christoffel_fd_discrepancy(p, h),
        classified=region,
    )


def gauss_curvature_meridian(u, v, h=None):
    """K = -Laplacian(ln sqrt F) / F for the meridian metric F (du^2 + dv^2).

    The default step shrinks with the distance to the focal point, but
    roundoff still grows like 1 / (h^2 F): below hypot(u, v) ~ 1e-2 the
    estimate is noise, not curvature.
    """
    dist = math.hypot(u, v)
    if dist < EPS_CLASS:
        raise SingularPoint((u, v), Region.FOCAL_CIRCLE)
    if h is None:
        h = min(DEFAULT_STEP, 0.01 * dist)

    def sigma(q):
        return 0.5 * np.log(conformal_factor(q[0], q[1]))

    q0 = np.array([u, v], dtype=float)
    lap = fd_second_derivative(sigma, q0, 0, h) + fd_second_derivative(sigma, q0, 1, h)
    return float(-lap / conformal_factor(u, v))


def _meridian_accel(x, xd, xdd):
    """Covariant acceleration nabla_xdot xdot in the meridian metric."""
    _, _, Fu, Fv, _, _ = metric_components(x[0], x[1])
    F = float(conformal_factor(x[0], x[1]))
    a, b = Fu / (2 * F), Fv / (2 * F)
    uu, uv, vv = xd[0] * xd[0], xd[0] * xd[1], xd[1] * xd[1]
    acc_u = xdd[0] + a * uu + 2 * b * uv - a * vv
    acc_v = xdd[1] - b * uu + 2 * a * uv + b * vv
    return acc_u, acc_v


def total_turning(loop, conformal=True):
    """Integral of geodesic curvature along ``loop`` plus its corner angles.

    With the left-pointing unit normal N, k_g ds reduces in a conformal
    metric to (A^v x'^u - A^u x'^v) / |x'|_e^2 dt where A is the covariant
    acceleration. ``conformal=False`` uses the flat metric as a control.
    """
    total = 0.0
    for seg in loop.segments:

        def integrand(t, seg=seg):
            x, xd, xdd = seg(t)
            if conformal:
                au, av = _meridian_accel(x, xd, xdd)
            else:
                au, av = xdd
            return (av * xd[0] - au * xd[1]) / (xd[0] ** 2 + xd[1] ** 2)

        val, _ = quad(integrand, 0.0, 1.0, **_QUAD)
        total += val
    return total + sum(loop.corner_angles())


def loop_deficit(loop):
    """2 pi minus the total turning; equals the enclosed integral of K dA."""
    return 2.0 * math.pi - total_turning(loop)


def _check_radius(r):
    if not 0 < r <= _PROBE_MAX_RADIUS:
        raise DomainError(f"radius must lie in (0, {_PROBE_MAX_RADIUS}], got {r}")


def gauss_bonnet_deficit(r, center=(0.0, 0.0)):
    """Angle deficit of the coordinate circle of radius ``r`` about ``center``."""
    _check_radius(r)
    return loop_deficit(circle_loop(r, center))


def circle_probe(r, factor=conformal_factor):
    """Circumference and radial geodesic distance of the coordinate circle.

    ``factor`` is the conformal factor of the 2-metric; pass ``lambda u, v: 1``
    for the Euclidean control.
    """
    _check_radius(r)

    def line_element(t):
        return math.sqrt(factor(r * math.cos(t), r * math.sin(t))) * r

    def radial(s):
        return math.sqrt(factor(s, 0.0))

    breaks = [0.5 * math.pi * k for k in range(5)]
    circumference = sum(
        quad(line_element, lo, hi, **_QUAD)[0] for lo, hi in zip(breaks, breaks[1:])
    )
    geodesic_radius = quad(radial, 0.0, r, **_QUAD)[0]
    turning = total_turning(circle_loop(r), conformal=factor is conformal_factor)
    return ConePointProbe(r, circumference, geodesic_radius, turning)
