"""Metric of the wormhole 3-space and the one-sheet hyperboloid family.

The wormhole metric in the global chart is

    ds^2 = F (du^2 + dv^2) + G dphi^2,
    F = cosh^2 u - cos^2 v,   G = cosh^2 u cos^2 v,

with unit focal radius. Its (u, v) block is the meridian metric, a conformal
metric with factor F = sinh^2 u + sin^2 v = |sinh(u + i v)|^2.

``HyperboloidMetric`` is the induced metric of the one-sheet hyperboloid
x^2/(a^2+lam) + y^2/(b^2+lam) + z^2/lam = 1 in ellipsoidal coordinates
(u, w); its b -> 0, lam -> 0 limit reproduces the meridian metric after
u = a^2 sinh^2(zeta), w = -a^2 sin^2(eta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .tensors import Mat3Sym


def conformal_factor(u, v):
    """F = cosh^2 u - cos^2 v, written in the cancellation-free form."""
    s, t = np.sinh(u), np.sin(v)
    return s * s + t * t


def axial_factor(u, v):
    c, k = np.cosh(u), np.cos(v)
    return c * c * k * k


def metric_components(u, v):
    """(F, G) and their first partials (F_u, F_v, G_u, G_v)."""
    ch, sh2 = math.cosh(u), math.sinh(2 * u)
    cv, sv2 = math.cos(v), math.sin(2 * v)
    su, sv = math.sinh(u), math.sin(v)
    F = su * su + sv * sv
    G = ch * ch * cv * cv
    return F, G, sh2, sv2, sh2 * cv * cv, -ch * ch * sv2


@dataclass(frozen=True)
class WormholeMetric:
    """Stateless evaluator of the wormhole metric (focal radius 1)."""

    def at(self, p):
        return metric_at(p)

    def det(self, p):
        return metric_det(p)


@dataclass(frozen=True)
class MeridianMetric:
    """Conformal 2-metric F (du^2 + dv^2) on the meridian strip."""

    def at(self, u, v):
        f = conformal_factor(u, v)
        return np.array([[f, 0.0], [0.0, f]])

    def factor(self, u, v):
        return conformal_factor(u, v)


def metric_at(p):
    F = float(conformal_factor(p.u, p.v))
    G = float(axial_factor(p.u, p.v))
    return Mat3Sym.diag(F, F, G)


def metric_det(p):
    F = float(conformal_factor(p.u, p.v))
    return F * F * float(axial_factor(p.u, p.v))


@dataclass(frozen=True)
class HyperboloidMetric:
    a: float
    b: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a}")
        if not 0 <= self.b < self.a:
            raise DomainError(f"need 0 <= b < a, got b={self.b}, a={self.a}")
        b2 = self.b * self.b
        if self.b == 0.0:
            if self.lam != 0.0:
                raise DomainError("b = 0 forces lam = 0")
        elif not -b2 < self.lam <= 0.0:
            raise DomainError(f"lam must lie in (-b^2, 0], got {self.lam}")

    def at(self, u, w):
        return hyperboloid_metric_at(self, u, w)


def hyperboloid_metric_at(m, u, w):
    """diag(g_uu, g_ww) of the hyperboloid metric at (u, w).

    Valid for u > 0 and -a^2 < w < -b^2 (open interval); raises DomainError
    otherwise. Both components are positive on the domain.
    """
    a2, b2, lam = m.a * m.a, m.b * m.b, m.lam
    if not u > 0:
        raise DomainError(f"u must be positive, got {u}")
    if not -a2 < w < -b2:
        raise DomainError(f"w must lie in (-a^2, -b^2) = ({-a2}, {-b2}), got {w}")
    g_uu = (u - lam) * (u - w) / (4 * u * (a2 + u) * (b2 + u))
    g_ww = (w - lam) * (w - u) / (4 * w * (a2 + w) * (b2 + w))
    return np.diag([g_uu, g_ww])


def hyperboloid_limit_residual(a, zeta, eta):
    """Mismatch between the b = 0 hyperboloid metric and the meridian block.

    The b = 0, lam = 0 hyperboloid metric is pulled back through
    u = a^2 sinh^2 zeta, w = -a^2 sin^2 eta (chain rule on both coordinates)
    and compared to a^2 (sinh^2 zeta + sin^2 eta). Returns the larger of the
    two diagonal residuals.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    if zeta == 0:
        raise DomainError("zeta must be nonzero")
    if not 0 < eta < 0.5 * math.pi:
        raise DomainError(f"eta must lie in (0, pi/2), got {eta}")
    a2 = a * a
    u = a2 * math.sinh(zeta) ** 2
    w = -a2 * math.sin(eta) ** 2
    g = hyperboloid_metric_at(HyperboloidMetric(a), u, w)
    du_dzeta = 2 * a2 * math.sinh(zeta) * math.cosh(zeta)
    dw_deta = -2 * a2 * math.sin(eta) * math.cos(eta)
    g_zz = g[0, 0] * du_dzeta**2
    g_ee = g[1, 1] * dw_deta**2
    target = a2 * (math.sinh(zeta) ** 2 + math.sin(eta) ** 2)
    return max(abs(g_zz - target), abs(g_ee - target))
