"""The global (u, v, phi) chart and its two Euclidean sheets.

The chart covers the whole wormhole manifold with u unbounded. Its image in
Cartesian space is the oblate-spheroidal map

    x = cosh u cos v cos phi,  y = cosh u cos v sin phi,  z = sinh u sin v,

which sends u > 0 into sheet A and u < 0 into sheet B. The points (u, v, phi)
and (-u, -v, phi) have the same Cartesian image on opposite sheets. The
surface u = 0 is the unit disk through which the sheets are glued; its rim
u = v = 0 is the focal circle.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi
EPS_CLASS = 1e-9


class Sheet(enum.Enum):
    A = "A"
    B = "B"
    DISK = "Disk"


class Region(enum.Enum):
    REGULAR = "Regular"
    FOCAL_CIRCLE = "FocalCircle"
    AXIS = "Axis"
    DISK_INTERIOR = "DiskInterior"


@dataclass(frozen=True)
class ChartPoint:
    u: float
    v: float
    phi: float = 0.0

    def __post_init__(self):
        u, v, phi = float(self.u), float(self.v), float(self.phi)
        if not (math.isfinite(u) and math.isfinite(v) and math.isfinite(phi)):
            raise ValueError(f"non-finite chart coordinates ({u}, {v}, {phi})")
        # tolerate float noise at the ends of the v range
        if abs(v) > HALF_PI:
            if abs(v) - HALF_PI > 1e-12:
                raise ValueError(f"v = {v} outside [-pi/2, pi/2]")
            v = math.copysign(HALF_PI, v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "phi", wrap_phi(phi))

    @classmethod
    def unfolded(cls, u, v, phi):
        """Build a point from an extended-range v by folding across the axis.

        (u, v, phi) with v outside [-pi/2, pi/2] is the same point as
        (u, -(v - k pi), phi + pi) for odd k, or (u, v - k pi, phi) for even k.
        """
        k = round(v / math.pi)
        w = v - k * math.pi
        if k % 2:
            return cls(u, -w, phi + math.pi)
        return cls(u, w, phi)

    def as_tuple(self):
        return (self.u, self.v, self.phi)


@dataclass(frozen=True)
class SheetPoint:
    sheet: Sheet
    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.sheet is Sheet.DISK:
            if self.z != 0.0 or self.x * self.x + self.y * self.y > 1.0 + 1e-12:
                raise ValueError("Disk points need z = 0 and x^2 + y^2 <= 1")

    @property
    def xyz(self):
        return np.array([self.x, self.y, self.z])


def wrap_phi(phi):
    out = math.fmod(phi, TWO_PI)
    if out < 0.0:
        out += TWO_PI
    # fmod of a tiny negative can round up to exactly 2 pi
    return 0.0 if out >= TWO_PI else out


def sheet_of(u):
    if u > 0.0:
        return Sheet.A
    if u < 0.0:
        return Sheet.B
    return Sheet.DISK


def cartesian_xyz(u, v, phi):
    """Cartesian image of chart coordinates; v may lie outside [-pi/2, pi/2]."""
    rho = math.cosh(u) * math.cos(v)
    return (rho * math.cos(phi), rho * math.sin(phi), math.sinh(u) * math.sin(v))


def to_cartesian(p):
    x, y, z = cartesian_xyz(p.u, p.v, p.phi)
    sheet = sheet_of(p.u)
    if sheet is Sheet.DISK:
        z = 0.0
    return SheetPoint(sheet, x, y, z)


def meridian_jacobian(u, v):
    """d(rho, z)/d(u, v) for the meridian half-plane; determinant is F."""
    su, cu = math.sinh(u), math.cosh(u)
    sv, cv = math.sin(v), math.cos(v)
    return np.array([[su * cv, -cu * sv], [cu * sv, su * cv]])


def _invert_meridian(rho, z, sheet):
    # cosh(u + i v) = rho + i z; principal branch gives u >= 0, |v| <= pi/2
    w = cmath.acosh(complex(rho, z))
    u, v = w.real, w.imag
    if sheet is Sheet.B:
        u, v = -u, -v
    elif sheet is Sheet.DISK:
        u = 0.0
    # one Newton polish against the forward map; also the convergence check
    for _ in range(3):
        r_rho = math.cosh(u) * math.cos(v) - rho
        r_z = math.sinh(u) * math.sin(v) - z
        scale = max(1.0, abs(rho), abs(z))
        if abs(r_rho) <= 1e-13 * scale and abs(r_z) <= 1e-13 * scale:
            break
        jac = meridian_jacobian(u, v)
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if abs(det) < 1e-14:
            break
        du = (jac[1, 1] * r_rho - jac[0, 1] * r_z) / det
        dv = (-jac[1, 0] * r_rho + jac[0, 0] * r_z) / det
        u -= du
        v -= dv
        if sheet is Sheet.DISK:
            u = 0.0
    r_rho = math.cosh(u) * math.cos(v) - rho
    r_z = math.sinh(u) * math.sin(v) - z
    if max(abs(r_rho), abs(r_z)) > 1e-10 * max(1.0, abs(rho), abs(z)):
        raise NoConvergence(f"inverse map residual ({r_rho:.3g}, {r_z:.3g}) at rho={rho}, z={z}")
    return u, max(-HALF_PI, min(HALF_PI, v))


def from_cartesian(q):
    """Chart coordinates of a sheet point.

    Sheet A gives u >= 0, sheet B gives u <= 0. Disk points come back with
    u = 0 and v >= 0 (the upper face of sheet A's disk); on the axis phi = 0.
    """
    rho = math.hypot(q.x, q.y)
    phi = 0.0 if rho == 0.0 else math.atan2(q.y, q.x)
    z = q.z
    if q.sheet is Sheet.DISK:
        z = 0.0
    u, v = _invert_meridian(rho, z, q.sheet)
    return ChartPoint(u, v, phi)


def classify(p, eps=EPS_CLASS):
    on_disk = abs(p.u) < eps
    if on_disk and abs(p.v) < eps:
        return Region.FOCAL_CIRCLE
    if HALF_PI - abs(p.v) < eps:
        return Region.AXIS
    if on_disk:
        return Region.DISK_INTERIOR
    return Region.REGULAR


def jacobian(p):
    """Analytic d(x, y, z)/d(u, v, phi); columns are the coordinate vectors."""
    su, cu = math.sinh(p.u), math.cosh(p.u)
    sv, cv = math.sin(p.v), math.cos(p.v)
    sp, cp = math.sin(p.phi), math.cos(p.phi)
    return np.array(
        [
            [su * cv * cp, -cu * sv * cp, -cu * cv * sp],
            [su * cv * sp, -cu * sv * sp, cu * cv * cp],
            [cu * sv, su * cv, 0.0],
        ]
    )
