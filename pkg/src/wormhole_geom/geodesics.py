"""Geodesics of the wormhole metric and the straight-line oracle.

Chart geodesics are integrated straight through the disk u = 0, where the
metric is smooth; only the sheet label changes there. The oracle propagates
a straight line in Cartesian space and flips the sheet at every transversal
crossing of the open unit disk. If the chart manifold really is two glued
Euclidean copies, the two agree.

Geodesics with zero axial momentum stay in a meridian plane and are
integrated in the reduced (u, v) system with v allowed to leave
[-pi/2, pi/2]; crossing v = +-pi/2 is passing through the symmetry axis
into the opposite half-plane phi + pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .atlas import (
    HALF_PI,
    ChartPoint,
    Region,
    Sheet,
    SheetPoint,
    cartesian_xyz,
    classify,
    from_cartesian,
    jacobian,
    meridian_jacobian,
    sheet_of,
    to_cartesian,
)
from .errors import DomainError, FocalHit, SingularApproach, SingularPoint
from .integrate import dopri54

FOCAL_APPROACH_F = 1e-8
FOCAL_RHS_F = 1e-10
FOCAL_HIT_DIST = 1e-9
AXIS_SNAP = 1e-12  # launch points this close to the axis are put on it


@dataclass(frozen=True)
class GeodesicState:
    point: ChartPoint
    velocity: tuple  # (du/ds, dv/ds, dphi/ds)
    arclength: float = 0.0

    @property
    def meridian(self):
        """True when the motion has no azimuthal component."""
        return self.velocity[2] == 0.0


@dataclass(frozen=True)
class TraceSample:
    arclength: float
    chart: ChartPoint
    cartesian: SheetPoint
    speed_error: float
    killing_error: float


@dataclass
class CurveTrace:
    samples: list = field(default_factory=list)
    sheet_swaps: list = field(default_factory=list)  # (arclength, disk radius)
    final: GeodesicState | None = None

    @property
    def arclengths(self):
        return np.array([s.arclength for s in self.samples])

    @property
    def positions(self):
        return np.array([[s.cartesian.x, s.cartesian.y, s.cartesian.z] for s in self.samples])

    @property
    def sheets(self):
        return [s.cartesian.sheet for s in self.samples]

    def max_speed_error(self):
        return max(s.speed_error for s in self.samples)

    def max_killing_error(self):
        return max(s.killing_error for s in self.samples)


def _acceleration(u, v, du, dv, dphi):
    su, cu = math.sinh(u), math.cosh(u)
    sv, cv = math.sin(v), math.cos(v)
    F = su * su + sv * sv
    if F < FOCAL_RHS_F:
        raise SingularPoint(ChartPoint.unfolded(u, v, 0.0), Region.FOCAL_CIRCLE)
    Fu, Fv = 2 * su * cu, 2 * sv * cv
    a, b = Fu / (2 * F), Fv / (2 * F)
    uu, uv, vv = du * du, du * dv, dv * dv
    acc_u = -(a * (uu - vv) + 2 * b * uv)
    acc_v = -(-b * uu + 2 * a * uv + b * vv)
    if dphi == 0.0:
        return acc_u, acc_v, 0.0
    pp = dphi * dphi
    # Gamma^u_pp = -G_u / 2F, Gamma^v_pp = -G_v / 2F
    acc_u += (Fu * cv * cv) / (2 * F) * pp
    acc_v += -(cu * cu * Fv) / (2 * F) * pp
    acc_phi = -2.0 * dphi * (su / cu * du - sv / cv * dv)
    return acc_u, acc_v, acc_phi


def geodesic_rhs(s):
    """d/ds of (u, v, phi, du, dv, dphi) along a geodesic."""
    region = classify(s.point)
    if region is Region.FOCAL_CIRCLE:
        raise SingularPoint(s.point, region)
    du, dv, dphi = s.velocity
    if region is Region.AXIS and dphi != 0.0:
        raise SingularPoint(s.point, region, "azimuthal velocity on the axis is undefined")
    acc = _acceleration(s.point.u, s.point.v, du, dv, dphi)
    return (du, dv, dphi) + acc


def conserved_quantities(s):
    """(g(xdot, xdot), g_phiphi dphi/ds) for a geodesic state."""
    u, v = s.point.u, s.point.v
    du, dv, dphi = s.velocity
    su, sv = math.sinh(u), math.sin(v)
    F = su * su + sv * sv
    G = (math.cosh(u) * math.cos(v)) ** 2
    return F * (du * du + dv * dv) + G * dphi * dphi, G * dphi


def _normalized(state):
    speed2, _ = conserved_quantities(state)
    if not speed2 > 0:
        raise DomainError("launch velocity has zero length")
    k = 1.0 / math.sqrt(speed2)
    return tuple(k * c for c in state.velocity)


def launch_from_cartesian(start, direction):
    """Chart state for a unit-speed line leaving ``start`` along ``direction``.

    Motion without azimuthal component (including launches on the axis) is
    set up for the reduced meridian system: dphi/ds is exactly zero.
    """
    if start.sheet is Sheet.DISK:
        raise DomainError("launch point must lie on sheet A or B, not on the disk")
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    p = from_cartesian(start)
    if classify(p) is Region.FOCAL_CIRCLE:
        raise FocalHit("launch point on the focal circle")
    rho = math.hypot(start.x, start.y)
    if rho < AXIS_SNAP:
        rho = 0.0
    horiz = math.hypot(d[0], d[1])
    v_phi = (start.x * d[1] - start.y * d[0]) / rho if rho > 0.0 else 0.0
    if abs(v_phi) <= 1e-14:
        if rho == 0.0:
            phi = math.atan2(d[1], d[0]) if horiz > 0 else 0.0
            drho = horiz
            p = ChartPoint(p.u, math.copysign(HALF_PI, p.v), phi)
        else:
            phi = p.phi
            drho = (start.x * d[0] + start.y * d[1]) / rho
            p = ChartPoint(p.u, p.v, phi)
        jac = meridian_jacobian(p.u, p.v)
        du, dv = np.linalg.solve(jac, [drho, d[2]])
        vel = (float(du), float(dv), 0.0)
    else:
        vel = tuple(float(c) for c in np.linalg.solve(jacobian(p), d))
    state = GeodesicState(p, vel)
    return GeodesicState(p, _normalized(state))


def _meridian_rhs(t, y):
    u, v, du, dv = y
    if math.sinh(u) ** 2 + math.sin(v) ** 2 < FOCAL_APPROACH_F:
        raise SingularApproach(f"trajectory reached F < {FOCAL_APPROACH_F} at s = {t}")
    au, av, _ = _acceleration(u, v, du, dv, 0.0)
    return np.array([du, dv, au, av])


def _full_rhs(t, y):
    u, v, phi, du, dv, dphi = y
    if math.sinh(u) ** 2 + math.sin(v) ** 2 < FOCAL_APPROACH_F:
        raise SingularApproach(f"trajectory reached F < {FOCAL_APPROACH_F} at s = {t}")
    au, av, ap = _acceleration(u, v, du, dv, dphi)
    return np.array([du, dv, dphi, au, av, ap])


def integrate_geodesic(start, length, tol=1e-10):
    """Integrate a unit-speed geodesic over ``length`` of arclength.

    One sample per accepted integrator step. A sheet swap is recorded at
    every sign change of u, with the arclength and disk radius found by
    linear interpolation between the bracketing samples.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise DomainError(f"tol must lie in [1e-12, 1e-4], got {tol}")
    if not length > 0:
        raise DomainError("length must be positive")
    region = classify(start.point)
    if region is Region.FOCAL_CIRCLE:
        raise SingularPoint(start.point, region)
    vel = _normalized(start)
    p0 = start.point
    meridian = vel[2] == 0.0
    if region is Region.AXIS and not meridian:
        raise SingularPoint(p0, region, "azimuthal velocity on the axis is undefined")
    s0 = start.arclength

    if meridian:
        y0 = [p0.u, p0.v, vel[0], vel[1]]
        ts, ys = dopri54(_meridian_rhs, s0, y0, s0 + length, rtol=tol, atol=tol)
        full = np.column_stack([ys[:, 0], ys[:, 1], np.full(len(ys), p0.phi), ys[:, 2], ys[:, 3], np.zeros(len(ys))])
    else:
        y0 = [p0.u, p0.v, p0.phi, *vel]
        ts, full = dopri54(_full_rhs, s0, y0, s0 + length, rtol=tol, atol=tol)

    _, l0 = conserved_quantities(GeodesicState(p0, vel))
    trace = CurveTrace()
    for s, (u, v, phi, du, dv, dphi) in zip(ts, full):
        chart = ChartPoint.unfolded(u, v, phi)
        x, y, z = cartesian_xyz(u, v, phi)
        sheet = sheet_of(u)
        if sheet is Sheet.DISK:
            z = 0.0
        speed2, axial = _invariants(u, v, du, dv, dphi)
        kerr = abs(axial - l0) / abs(l0) if l0 != 0.0 else abs(axial)
        trace.samples.append(TraceSample(float(s), chart, SheetPoint(sheet, x, y, z), abs(speed2 - 1.0), kerr))

    last_u, last_v, last_s = full[0, 0], full[0, 1], ts[0]
    for s, row in zip(ts[1:], full[1:]):
        u, v = row[0], row[1]
        if u == 0.0:
            continue
        if last_u != 0.0 and (u > 0) != (last_u > 0):
            w = last_u / (last_u - u)
            v_cross = last_v + w * (v - last_v)
            trace.sheet_swaps.append((float(last_s + w * (s - last_s)), abs(math.cos(v_cross))))
        last_u, last_v, last_s = u, v, s

    u, v, phi, du, dv, dphi = full[-1]
    end = ChartPoint.unfolded(u, v, phi)
    if round(v / math.pi) % 2:  # folded across the axis: v-velocity flips
        dv = -dv
    trace.final = GeodesicState(end, (float(du), float(dv), float(dphi)), float(ts[-1]))
    return trace


def _invariants(u, v, du, dv, dphi):
    su, sv = math.sinh(u), math.sin(v)
    F = su * su + sv * sv
    G = (math.cosh(u) * math.cos(v)) ** 2
    return F * (du * du + dv * dv) + G * dphi * dphi, G * dphi


def reversed_state(s):
    du, dv, dphi = s.velocity
    return GeodesicState(s.point, (-du, -dv, -dphi), 0.0)


def _disk_crossings(p0, d, length):
    """Arclengths at which the segment crosses z = 0 inside the unit disk."""
    x0, y0, z0 = p0
    dx, dy, dz = d
    if dz == 0.0:
        if z0 == 0.0:
            # in the disk plane: meeting the unit circle is a focal hit
            b = x0 * dx + y0 * dy
            c = x0 * x0 + y0 * y0 - 1.0
            t_min = min(max(-b, 0.0), length)
            cx, cy = x0 + t_min * dx, y0 + t_min * dy
            disc = b * b - c
            if disc >= 0.0:
                for t in (-b - math.sqrt(disc), -b + math.sqrt(disc)):
                    if -FOCAL_HIT_DIST <= t <= length + FOCAL_HIT_DIST:
                        raise FocalHit("line runs through the focal circle in the disk plane")
            if math.hypot(cx, cy) < 1.0 + FOCAL_HIT_DIST and c >= 0.0:
                raise FocalHit("line grazes the focal circle in the disk plane")
        return []
    t = -z0 / dz
    if t < 0.0 or t > length + 1e-12:
        return []
    r = math.hypot(x0 + t * dx, y0 + t * dy)
    if abs(r - 1.0) < FOCAL_HIT_DIST:
        raise FocalHit(f"line meets the focal circle at arclength {t}")
    if t == 0.0 or r > 1.0:
        return []
    return [(t, r)]


def straight_line_oracle(start, direction, length, arclengths=None):
    """Exact straight line in the two-sheet picture.

    Samples at ``arclengths`` (default 201 evenly spaced values). Chart
    coordinates of each sample come from ``from_cartesian``.
    """
    if start.sheet is Sheet.DISK:
        raise DomainError("oracle start must lie on sheet A or B")
    p0 = np.array([start.x, start.y, start.z])
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    if abs(math.hypot(p0[0], p0[1]) - 1.0) < FOCAL_HIT_DIST and abs(p0[2]) < FOCAL_HIT_DIST:
        raise FocalHit("oracle start on the focal circle")
    crossings = _disk_crossings(p0, d, length)
    if arclengths is None:
        arclengths = np.linspace(0.0, length, 201)
    trace = CurveTrace(sheet_swaps=[(float(t), float(r)) for t, r in crossings])
    for s in arclengths:
        s = float(s)
        x, y, z = p0 + s * d
        sheet = oracle_sheet(start.sheet, crossings, s)
        if sheet is Sheet.DISK:
            z = 0.0
        sp = SheetPoint(sheet, x, y, z)
        trace.samples.append(TraceSample(s, from_cartesian(sp), sp, 0.0, 0.0))
    return trace


def oracle_sheet(initial, crossings, s):
    sheet = initial
    for t, _ in crossings:
        if s == t:
            return Sheet.DISK
        if s > t:
            sheet = Sheet.B if sheet is Sheet.A else Sheet.A
    return sheet


@dataclass(frozen=True)
class OracleComparison:
    max_deviation: float
    chart_swaps: int
    oracle_swaps: int
    sheet_mismatches: int
    crosses_disk: bool
    max_speed_error: float
    max_killing_error: float


def compare_with_oracle(start, direction, length, tol=1e-10):
    """Integrate the chart geodesic and measure it against the straight line."""
    trace = integrate_geodesic(launch_from_cartesian(start, direction), length, tol)
    oracle = straight_line_oracle(start, direction, length, trace.arclengths)
    dev = np.max(np.linalg.norm(trace.positions - oracle.positions, axis=1))
    mismatches = sum(
        1
        for a, b in zip(trace.sheets, oracle.sheets)
        if a is not Sheet.DISK and b is not Sheet.DISK and a is not b
    )
    return OracleComparison(
        max_deviation=float(dev),
        chart_swaps=len(trace.sheet_swaps),
        oracle_swaps=len(oracle.sheet_swaps),
        sheet_mismatches=mismatches,
        crosses_disk=bool(oracle.sheet_swaps),
        max_speed_error=trace.max_speed_error(),
        max_killing_error=trace.max_killing_error(),
    )


def focal_distance(p0, d, length, n=4001):
    """Sampled minimum distance of a segment from the focal circle."""
    t = np.linspace(0.0, length, n)
    pts = np.asarray(p0)[None, :] + t[:, None] * np.asarray(d)[None, :]
    rho = np.hypot(pts[:, 0], pts[:, 1])
    return float(np.min(np.hypot(rho - 1.0, pts[:, 2])))


def axis_distance(p0, d, length, n=4001):
    """Sampled minimum distance of a segment from the symmetry axis."""
    t = np.linspace(0.0, length, n)
    return float(np.min(np.hypot(p0[0] + t * d[0], p0[1] + t * d[1])))


def random_launches(n, seed=42, length=10.0, margin=0.1, box=2.0):
    """Seeded mix of disk-crossing, non-crossing and meridian-plane launches.

    Even indices are aimed through the open disk; every third launch has its
    direction projected into its meridian plane. Lines closer than
    ``margin`` to the focal circle are redrawn.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        i = len(out)
        sheet = Sheet.A if rng.random() < 0.5 else Sheet.B
        if i % 2 == 0:
            r = 0.9 * math.sqrt(rng.random())
            ang = rng.uniform(0.0, 2 * math.pi)
            target = np.array([r * math.cos(ang), r * math.sin(ang), 0.0])
            d = rng.normal(size=3)
            d[2] = abs(d[2]) + 0.3
            d /= np.linalg.norm(d)
            p0 = target - rng.uniform(0.5, 4.0) * d
        else:
            p0 = rng.uniform(-box, box, size=3)
            d = rng.normal(size=3)
            d /= np.linalg.norm(d)
        meridian = i % 3 == 0
        if meridian:
            rho = math.hypot(p0[0], p0[1])
            if rho > 0:
                e = np.array([p0[0] / rho, p0[1] / rho, 0.0])
                d = d - np.dot(d, np.cross([0.0, 0.0, 1.0], e)) * np.cross([0.0, 0.0, 1.0], e)
                d /= np.linalg.norm(d)
        if focal_distance(p0, d, length) < margin:
            continue
        if not meridian and axis_distance(p0, d, length) < margin:
            continue
        if abs(p0[2]) < 1e-6:
            continue
        out.append((SheetPoint(sheet, *p0), d))
    return out
