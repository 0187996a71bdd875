"""Acceptance criteria: one test each, tolerances and runtime bounds fixed.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import time

import numpy as np

from wormhole_geom.atlas import ChartPoint, Region, classify, jacobian
from wormhole_geom.curvature import circle_probe, gauss_bonnet_deficit, riemann_at
from wormhole_geom.geodesics import (
    compare_with_oracle,
    integrate_geodesic,
    launch_from_cartesian,
    random_launches,
)
from wormhole_geom.loops import circle_loop
from wormhole_geom.metric import conformal_factor, hyperboloid_limit_residual, metric_at
from wormhole_geom.transport import TransportFrame, parallel_transport

TWO_PI = 2 * math.pi
FOUR_PI = 4 * math.pi


def test_1_pullback_isometry(criterion):
    t0 = time.perf_counter()
    worst, n = 0.0, 0
    for u in np.linspace(-3, 3, 20):
        for v in np.linspace(-1.5, 1.5, 20):
            for phi in np.linspace(0, TWO_PI, 8, endpoint=False):
                p = ChartPoint(u, v, phi)
                assert classify(p) is Region.REGULAR
                j = jacobian(p)
                worst = max(worst, float(np.max(np.abs(j.T @ j - metric_at(p).array))))
                n += 1
    elapsed = time.perf_counter() - t0
    ok = criterion(
        "1 pullback isometry",
        worst < 1e-9 and elapsed < 1.0 and n == 3200,
        f"max |J^T J - g| = {worst:.2e} (< 1e-9) over {n} points, {elapsed:.2f}s (< 1s)",
    )
    assert ok


def test_2_flatness_regular_set(criterion):
    t0 = time.perf_counter()
    worst, n, signs = 0.0, 0, set()
    for u in np.linspace(-3, 3, 20):
        for v in np.linspace(-1.4, 1.4, 20):
            if conformal_factor(u, v) <= 0.1 or abs(math.cos(v)) <= 0.05:
                continue
            worst = max(worst, riemann_at(ChartPoint(u, v, 0.0)).max_abs())
            signs.add(np.sign(u))
            n += 1
    elapsed = time.perf_counter() - t0
    ok = criterion(
        "2 flatness (Riemann = 0 on regular set)",
        worst < 1e-6 and signs == {-1.0, 1.0} and elapsed < 10.0,
        f"max |R| = {worst:.2e} (< 1e-6) over {n} points, both sheets, {elapsed:.2f}s (< 10s)",
    )
    assert ok


def test_3_concentrated_curvature(criterion):
    t0 = time.perf_counter()
    deficits = {r: gauss_bonnet_deficit(r) for r in (0.05, 0.1, 0.2)}
    outside = gauss_bonnet_deficit(0.1, center=(1.0, 0.0))
    elapsed = time.perf_counter() - t0
    err = max(abs(d + TWO_PI) for d in deficits.values())
    ok = criterion(
        "3 Gauss-Bonnet deficit",
        err < 1e-2 and abs(outside) < 1e-6 and elapsed < 5.0,
        f"max |deficit + 2pi| = {err:.2e} (< 1e-2), non-enclosing {outside:.2e} (< 1e-6), {elapsed:.2f}s",
    )
    assert ok


def test_4_cone_angle(criterion):
    t0 = time.perf_counter()
    rel = {r: abs(circle_probe(r).ratio / FOUR_PI - 1.0) for r in (0.05, 0.1, 0.2)}
    elapsed = time.perf_counter() - t0
    # O(r^2): halving r cuts the error by ~4
    order = math.log2(rel[0.1] / rel[0.05])
    ok = criterion(
        "4 cone angle 4 pi",
        rel[0.1] < 1e-2 and rel[0.05] < 2.5e-3 and abs(order - 2.0) < 0.1 and elapsed < 5.0,
        f"rel err {rel[0.1]:.2e} @0.1 (< 1e-2), {rel[0.05]:.2e} @0.05 (< 2.5e-3), "
        f"observed order {order:.3f}, {elapsed:.2f}s",
    )
    assert ok


def test_5_wormhole_topology(criterion):
    t0 = time.perf_counter()
    results = [compare_with_oracle(p, d, 10.0, tol=1e-10) for p, d in random_launches(100, seed=42)]
    elapsed = time.perf_counter() - t0
    worst = max(c.max_deviation for c in results)
    swaps_match = all(c.chart_swaps == c.oracle_swaps for c in results)
    rule = all(c.chart_swaps == (1 if c.crosses_disk else 0) for c in results)
    sheets = sum(c.sheet_mismatches for c in results)
    n_cross = sum(c.crosses_disk for c in results)
    ok = criterion(
        "5 two-sheet topology",
        worst < 1e-6 and swaps_match and rule and sheets == 0 and 0 < n_cross < 100 and elapsed < 30.0,
        f"max deviation {worst:.2e} (< 1e-6), swaps match: {swaps_match}, "
        f"{n_cross}/100 crossing, {elapsed:.1f}s (< 30s)",
    )
    assert ok


def test_6_hyperboloid_limit(criterion):
    t0 = time.perf_counter()
    zetas = np.linspace(0.02, 3.0, 50)
    etas = np.linspace(0.0, 0.5 * math.pi, 52)[1:-1]
    ratios = {}
    for a in (1.0, 2.0):
        worst = max(hyperboloid_limit_residual(a, z, e) for z in zetas for e in etas)
        ratios[a] = worst / (a * a)
    elapsed = time.perf_counter() - t0
    ok = criterion(
        "6 hyperboloid limit",
        max(ratios.values()) < 1e-9 and elapsed < 1.0,
        f"max residual / a^2 = {max(ratios.values()):.2e} (< 1e-9) at a = 1, 2, {elapsed:.2f}s (< 1s)",
    )
    assert ok


def test_7_conservation(criterion):
    t0 = time.perf_counter()
    speed, axial, crossing = 0.0, 0.0, 0
    for start, d in random_launches(12, seed=7):
        trace = integrate_geodesic(launch_from_cartesian(start, d), 10.0, tol=1e-10)
        speed = max(speed, trace.max_speed_error())
        axial = max(axial, trace.max_killing_error())
        crossing += bool(trace.sheet_swaps)
    elapsed = time.perf_counter() - t0
    ok = criterion(
        "7 conservation",
        speed < 1e-8 and axial < 1e-8 and crossing > 0 and elapsed < 10.0,
        f"speed drift {speed:.2e}, axial drift {axial:.2e} (< 1e-8), "
        f"{crossing}/12 disk-crossing, {elapsed:.2f}s",
    )
    assert ok


def test_8_holonomy_unwrapping(criterion):
    t0 = time.perf_counter()
    vec = (1.0, 0.5, 0.3)
    cases = [
        (circle_loop(0.1, (1.0, 0.0)), 0.0, 1e-2),
        (circle_loop(0.1), -TWO_PI, 1e-2),
        (circle_loop(0.1, winding=2), -2 * TWO_PI, 2e-2),
    ]
    vec_err, ang_err, ok_all = 0.0, [], True
    for loop, expected, tol in cases:
        u, v = loop.segments[0](0.0)[0]
        out = parallel_transport(TransportFrame(ChartPoint(u, v), vec), loop)
        vec_err = max(vec_err, float(np.max(np.abs(np.subtract(out.vector, vec)))))
        ang_err.append(abs(out.unwrapped_angle - expected))
        ok_all &= ang_err[-1] < tol
    elapsed = time.perf_counter() - t0
    ok = criterion(
        "8 holonomy unwrapping",
        ok_all and vec_err < 1e-6 and elapsed < 5.0,
        f"vector return {vec_err:.2e} (< 1e-6), angle errors "
        + ", ".join(f"{e:.1e}" for e in ang_err)
        + f" (0 / -2pi / -4pi), {elapsed:.2f}s",
    )
    assert ok
