"""Command-line harness: ``wormhole-geom <subcommand> [options]``.

Every subcommand computes a table, writes it as CSV or JSON, and checks it
against the thresholds given on the command line. Exit status: 0 all checks
pass, 1 usage error, 2 a check failed (a JSON failure record goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .atlas import ChartPoint, Sheet, SheetPoint
from .curvature import circle_probe, curvature_report, gauss_bonnet_deficit
from .errors import DomainError, FocalHit, GeometryError, SingularApproach
from .geodesics import (
    compare_with_oracle,
    integrate_geodesic,
    launch_from_cartesian,
    random_launches,
)
from .metric import conformal_factor, hyperboloid_limit_residual

SCHEMA_TAG = "wormhole-geom v1"
EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2
DEFAULT_SEED = 42

COLUMNS = {
    "flatness-scan": ("u", "v", "riemann_max_abs", "christoffel_fd_discrepancy"),
    "geodesic": ("arclength", "u", "v", "phi", "sheet", "x", "y", "z", "speed_error", "killing_error"),
    "oracle-compare": (
        "launch",
        "max_deviation",
        "chart_swaps",
        "oracle_swaps",
        "sheet_mismatches",
        "crosses_disk",
        "max_speed_error",
        "max_killing_error",
    ),
    "cone-probe": ("radius", "circumference", "geodesic_radius", "ratio"),
    "gauss-bonnet": ("radius", "deficit"),
    "hyperboloid-check": ("a", "zeta", "eta", "residual"),
}
TRACE_COLUMNS = ("launch",) + COLUMNS["geodesic"]


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, check, observed, limit, **extra):
        self.record = {"status": "fail", "check": check, "observed": observed, "limit": limit, **extra}
        super().__init__(check)


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "csv"
    seed: int = DEFAULT_SEED
    workers: int = 1


# --------------------------------------------------------------------------
# serialization


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return "null"
        return "%.17g" % value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return json.dumps(str(value))


def render(rows, columns, fmt):
    if fmt == "csv":
        lines = [f"# {SCHEMA_TAG}, columns: {','.join(columns)}", ",".join(columns)]
        lines += [",".join(_fmt(row[c]) for c in columns) for row in rows]
        return "\n".join(lines) + "\n"
    objs = [
        "{" + ", ".join(f"{json.dumps(c)}: {_json_value(row[c])}" for c in columns) + "}"
        for row in rows
    ]
    return "[\n" + ",\n".join("  " + o for o in objs) + "\n]\n"


def write_output(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# subcommands


def _scan_point(uv):
    u, v = uv
    rep = curvature_report(ChartPoint(u, v, 0.0))
    return {"u": u, "v": v, "riemann_max_abs": rep.riemann_max_abs,
            "christoffel_fd_discrepancy": rep.christoffel_fd_discrepancy}


def _pmap(fn, items, workers):
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def flatness_scan(cfg):
    p = cfg.params
    us = np.linspace(*p["u_range"], p["n"])
    vs = np.linspace(*p["v_range"], p["n"])
    kept, excluded = [], 0
    for u in us:
        for v in vs:
            if conformal_factor(u, v) > p["min_factor"] and abs(math.cos(v)) > p["min_cos_v"] and u != 0.0:
                kept.append((float(u), float(v)))
            else:
                excluded += 1
    print(
        f"flatness-scan: {len(kept)} points scanned, {excluded} excluded "
        f"(F <= {p['min_factor']} or |cos v| <= {p['min_cos_v']})",
        file=sys.stderr,
    )
    rows = _pmap(_scan_point, kept, cfg.workers)
    worst = max((r["riemann_max_abs"] for r in rows), default=0.0)
    worst_gamma = max((r["christoffel_fd_discrepancy"] for r in rows), default=0.0)
    checks = [
        ("riemann_max_abs", worst, p["max_riemann"]),
        ("christoffel_fd_discrepancy", worst_gamma, p["max_christoffel"]),
    ]
    return rows, checks


def _trace_rows(trace, launch=None):
    rows = []
    for s in trace.samples:
        row = {
            "arclength": s.arclength, "u": s.chart.u, "v": s.chart.v, "phi": s.chart.phi,
            "sheet": s.cartesian.sheet.value, "x": s.cartesian.x, "y": s.cartesian.y,
            "z": s.cartesian.z, "speed_error": s.speed_error, "killing_error": s.killing_error,
        }
        if launch is not None:
            row["launch"] = launch
        rows.append(row)
    return rows


def geodesic(cfg):
    p = cfg.params
    start = SheetPoint(Sheet(p["sheet"]), *p["start"])
    trace = integrate_geodesic(launch_from_cartesian(start, p["direction"]), p["length"], p["tol"])
    print(f"geodesic: {len(trace.sheet_swaps)} sheet swap(s) at {trace.sheet_swaps}", file=sys.stderr)
    checks = [
        ("speed_drift", trace.max_speed_error(), p["max_drift"]),
        ("axial_momentum_drift", trace.max_killing_error(), p["max_drift"]),
    ]
    return _trace_rows(trace), checks


def _compare_launch(args):
    idx, (start, direction), length, tol = args
    return idx, compare_with_oracle(start, direction, length, tol)


def oracle_compare(cfg):
    p = cfg.params
    launches = random_launches(p["launches"], seed=cfg.seed, length=p["length"], margin=p["margin"])
    jobs = [(i, l, p["length"], p["tol"]) for i, l in enumerate(launches)]
    results = _pmap(_compare_launch, jobs, cfg.workers)
    rows = [
        {"launch": i, "max_deviation": c.max_deviation, "chart_swaps": c.chart_swaps,
         "oracle_swaps": c.oracle_swaps, "sheet_mismatches": c.sheet_mismatches,
         "crosses_disk": c.crosses_disk, "max_speed_error": c.max_speed_error,
         "max_killing_error": c.max_killing_error}
        for i, c in results
    ]
    if p.get("trace_output"):
        trace_rows = []
        for i, (start, direction) in enumerate(launches):
            tr = integrate_geodesic(launch_from_cartesian(start, direction), p["length"], p["tol"])
            trace_rows += _trace_rows(tr, launch=i)
        write_output(render(trace_rows, TRACE_COLUMNS, cfg.format), p["trace_output"])
    swap_mismatch = sum(r["chart_swaps"] != r["oracle_swaps"] for r in rows)
    checks = [
        ("max_deviation", max(r["max_deviation"] for r in rows), p["max_dev"]),
        ("swap_count_mismatches", swap_mismatch, 0),
        ("sheet_mismatches", sum(r["sheet_mismatches"] for r in rows), 0),
    ]
    return rows, checks


def cone_probe(cfg):
    p = cfg.params
    rows, checks = [], []
    for r in p["radii"]:
        probe = circle_probe(r)
        rows.append({"radius": r, "circumference": probe.circumference,
                     "geodesic_radius": probe.geodesic_radius, "ratio": probe.ratio})
        checks.append((f"ratio_rel_error[r={r}]", abs(probe.ratio / (4 * math.pi) - 1.0), p["tol"]))
    return rows, checks


def gauss_bonnet(cfg):
    p = cfg.params
    rows, checks = [], []
    for r in p["radii"]:
        deficit = gauss_bonnet_deficit(r, tuple(p["center"]))
        rows.append({"radius": r, "deficit": deficit})
        checks.append((f"deficit_error[r={r}]", abs(deficit - p["expect"]), p["tol"]))
    return rows, checks


def hyperboloid_check(cfg):
    p = cfg.params
    n = p["n"]
    zetas = np.linspace(p["zeta_min"], p["zeta_max"], n)
    etas = np.linspace(0.0, 0.5 * math.pi, n + 2)[1:-1]
    rows, checks = [], []
    for a in p["a"]:
        worst = 0.0
        for z in zetas:
            for e in etas:
                res = hyperboloid_limit_residual(a, float(z), float(e))
                worst = max(worst, res)
                rows.append({"a": a, "zeta": float(z), "eta": float(e), "residual": res})
        checks.append((f"residual[a={a}]", worst, p["max_residual"] * a * a))
    return rows, checks


HANDLERS = {
    "flatness-scan": flatness_scan,
    "geodesic": geodesic,
    "oracle-compare": oracle_compare,
    "cone-probe": cone_probe,
    "gauss-bonnet": gauss_bonnet,
    "hyperboloid-check": hyperboloid_check,
}


def run(config):
    """Execute one subcommand; returns the process exit code."""
    handler = HANDLERS.get(config.subcommand)
    if handler is None:
        print(f"unknown subcommand {config.subcommand!r}", file=sys.stderr)
        return EXIT_USAGE
    if config.format not in ("csv", "json"):
        print(f"unknown format {config.format!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rows, checks = handler(config)
    except (DomainError, FocalHit, SingularApproach, ValueError) as exc:
        print(f"{config.subcommand}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as exc:
        record = {"status": "fail", "subcommand": config.subcommand, "check": "computation",
                  "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record), file=sys.stderr)
        return EXIT_FAIL
    write_output(render(rows, COLUMNS[config.subcommand], config.format), config.output_path)
    status = EXIT_OK
    for name, observed, limit in checks:
        if not observed <= limit:
            record = {"status": "fail", "subcommand": config.subcommand, "check": name,
                      "observed": float(observed), "limit": float(limit)}
            print(json.dumps(record), file=sys.stderr)
            status = EXIT_FAIL
    return status


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _range(text):
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _floats(n=None):
    def parse(text):
        try:
            vals = [float(x) for x in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} numbers, got {text!r}")
        return vals

    return parse


def build_parser():
    parser = _Parser(prog="wormhole-geom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--workers", type=int, default=1)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sp = sub.add_parser("flatness-scan", parents=[common], help="Riemann tensor over a (u, v) grid")
    sp.add_argument("--u-range", type=_range, default=(-3.0, 3.0))
    sp.add_argument("--v-range", type=_range, default=(-1.4, 1.4))
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--max-riemann", type=float, default=1e-6)
    sp.add_argument("--max-christoffel", type=float, default=1e-6)
    sp.add_argument("--min-factor", type=float, default=0.1, help="exclude points with F <= this")
    sp.add_argument("--min-cos-v", type=float, default=0.05, help="exclude points with |cos v| <= this")

    sp = sub.add_parser("geodesic", parents=[common], help="trace one chart geodesic")
    sp.add_argument("--start", type=_floats(3), required=True, help="x,y,z")
    sp.add_argument("--sheet", choices=("A", "B"), default="A")
    sp.add_argument("--direction", type=_floats(3), required=True, help="dx,dy,dz")
    sp.add_argument("--length", type=float, default=10.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-drift", type=float, default=1e-8)

    sp = sub.add_parser("oracle-compare", parents=[common], help="chart geodesics vs straight lines")
    sp.add_argument("--launches", type=int, default=100)
    sp.add_argument("--length", type=float, default=10.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-dev", type=float, default=1e-6)
    sp.add_argument("--margin", type=float, default=0.1, help="min distance of lines from the focal circle")
    sp.add_argument("--trace-output", default=None, help="also write every chart trace here")

    sp = sub.add_parser("cone-probe", parents=[common], help="circumference / radius ratio near the focal point")
    sp.add_argument("--radius", dest="radii", type=_floats(), default=[0.05, 0.1, 0.2])
    sp.add_argument("--tol", type=float, default=1e-2, help="relative tolerance on ratio / 4 pi")

    sp = sub.add_parser("gauss-bonnet", parents=[common], help="angle deficit of coordinate circles")
    sp.add_argument("--radius", dest="radii", type=_floats(), default=[0.1])
    sp.add_argument("--center", type=_floats(2), default=[0.0, 0.0], help="u,v")
    sp.add_argument("--expect", type=float, default=-2 * math.pi)
    sp.add_argument("--tol", type=float, default=1e-2)

    sp = sub.add_parser("hyperboloid-check", parents=[common], help="b -> 0 hyperboloid vs meridian metric")
    sp.add_argument("--a", type=_floats(), default=[1.0, 2.0])
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--zeta-min", type=float, default=0.02)
    sp.add_argument("--zeta-max", type=float, default=3.0)
    sp.add_argument("--max-residual", type=float, default=1e-9, help="bound on residual / a^2")
    return parser


_NEG_VALUE = re.compile(r"^-[\d.]")


def _glue_negative_values(argv):
    # "--u-range -3:3" would otherwise be read as two flags
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEG_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_config(argv):
    ns = vars(build_parser().parse_args(_glue_negative_values(list(argv))))
    subcommand = ns.pop("subcommand")
    cfg = RunConfig(
        subcommand=subcommand,
        output_path=ns.pop("output"),
        format=ns.pop("format"),
        seed=ns.pop("seed"),
        workers=ns.pop("workers"),
        params=ns,
    )
    if cfg.workers < 1:
        raise UsageError("--workers must be >= 1")
    for key in ("n", "launches"):
        if key in ns and ns[key] < 1:
            raise UsageError(f"--{key} must be >= 1")
    if "tol" in ns and subcommand in ("geodesic", "oracle-compare") and not 1e-12 <= ns["tol"] <= 1e-4:
        raise UsageError("--tol must lie in [1e-12, 1e-4]")
    return cfg


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
