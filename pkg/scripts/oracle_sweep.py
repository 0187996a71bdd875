"""Chart geodesics against the straight-line oracle for many random launches.

Summarises positional deviation, sheet-swap agreement and conservation
drift as a function of integrator tolerance.
"""

import argparse

import numpy as np

from wormhole_geom.geodesics import compare_with_oracle, random_launches


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--launches", type=int, default=100)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--length", type=float, default=10.0)
    parser.add_argument("--tols", default="1e-6,1e-8,1e-10,1e-12")
    args = parser.parse_args()

    launches = random_launches(args.launches, seed=args.seed, length=args.length)
    print(f"{'tol':>8} {'max dev':>10} {'median dev':>11} {'swap ok':>8} {'crossing':>9} {'speed':>10} {'axial':>10}")
    for tol in (float(t) for t in args.tols.split(",")):
        res = [compare_with_oracle(p, d, args.length, tol) for p, d in launches]
        devs = np.array([c.max_deviation for c in res])
        swaps_ok = sum(c.chart_swaps == c.oracle_swaps for c in res)
        print(
            f"{tol:8.0e} {devs.max():10.2e} {np.median(devs):11.2e} {swaps_ok:>4}/{len(res):<3} "
            f"{sum(c.crosses_disk for c in res):9d} {max(c.max_speed_error for c in res):10.2e} "
            f"{max(c.max_killing_error for c in res):10.2e}"
        )


if __name__ == "__main__":
    main()
