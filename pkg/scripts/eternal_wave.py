#!/usr/bin/env python3
"""Eternal-wave horizon family: sandwich bounds and monotone settling.

Each horizon n launches unit-viscosity data from the cubic wave at t = -n.
The family is ordered in n, stays within an explicit band of the cubic
wave, and its consecutive sup-differences shrink; the largest horizon is
the working surrogate for the limit.

    python3 scripts/eternal_wave.py --n-list 4,8,16
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from shockzoom import Window, eternal_z_limit  # noqa: E402
from shockzoom.experiments import suite_sandwich  # noqa: E402
from shockzoom.io import write_snapshots  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-list", default="4,8,16")
    ap.add_argument("--t-min", type=float, default=-3.5)
    ap.add_argument("--t-max", type=float, default=-1.0)
    ap.add_argument("--x-max", type=float, default=20.0)
    ap.add_argument("--dx", type=float, default=0.02)
    ap.add_argument("--sandwich", action="store_true",
                    help="also run the cubic-wave sandwich check (n=16)")
    ap.add_argument("--csv", help="write the final wave snapshots here")
    args = ap.parse_args()

    ns = [float(v) for v in args.n_list.split(",")]
    window = Window(args.t_min, args.t_max, -args.x_max, args.x_max)
    wave, report = eternal_z_limit(ns, window, tol=float("inf"), dx=args.dx)

    print(f"horizons n = {list(report.n_list)}")
    print(f"order margin on x >= 0: {report.monotone_margin:.3e}")
    print(f"consecutive sup differences: "
          f"{', '.join('%.4e' % d for d in report.sup_diffs)} "
          f"({'decreasing' if report.decreasing else 'NOT decreasing'})")

    ok = report.decreasing and report.monotone_margin >= -1e-4
    if args.sandwich:
        _, rows = suite_sandwich()
        worst = min(r[2] for r in rows)
        sandwich_ok = all(r[3] for r in rows)
        print(f"sandwich margins (n=16, |x| <= 40): worst {worst:.3e} "
              f"({'ok' if sandwich_ok else 'violated'})")
        ok = ok and sandwich_ok

    if args.csv:
        write_snapshots(args.csv, list(wave.trajectory))
        print(f"wrote {args.csv}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
