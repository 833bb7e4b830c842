#!/usr/bin/env python3
"""Zoom one scenario across a viscosity sweep and tabulate the mismatch.

For the single-shock and merging scenarios this is the type-1 zoom against
the fitted wave pattern; for the formation scenario the type-2 zoom against
the eternal wave.  Results go to stdout and, optionally, a CSV.

    python3 scripts/zoom_sweep.py --scenario theorem1-single --eps 0.04,0.02,0.01
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from shockzoom import Window, burgers, build_scenario, eternal_z  # noqa: E402
from shockzoom.experiments import (formation_zoom, merging_surrogate,  # noqa: E402
                                   merging_zoom, single_shock_zoom)
from shockzoom.io import write_sweep  # noqa: E402
from shockzoom.scenarios import SCENARIO_IDS  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", choices=list(SCENARIO_IDS),
                    default="theorem1-single")
    ap.add_argument("--eps", default="",
                    help="comma-separated decreasing viscosities")
    ap.add_argument("--csv", help="write the sweep table here")
    args = ap.parse_args()

    scenario = build_scenario(args.scenario, burgers())
    if scenario.kind == "shock_formation":
        eps = [float(v) for v in (args.eps or "1e-2,4e-3").split(",")]
        window = Window(-3.0, 1.0, -4.0, 4.0)
        times = list(window.t_samples(17))
        z_wave = eternal_z(32.0, window, dx=0.02, x_max=60.0,
                           snapshot_times=times)
        outcomes = formation_zoom(scenario, eps, z_wave, window=window)
    elif scenario.kind == "merging_shocks":
        eps = [float(v) for v in (args.eps or "0.04,0.02,0.01").split(",")]
        wave, cauchy = merging_surrogate(
            scenario, window=Window(-6.25, 6.25, -5.0, 5.0))
        print(f"surrogate Cauchy distances: "
              f"{', '.join('%.3e' % d for d in cauchy.distances)}")
        outcomes = merging_zoom(scenario, eps, wave)
    else:
        eps = [float(v) for v in (args.eps or "0.04,0.02,0.01").split(",")]
        outcomes = single_shock_zoom(scenario, eps)

    print(f"{'eps':>10} {'sup_error':>12} {'l1_error':>12} {'shift':>10}")
    for o in outcomes:
        print(f"{o.eps:>10.4g} {o.sup_error:>12.4e} {o.l1_error:>12.4e} "
              f"{o.shift:>10.4g}")
    if args.csv:
        write_sweep(args.csv, outcomes)
        print(f"wrote {args.csv}")
    sups = [o.sup_error for o in outcomes]
    l1s = [o.l1_error for o in outcomes]
    ok = all(b < a for a, b in zip(l1s[:-1], l1s[1:])) or \
        all(b < a for a, b in zip(sups[:-1], sups[1:]))
    print("errors decreasing" if ok else "errors NOT decreasing")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
