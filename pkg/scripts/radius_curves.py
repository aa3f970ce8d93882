"""Radius as a function of the class parameter, written as CSV plot data.

Example::

    python3 scripts/radius_curves.py --class ph0-alpha --points 41 --out radii.csv
"""

import argparse
import csv
import sys

import numpy as np

from bohrradius import ClassKind, ClassSpec, FunctionalParams, solve_radius
from bohrradius.classes import M_MAX


def parameter_grid(kind: ClassKind, points: int) -> np.ndarray:
    if kind is ClassKind.PH0_M:
        # stay clear of both ends of the open validity interval
        return np.linspace(0.01, 0.99 * M_MAX, points)
    return np.linspace(0.0, 0.99, points)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--class", dest="cls", choices=[k.value for k in ClassKind], default="ph0-alpha")
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--m", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--N", type=int, nargs="+", default=[1, 2, 3, 4, 6, 8])
    ap.add_argument("--mu", type=float, default=1.0)
    ap.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    kind = ClassKind(args.cls)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow([kind.param_name, "m", "N", "radius"])
    for p in parameter_grid(kind, args.points):
        spec = ClassSpec(kind, float(p))
        for m in args.m:
            for N in args.N:
                r = solve_radius(spec, FunctionalParams(m, N, args.mu, args.lam)).radius
                w.writerow([f"{p:.15g}", m, N, f"{r:.15g}"])
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
