"""Analytic-class reference radii next to the harmonic radii at alpha = 0.

Prints R_N and R'_N beside the harmonic radius for m = 1, mu = lambda = 0.
"""

import sys

from bohrradius import (
    ClassKind,
    ClassSpec,
    FunctionalParams,
    rogosinski_RN,
    rogosinski_RN_prime,
    solve_radius,
)


def main() -> int:
    spec = ClassSpec(ClassKind.PH0_ALPHA, 0.0)
    print(f"{'N':>3}  {'R_N':>18}  {'R_N prime':>18}  {'harmonic':>18}")
    for N in range(1, 11):
        h = solve_radius(spec, FunctionalParams(1, N)).radius
        print(f"{N:>3}  {rogosinski_RN(N):18.15f}  {rogosinski_RN_prime(N):18.15f}  {h:18.15f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
