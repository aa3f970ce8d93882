"""Root identity, sharpness and fuzz checks over the full lattice, with a summary.

Example::

    python3 scripts/verify_lattice.py --trials 100 --seed 42
"""

import argparse
import sys
import time

from bohrradius import Convention
from bohrradius.verify import check_root_and_sharpness, fuzz_admissible, lattice


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--convention", choices=[c.value for c in Convention], default="exact-a1")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)
    conv = Convention(args.convention)

    t0 = time.perf_counter()
    n_cases = n_sharp_fail = n_fuzz_fail = 0
    worst_gap = 0.0
    for spec, params in lattice():
        try:
            rep = check_root_and_sharpness(spec, params, conv)
        except ValueError as exc:
            print(f"skip {spec} {params}: {exc}", file=sys.stderr)
            continue
        n_cases += 1
        worst_gap = max(worst_gap, abs(rep.gap))
        if not rep.passed:
            n_sharp_fail += 1
            print(f"sharpness FAIL {rep.case_id}  gap {rep.gap:.3e}")
        if args.trials:
            reps = fuzz_admissible(spec, params, conv, args.trials, args.seed, raise_on_failure=False)
            bad = sum(not r.passed for r in reps)
            if bad:
                n_fuzz_fail += 1
                print(f"fuzz FAIL {rep.case_id}  {bad}/{len(reps)} sequences exceed d")
    dt = time.perf_counter() - t0
    print(
        f"{n_cases} cases in {dt:.1f} s; sharpness failures {n_sharp_fail}; "
        f"fuzz failures {n_fuzz_fail}; max |S(R) - d| = {worst_gap:.2e}"
    )
    return 1 if n_sharp_fail or n_fuzz_fail else 0


if __name__ == "__main__":
    sys.exit(main())
