"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import contextlib
import io
import itertools
import math

import numpy as np
import pytest

from bohrradius.analytic_ref import (
    ra0_prime_cubic,
    ra0_quadratic,
    refined_r_a0,
    refined_r_a0_prime,
    rogosinski_RN,
    rogosinski_RN_prime,
)
from bohrradius.classes import ClassKind, ClassSpec, distance_lower_bound
from bohrradius.cli import main
from bohrradius.functional import Convention, FunctionalParams, phi, phi_corollary
from bohrradius.radius import solve_radius
from bohrradius.specfun import PI2_6, li2
from bohrradius.verify import DEFAULT_PARAMS, fuzz_admissible, lattice, oracle_S_extremal

from .conftest import ACCEPTANCE_LINES

EXACT = Convention.EXACT_A1
SQRT5 = math.sqrt(5.0)
LATTICE = list(lattice())
SPECS = [ClassSpec(k, p) for k, vals in DEFAULT_PARAMS.items() for p in vals]


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_rn1():
    err = abs(rogosinski_RN(1) - (SQRT5 - 2))
    report(1, err < 1e-10, f"|R_1 - (sqrt5 - 2)| = {err:.2e} (tol 1e-10)")


def test_criterion_02_rn1_prime():
    err = abs(rogosinski_RN_prime(1) - 1 / 3)
    report(2, err < 1e-10, f"|R'_1 - 1/3| = {err:.2e} (tol 1e-10)")


def test_criterion_03_refined_bounds():
    bad = []
    worst = 0.0
    for a in np.linspace(0.0, 0.99, 100):
        r = refined_r_a0(a)
        rp = refined_r_a0_prime(a)
        res = max(abs(ra0_quadratic(a, r)), abs(ra0_prime_cubic(a, rp)))
        worst = max(worst, res)
        if not (r > SQRT5 - 2 and 1 / 3 < rp < 1 / (2 + a) and res < 1e-9):
            bad.append(a)
    report(3, not bad, f"100 values of a0, {len(bad)} violations, max residual {worst:.2e} (tol 1e-9)")


def test_criterion_04_reflection():
    x = np.linspace(0.001, 0.999, 200)
    res = max(abs(li2(v) + li2(1 - v) - (PI2_6 - math.log(v) * math.log1p(-v))) for v in x)
    report(4, res < 1e-12, f"max reflection residual {res:.2e} on 200 points (tol 1e-12)")


def test_criterion_05_root_identity():
    failures = []
    worst = 0.0
    for spec, params in LATTICE:
        R = solve_radius(spec, params, EXACT).radius
        d = distance_lower_bound(spec)
        at = oracle_S_extremal(spec, params, R)
        above = oracle_S_extremal(spec, params, min(R + 1e-3, 1 - 1e-9))
        gap = abs(at.value - d) + at.tail
        worst = max(worst, gap)
        if not (gap < 1e-8 and above.lower > d):
            failures.append((spec, params))
    report(
        5,
        not failures and len(LATTICE) == 576,
        f"{len(LATTICE)} cases, {len(failures)} failures, max |S(R) - d| + tail = {worst:.2e} (tol 1e-8)",
    )


def test_criterion_06_corollary():
    worst = 0.0
    count = 0
    for spec in SPECS:
        for m, N, mu, lam in itertools.product((1, 2), (1, 2, 3, 4), (0, 1), (0, 1)):
            params = FunctionalParams(m, N, mu, lam)
            for r in np.linspace(0.05, 0.95, 10):
                worst = max(worst, abs(phi_corollary(spec, m, N, mu, lam, r) - phi(spec, params, EXACT, r)))
                count += 1
    report(6, worst < 1e-9, f"{count} evaluations, max difference {worst:.2e} (tol 1e-9)")


def test_criterion_07_coincidence():
    worst = 0.0
    for m, N, mu, lam in itertools.product((1, 2), range(1, 7), (0, 1), (0, 1)):
        p = FunctionalParams(m, N, mu, lam)
        a = solve_radius(ClassSpec(ClassKind.PH0_ALPHA, 0.0), p).radius
        w = solve_radius(ClassSpec(ClassKind.WH0_ALPHA, 0.0), p).radius
        worst = max(worst, abs(a - w))
    report(7, worst < 1e-9, f"48 cases, max radius difference {worst:.2e} (tol 1e-9)")


def test_criterion_08_monotonicity():
    grid = np.linspace(0.0, 0.999, 64)
    nonmono = 0
    radii = {}
    for spec, params in LATTICE:
        vals = np.array([phi(spec, params, EXACT, r) for r in grid])
        nonmono += not np.all(np.diff(vals) > 0)
        radii[(spec, params.m, params.N, params.mu, params.lam)] = solve_radius(spec, params).radius
    weight_viol = 0
    for (spec, m, N, mu, lam), R in radii.items():
        if mu == 0:
            weight_viol += radii[(spec, m, N, 1.0, lam)] > R
        if lam == 0:
            weight_viol += radii[(spec, m, N, mu, 1.0)] > R
    report(
        8,
        nonmono == 0 and weight_viol == 0,
        f"{len(LATTICE)} grids, {nonmono} non-increasing; {weight_viol} radius increases in mu or lambda",
    )


def test_criterion_09_fuzz():
    failures = 0
    trials = 0
    for spec, params in LATTICE:
        reps = fuzz_admissible(spec, params, EXACT, trials=100, seed=42, r_fraction=0.99,
                               raise_on_failure=False)
        trials += len(reps)
        failures += sum(not r.passed for r in reps)
    report(9, failures == 0, f"{trials} sequences (seed 42, r = 0.99 R), {failures} counterexamples")


def _capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_10_determinism(tmp_path):
    sweep = ["sweep", "--class", "wh0-alpha", "--start", "0", "--stop", "0.9", "--steps", "4",
             "--m", "1,2", "--N", "1-8", "--mu", "0,1", "--lambda", "0,1", "--format", "csv"]
    verify = ["verify", "--format", "json"]
    runs = {}
    for name, argv in (("sweep", sweep), ("verify", verify)):
        outs = []
        for i, extra in enumerate(([], [], ["--jobs", "2"])):
            path = tmp_path / f"{name}{i}.out"
            code, text = _capture(argv + extra + ["--out", str(path)])
            outs.append((code, text, path.read_text()))
        runs[name] = outs
    ok = all(
        len(outs[0][1]) > 0 and all(o[0] == 0 and o[1] == o[2] == outs[0][1] for o in outs)
        for outs in runs.values()
    )
    sizes = ", ".join(f"{k} {len(v[0][1])} bytes" for k, v in runs.items())
    report(10, ok, f"sweep and verify each run three times (serial twice, --jobs 2 once): {sizes}, byte-identical")
