import math

import numpy as np
import pytest

from bohrradius.classes import ClassKind, ClassSpec, distance_lower_bound, growth_upper
from bohrradius.functional import Convention, FunctionalParams, phi, phi_bound
from bohrradius.radius import solve_radius
from bohrradius.verify import (
    CounterexampleFound,
    VerificationReport,
    check_root_and_sharpness,
    damped_S,
    fuzz_admissible,
    lattice,
    oracle_S_extremal,
)

from .conftest import SPECS

EXACT = Convention.EXACT_A1
LITERAL = Convention.PAPER_LITERAL


def test_lattice_size():
    cases = list(lattice())
    assert len(cases) == 3 * 3 * 2 * 8 * 4
    assert len(set(cases)) == len(cases)


def test_oracle_at_zero():
    tb = oracle_S_extremal(SPECS[0], FunctionalParams(2, 3, 1, 1), 0.0)
    assert tb.value == 0.0 and tb.tail == 0.0


def test_oracle_class1_n1():
    spec = ClassSpec(ClassKind.PH0_ALPHA, 0.5)
    tb = oracle_S_extremal(spec, FunctionalParams(1, 1), 0.3)
    # mpmath: 2 F_{1/2}(0.3)
    assert tb.contains(0.71334988787746476, slack=1e-14)
    assert tb.value == pytest.approx(2 * growth_upper(spec, 0.3), abs=1e-12)


def test_oracle_class2_frozen():
    spec = ClassSpec(ClassKind.PH0_M, 0.2)
    params = FunctionalParams(2, 5, 1, 1)
    tb = oracle_S_extremal(spec, params, 0.25)
    # mpmath nsum of the extremal series
    assert tb.contains(0.070914392337266534, slack=1e-14)
    assert tb.value == pytest.approx(phi(spec, params, EXACT, 0.25) + distance_lower_bound(spec), abs=1e-10)


@pytest.mark.parametrize("r", [0.1, 0.2, 0.3])
def test_oracle_equivalence(spec, r):
    for params in (FunctionalParams(1, 1), FunctionalParams(2, 4, 1, 0), FunctionalParams(1, 7, 1, 1)):
        tb = oracle_S_extremal(spec, params, r)
        ref = phi_bound(spec, params, EXACT, r)
        assert abs(tb.value - (ref.value + distance_lower_bound(spec))) <= tb.tail + ref.tail + 1e-10


def test_oracle_rejects_r():
    with pytest.raises(ValueError):
        oracle_S_extremal(SPECS[0], FunctionalParams(1, 1), 1.0)


def test_sharpness_examples():
    rep = check_root_and_sharpness(ClassSpec(ClassKind.PH0_ALPHA, 0.3), FunctionalParams(1, 5, 1, 1), EXACT, delta=1e-3)
    assert isinstance(rep, VerificationReport)
    assert rep.passed and rep.kind == "sharpness"
    assert abs(rep.gap) < 1e-8
    assert rep.s_above_root > rep.d

    p = FunctionalParams(2, 2, 0, 1)
    w = check_root_and_sharpness(ClassSpec(ClassKind.WH0_ALPHA, 0.0), p, EXACT)
    a = check_root_and_sharpness(ClassSpec(ClassKind.PH0_ALPHA, 0.0), p, EXACT)
    assert w.passed and a.passed
    assert w.radius == pytest.approx(a.radius, abs=1e-12)
    assert w.s_at_root == pytest.approx(a.s_at_root, abs=1e-12)


@pytest.mark.parametrize("delta", [0.0, -1e-3, 1.0])
def test_sharpness_rejects_delta(delta):
    with pytest.raises(ValueError):
        check_root_and_sharpness(SPECS[0], FunctionalParams(1, 1), EXACT, delta=delta)


def test_literal_reports_gap():
    p = FunctionalParams(1, 5, 1, 1)
    off = check_root_and_sharpness(ClassSpec(ClassKind.PH0_ALPHA, 0.2), p, LITERAL)
    assert not off.passed and abs(off.gap) > 1e-3
    on = check_root_and_sharpness(ClassSpec(ClassKind.PH0_ALPHA, 0.5), p, LITERAL)
    assert on.passed


def test_damped_all_ones_is_extremal(spec):
    params = FunctionalParams(1, 3, 1, 1)
    R = solve_radius(spec, params).radius
    S = damped_S(spec, params, R, np.ones(20_000))
    assert S == pytest.approx(distance_lower_bound(spec), abs=1e-8)


def test_damped_split_invariance():
    spec = SPECS[4]
    params = FunctionalParams(2, 4, 1, 1)
    rng = np.random.default_rng(0)
    u = rng.uniform(size=500)
    a = damped_S(spec, params, 0.3, u, np.zeros(500))
    b = damped_S(spec, params, 0.3, u, rng.uniform(size=500))
    assert a == pytest.approx(b, rel=1e-14)


def test_damped_rejects_out_of_range():
    with pytest.raises(ValueError):
        damped_S(SPECS[0], FunctionalParams(1, 1), 0.2, np.array([0.5, 1.5]))


def test_fuzz_examples():
    for spec, params in (
        (ClassSpec(ClassKind.PH0_ALPHA, 0.25), FunctionalParams(1, 3, 1, 1)),
        (ClassSpec(ClassKind.PH0_M, 0.3), FunctionalParams(2, 1, 0, 1)),
    ):
        reps = fuzz_admissible(spec, params, EXACT, trials=100, seed=42, r_fraction=0.99)
        assert len(reps) == 100
        assert all(r.passed and r.kind == "fuzz" for r in reps)
        assert all(r.s_at_root + r.tail_budget <= r.d for r in reps)


def test_fuzz_deterministic():
    spec, params = SPECS[7], FunctionalParams(2, 6, 1, 0)
    a = fuzz_admissible(spec, params, trials=5, seed=7)
    b = fuzz_admissible(spec, params, trials=5, seed=7)
    c = fuzz_admissible(spec, params, trials=5, seed=8)
    assert a == b
    assert [r.s_at_root for r in a] != [r.s_at_root for r in c]


def test_fuzz_validation():
    with pytest.raises(ValueError):
        fuzz_admissible(SPECS[0], FunctionalParams(1, 1), trials=0)
    with pytest.raises(ValueError):
        fuzz_admissible(SPECS[0], FunctionalParams(1, 1), r_fraction=1.0)


def test_literal_counterexample():
    # the literal n = 1 coefficient 2(1 - alpha) < 1 overstates the radius
    spec = ClassSpec(ClassKind.PH0_ALPHA, 0.9)
    with pytest.raises(CounterexampleFound) as exc:
        fuzz_admissible(spec, FunctionalParams(1, 1, 0, 1), LITERAL, trials=20)
    err = exc.value
    assert err.report.s_at_root > err.report.d
    assert err.seq.a[0] == 1.0 and err.seq.b[0] == 0.0
    assert err.seq.is_admissible(spec)
    assert math.isfinite(err.report.r_eval)
