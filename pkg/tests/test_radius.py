import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bohrradius.classes import ClassKind, ClassSpec
from bohrradius.functional import Convention, FunctionalParams, phi
from bohrradius.radius import (
    InvalidProblem,
    NonMonotoneDetected,
    RadiusResult,
    audit_monotone,
    bisect,
    solve_radius,
)

from .conftest import SPECS

EXACT = Convention.EXACT_A1


def test_bisect_basic():
    lo, hi, it = bisect(lambda x: x - 0.3, 0.0, 1.0, 1e-12)
    assert lo < 0.3 <= hi and hi - lo <= 2e-12 and it > 0


def test_bisect_rejects_bad_tol():
    with pytest.raises(ValueError):
        bisect(lambda x: x, -1.0, 1.0, 0.0)


def test_radius_class1_alpha0_n1():
    res = solve_radius(ClassSpec(ClassKind.PH0_ALPHA, 0.0), FunctionalParams(1, 1))
    assert isinstance(res, RadiusResult)
    # mpmath findroot
    assert res.radius == pytest.approx(0.16320489849045786, abs=1e-11)
    assert res.bracket_lo <= res.radius <= res.bracket_hi
    assert res.residual < 1e-10


def test_radius_alpha_near_one():
    # majorant collapses to the identity map: 2r = 1
    res = solve_radius(ClassSpec(ClassKind.PH0_ALPHA, 1 - 1e-9), FunctionalParams(1, 1))
    assert res.radius == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("N", [1, 2, 5, 8])
@pytest.mark.parametrize("m", [1, 2])
def test_class_coincidence(m, N):
    p = FunctionalParams(m, N, 1, 1)
    a = solve_radius(ClassSpec(ClassKind.PH0_ALPHA, 0.0), p).radius
    b = solve_radius(ClassSpec(ClassKind.WH0_ALPHA, 0.0), p).radius
    assert abs(a - b) <= 1e-9


def test_audit_examples():
    assert audit_monotone(ClassSpec(ClassKind.PH0_M, 0.5), FunctionalParams(2, 4, 1, 1))
    res = solve_radius(ClassSpec(ClassKind.WH0_ALPHA, 0.3), FunctionalParams(1, 3, 1, 0), audit=True)
    assert 0 < res.radius < 1
    with pytest.raises(ValueError):
        audit_monotone(SPECS[0], FunctionalParams(1, 1), EXACT, grid_size=2)


def test_audit_flags_nonmonotone(monkeypatch):
    import bohrradius.radius as rad

    monkeypatch.setattr(rad, "phi", lambda spec, params, conv, r: math.cos(20 * r) - 2)
    with pytest.raises(NonMonotoneDetected):
        rad.solve_radius(SPECS[0], FunctionalParams(1, 1), audit=True)


def test_invalid_problem(monkeypatch):
    import bohrradius.radius as rad

    monkeypatch.setattr(rad, "phi", lambda spec, params, conv, r: r + 0.1)
    with pytest.raises(InvalidProblem):
        rad.solve_radius(SPECS[0], FunctionalParams(1, 1))


@pytest.mark.parametrize("tol", [0.0, -1e-9, 1e-2])
def test_tol_validation(tol):
    with pytest.raises(ValueError):
        solve_radius(SPECS[0], FunctionalParams(1, 1), tol=tol)


def test_root_identity(spec):
    for p in (FunctionalParams(1, 1), FunctionalParams(2, 6, 1, 1), FunctionalParams(1, 7, 0, 1)):
        res = solve_radius(spec, p, tol=1e-12)
        assert phi(spec, p, EXACT, res.bracket_lo) < 0 <= phi(spec, p, EXACT, res.bracket_hi)
        assert res.bracket_hi - res.bracket_lo <= 2e-12
        fine = solve_radius(spec, p, tol=1e-14).radius
        assert abs(res.radius - fine) <= 1e-12


@given(
    st.sampled_from(SPECS),
    st.integers(1, 2),
    st.integers(1, 8),
    st.floats(0, 2),
    st.floats(0, 2),
    st.floats(0.01, 1),
)
def test_radius_decreases_with_weights(spec, m, N, mu, lam, extra):
    base = solve_radius(spec, FunctionalParams(m, N, mu, lam)).radius
    assert solve_radius(spec, FunctionalParams(m, N, mu + extra, lam)).radius <= base + 1e-12
    assert solve_radius(spec, FunctionalParams(m, N, mu, lam + extra)).radius <= base + 1e-12


@pytest.mark.parametrize("m", [1, 2])
def test_radius_increases_with_N(spec, m):
    radii = [solve_radius(spec, FunctionalParams(m, N)).radius for N in range(1, 9)]
    assert all(b >= a - 1e-12 for a, b in zip(radii, radii[1:]))


def test_deterministic(spec):
    p = FunctionalParams(2, 5, 0.5, 1.5)
    assert solve_radius(spec, p) == solve_radius(spec, p)
