"""Independent checks of the computed radii by direct series summation.

The oracle never touches the closed forms used by :func:`phi`: it sums S for
the extremal coefficient sequence term by term, with an adaptive truncation
whose omitted tail is bounded geometrically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .classes import (
    ClassKind,
    ClassSpec,
    CoefficientSequence,
    coeff_bounds,
    distance_lower_bound,
    extremal_sequence,
)
from .functional import Convention, FunctionalParams, eval_S
from .radius import solve_radius
from .specfun import TailBound

__all__ = [
    "CounterexampleFound",
    "VerificationReport",
    "DEFAULT_PARAMS",
    "case_id",
    "lattice",
    "oracle_S_extremal",
    "damped_S",
    "check_root_and_sharpness",
    "fuzz_admissible",
]

# three parameter values per class for the verification lattice
DEFAULT_PARAMS = {
    ClassKind.PH0_ALPHA: (0.0, 0.3, 0.7),
    ClassKind.PH0_M: (0.1, 0.5, 1.0),
    ClassKind.WH0_ALPHA: (0.0, 0.3, 0.7),
}

_MAX_NMAX = 1 << 24


class CounterexampleFound(AssertionError):
    def __init__(self, report: "VerificationReport", seq: CoefficientSequence):
        super().__init__(
            f"{report.case_id}: S = {report.s_at_root!r} exceeds d = {report.d!r} "
            f"at r = {report.r_eval!r}"
        )
        self.report = report
        self.seq = seq


@dataclass(frozen=True)
class VerificationReport:
    """One verification outcome.

    For ``kind == "sharpness"``: ``s_at_root`` is the oracle S at the radius
    and ``s_above_root`` at ``radius + delta``; ``passed`` iff
    ``|s_at_root - d| <= tolerance + tail_budget`` and ``s_above_root > d``.
    For ``kind == "fuzz"``: ``s_at_root`` is S of a damped sequence at
    ``r_eval < radius`` and ``passed`` iff ``s_at_root + tail_budget <= d``;
    the above-root fields are None.
    """

    case_id: str
    radius: float
    d: float
    s_at_root: float
    s_above_root: Optional[float]
    delta: Optional[float]
    passed: bool
    tail_budget: float
    kind: str = "sharpness"
    r_eval: Optional[float] = None
    tolerance: float = 0.0

    @property
    def gap(self) -> float:
        return self.s_at_root - self.d

    def as_dict(self) -> dict:
        return asdict(self)


def case_id(spec: ClassSpec, params: FunctionalParams, conv: Convention) -> str:
    return (
        f"{spec.kind.value}:{spec.kind.param_name}={spec.param:g}:m={params.m}:N={params.N}"
        f":mu={params.mu:g}:lambda={params.lam:g}:{Convention(conv).value}"
    )


def lattice(
    params_by_class: Optional[dict] = None,
    ms: Sequence[int] = (1, 2),
    Ns: Sequence[int] = tuple(range(1, 9)),
    mulams: Sequence[tuple] = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)),
) -> Iterator[tuple]:
    """``(ClassSpec, FunctionalParams)`` pairs over the verification lattice."""
    params_by_class = DEFAULT_PARAMS if params_by_class is None else params_by_class
    for kind, values in params_by_class.items():
        for p, m, N, (mu, lam) in itertools.product(values, ms, Ns, mulams):
            yield ClassSpec(kind, p), FunctionalParams(m, N, mu, lam)


def _extremal_tails(spec: ClassSpec, params: FunctionalParams, r: float, K: int) -> float:
    """Bound on |S_true - S_truncated| for the extremal sequence cut at K."""
    c_next = float(coeff_bounds(spec, K + 1))
    lin_tail = c_next * r ** (K + 1) / (1.0 - r)
    # |f| surrogate is itself the truncated series; bound the growth of U^m
    u_hi = 1.0 / (1.0 - r) * max(1.0, float(coeff_bounds(spec, 2)))
    tail = params.m * u_hi ** (params.m - 1) * lin_tail
    if params.N <= K + 1:
        tail += lin_tail
    if params.lam:
        tail += params.lam / (1.0 - r) * c_next**2 * r ** (2 * (K + 1)) / (1.0 - r * r)
    return tail


def _choose_nmax(spec: ClassSpec, params: FunctionalParams, r: float, tol: float) -> int:
    K = max(64, params.N + 1, params.t + 1)
    while _extremal_tails(spec, params, r, K) > tol:
        if K >= _MAX_NMAX:
            raise ArithmeticError(f"oracle truncation cannot reach tol {tol} at r = {r}")
        K *= 2
    return K


def oracle_S_extremal(
    spec: ClassSpec, params: FunctionalParams, r: float, tol: float = 1e-12
) -> TailBound:
    """S of the class extremal function at real ``z = r``, summed term by term.

    The extremal coefficients are nonnegative, so ``|f(r)|`` is its own power
    series and every omitted term is >= 0: the true S lies in
    ``[value, value + tail]``.
    """
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r must lie in [0, 1), got {r}")
    if r == 0.0:
        return TailBound(0.0, 0.0, 1, nonnegative=True)
    K = _choose_nmax(spec, params, r, tol)
    seq = extremal_sequence(spec, K)
    value = _S_with_series_modulus(seq, params, r)
    return TailBound(value, _extremal_tails(spec, params, r, K), K, nonnegative=True)


def _S_with_series_modulus(seq: CoefficientSequence, params: FunctionalParams, r: float) -> float:
    n = np.arange(1, seq.n_max + 1, dtype=float)
    modulus = float(np.sum(seq.sums() * np.power(r, n)))
    return eval_S(seq, params, r, modulus)


def damped_S(
    spec: ClassSpec,
    params: FunctionalParams,
    r: float,
    dampings: np.ndarray,
    splits: Optional[np.ndarray] = None,
) -> float:
    """S for ``|a_n| + |b_n| = u_n * coeff_bound(n)``, n = 2 .. len(dampings) + 1.

    ``splits`` divides each sum between ``|a_n|`` and ``|b_n|``; S only sees
    the sum, so the split is cosmetic but keeps the sequences genuinely
    harmonic. The modulus is the damped series at z = r.
    """
    u = np.asarray(dampings, dtype=float)
    if np.any(u < 0) or np.any(u > 1):
        raise ValueError("dampings must lie in [0, 1]")
    c = u * coeff_bounds(spec, np.arange(2, u.size + 2))
    s = np.full(u.size, 1.0) if splits is None else np.asarray(splits, dtype=float)
    a = np.concatenate(([1.0], s * c))
    b = np.concatenate(([0.0], (1.0 - s) * c))
    return _S_with_series_modulus(CoefficientSequence(a, b), params, r)


def check_root_and_sharpness(
    spec: ClassSpec,
    params: FunctionalParams,
    conv: Convention = Convention.EXACT_A1,
    tol: float = 1e-8,
    delta: float = 1e-3,
) -> VerificationReport:
    """Solve for the radius R, then check ``S_extremal(R) = d`` and
    ``S_extremal(R + delta) > d``.

    Under ``PAPER_LITERAL`` the identity generally fails; the report then
    carries the gap instead of raising.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    conv = Convention(conv)
    res = solve_radius(spec, params, conv, tol=min(1e-12, tol * 1e-3))
    R = res.radius
    d = distance_lower_bound(spec)
    oracle_tol = min(1e-12, tol * 1e-3)
    at = oracle_S_extremal(spec, params, R, oracle_tol)
    r_above = min(R + delta, 1.0 - 1e-9)
    above = oracle_S_extremal(spec, params, r_above, oracle_tol)
    passed = abs(at.value - d) <= tol + at.tail and above.lower > d
    return VerificationReport(
        case_id=case_id(spec, params, conv),
        radius=R,
        d=d,
        s_at_root=at.value,
        s_above_root=above.value,
        delta=r_above - R,
        passed=bool(passed),
        tail_budget=at.tail,
        kind="sharpness",
        r_eval=R,
        tolerance=tol,
    )


def fuzz_admissible(
    spec: ClassSpec,
    params: FunctionalParams,
    conv: Convention = Convention.EXACT_A1,
    trials: int = 100,
    seed: int = 42,
    r_fraction: float = 0.99,
    *,
    raise_on_failure: bool = True,
) -> list:
    """Check ``S <= d`` for random admissible sequences at ``r_fraction * R``.

    Each trial damps the extremal coefficients by factors drawn uniformly
    from [0, 1] (seeded), so every sequence satisfies the class coefficient
    bounds. The omitted tail is bounded by the extremal one and added before
    comparing with d.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 < r_fraction < 1.0:
        raise ValueError(f"r_fraction must lie in (0, 1), got {r_fraction}")
    conv = Convention(conv)
    R = solve_radius(spec, params, conv).radius
    r = r_fraction * R
    d = distance_lower_bound(spec)
    K = _choose_nmax(spec, params, r, 1e-13)
    tail = _extremal_tails(spec, params, r, K)
    rng = np.random.default_rng(seed)
    base = case_id(spec, params, conv)
    out = []
    for i in range(trials):
        u = rng.uniform(0.0, 1.0, K - 1)
        s = rng.uniform(0.0, 1.0, K - 1)
        S = damped_S(spec, params, r, u, s)
        rep = VerificationReport(
            case_id=f"{base}:fuzz={i}",
            radius=R,
            d=d,
            s_at_root=S,
            s_above_root=None,
            delta=None,
            passed=bool(S + tail <= d),
            tail_budget=tail,
            kind="fuzz",
            r_eval=r,
        )
        if not rep.passed and raise_on_failure:
            c = u * coeff_bounds(spec, np.arange(2, K + 1))
            seq = CoefficientSequence(
                np.concatenate(([1.0], s * c)), np.concatenate(([0.0], (1.0 - s) * c))
            )
            raise CounterexampleFound(rep, seq)
        out.append(rep)
    return out
