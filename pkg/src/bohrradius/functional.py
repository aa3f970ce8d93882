"""The refined Bohr-Rogosinski functional S and the class majorants Phi.

For a harmonic map with coefficient magnitudes ``c_n = |a_n| + |b_n|``::

    S(r) = |f(z)|^m + sum_{n>=N} c_n r^n
           + mu [t>=1] (sum_{n=1}^{t} c_n^2) r^N / (1 - r)
           + lambda / (1 - r) * sum_{n>=t+1} c_n^2 r^(2n)

with ``t = floor((N - 1) / 2)`` (note ``1 + r/(1-r) = 1/(1-r)``). ``phi`` is S
evaluated on the class majorant (growth bound for |f|, coefficient bounds for
c_n) minus the class distance bound; its unique zero in (0, 1) is the sharp
radius.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .classes import (
    ClassKind,
    ClassSpec,
    CoefficientSequence,
    SERIES_MAX_TERMS,
    SERIES_TOL,
    coeff_bounds,
    distance_lower_bound,
)
from .specfun import TailBound, li2, sum_geometric_tail

__all__ = [
    "Convention",
    "ConventionError",
    "FunctionalParams",
    "eval_S",
    "phi",
    "phi_bound",
    "phi_corollary",
]


class ConventionError(ValueError):
    pass


class Convention(enum.Enum):
    """How the n = 1 coefficient enters the linear, mu and lambda sums.

    ``EXACT_A1`` uses the normalised value ``|a_1| + |b_1| = 1``.
    ``PAPER_LITERAL`` evaluates the class coefficient formula at n = 1
    (``2(1-alpha)`` or ``2``); for PH0_M that
    formula is singular, so its n = 1 terms are dropped when ``t = 0`` and
    the convention is refused when ``t >= 1``.
    """

    EXACT_A1 = "exact-a1"
    PAPER_LITERAL = "paper-literal"


@dataclass(frozen=True)
class FunctionalParams:
    m: int
    N: int
    mu: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be an integer >= 1, got {self.N}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "N", int(self.N))
        for name in ("mu", "lam"):
            v = float(getattr(self, name))
            if not (v >= 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real >= 0, got {v}")
            object.__setattr__(self, name, v)

    @property
    def t(self) -> int:
        return (self.N - 1) // 2


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r must lie in [0, 1), got {r}")
    return r


def eval_S(seq: CoefficientSequence, params: FunctionalParams, r: float, modulus: float) -> float:
    """S for an explicit (truncated) coefficient sequence.

    ``modulus`` stands in for ``|f(z)|`` on ``|z| = r``. Terms beyond
    ``seq.n_max`` are not included.
    """
    r = _check_r(r)
    if modulus < 0:
        raise ValueError("modulus must be >= 0")
    c = seq.sums()
    n = np.arange(1, c.size + 1)
    pw = np.power(r, n.astype(float))
    N, t = params.N, params.t
    total = float(modulus) ** params.m
    total += float(np.sum(c[N - 1 :] * pw[N - 1 :]))
    if params.mu and t >= 1:
        total += params.mu * float(np.sum(c[:t] ** 2)) * r**N / (1.0 - r)
    if params.lam:
        total += params.lam / (1.0 - r) * float(np.sum(c[t:] ** 2 * pw[t:] ** 2))
    return total


# -- class majorant pieces -------------------------------------------------
#
# Each class supplies  lin2 = sum_{n>=2} c_n r^n  and  sq2 = sum_{n>=2} c_n^2 r^(2n)
# (closed form or summed); the finite n < N, n <= t corrections and the n = 1
# terms are assembled generically.


def _lin2(spec: ClassSpec, r: float, tol: float) -> TailBound:
    p = spec.param
    if spec.kind is ClassKind.PH0_ALPHA:
        return TailBound(-2.0 * (1.0 - p) * (r + math.log1p(-r)), 0.0, 0, True)
    if spec.kind is ClassKind.PH0_M:
        return TailBound(2.0 * p * (r + (1.0 - r) * math.log1p(-r)), 0.0, 0, True)
    if r == 0.0:
        return TailBound(0.0, 0.0, 0, True)
    return sum_geometric_tail(
        lambda n: coeff_bounds(spec, n), r, 2, tol, max_terms=SERIES_MAX_TERMS, strict=False
    )


def _sq2(spec: ClassSpec, r: float, tol: float) -> TailBound:
    p = spec.param
    x = r * r
    if spec.kind is ClassKind.PH0_ALPHA:
        return TailBound(4.0 * (1.0 - p) ** 2 * (li2(x) - x), 0.0, 0, True)
    if spec.kind is ClassKind.PH0_M:
        # sum_{n>=2} r^(2n) / (n (n-1))^2
        closed = (x + 1.0) * li2(x) + 2.0 * (x - 1.0) * math.log1p(-x) - 3.0 * x
        return TailBound(4.0 * p * p * closed, 0.0, 0, True)
    if r == 0.0:
        return TailBound(0.0, 0.0, 0, True)
    return sum_geometric_tail(
        lambda n: coeff_bounds(spec, n) ** 2, x, 2, tol, max_terms=SERIES_MAX_TERMS, strict=False
    )


def _first_coeff(spec: ClassSpec, conv: Convention, t: int) -> float:
    if conv is Convention.EXACT_A1:
        return 1.0
    if spec.kind is ClassKind.PH0_M:
        if t >= 1:
            raise ConventionError(
                "paper-literal convention is singular for ph0-m when t >= 1 "
                "(the class bound 2M / (n (n-1)) is undefined at n = 1)"
            )
        return 0.0
    return float(coeff_bounds(spec, 1.0))


def phi_bound(
    spec: ClassSpec,
    params: FunctionalParams,
    conv: Convention = Convention.EXACT_A1,
    r: float = 0.0,
    tol: float = SERIES_TOL,
) -> TailBound:
    """Phi(r) with a bound on its truncation error (zero for closed forms)."""
    r = _check_r(r)
    conv = Convention(conv)
    N, t, m = params.N, params.t, params.m
    c1 = _first_coeff(spec, conv, t)

    lin = _lin2(spec, r, tol)
    sq = _sq2(spec, r, tol) if params.lam else TailBound(0.0, 0.0, 0, True)

    # finite coefficient list c_2 .. c_K, K covering n < N and n <= t
    k = max(N - 1, t, 1)
    cn = coeff_bounds(spec, np.arange(2, k + 1)) if k >= 2 else np.empty(0)
    pw = np.power(r, np.arange(2, k + 1, dtype=float))

    modulus = r + lin.value
    value = modulus**m
    err = 0.0
    if lin.tail:
        err += m * (modulus + lin.tail) ** (m - 1) * lin.tail

    # sum_{n>=N} c_n r^n
    linear = lin.value - float(np.sum(cn[: max(N - 2, 0)] * pw[: max(N - 2, 0)]))
    if N == 1:
        linear += c1 * r
    value += linear
    err += lin.tail

    if params.mu and t >= 1:
        value += params.mu * (c1 * c1 + float(np.sum(cn[: t - 1] ** 2))) * r**N / (1.0 - r)

    if params.lam:
        sq_tail = sq.value - float(np.sum(cn[: max(t - 1, 0)] ** 2 * pw[: max(t - 1, 0)] ** 2))
        if t == 0:
            sq_tail += c1 * c1 * r * r
        value += params.lam * sq_tail / (1.0 - r)
        err += params.lam * sq.tail / (1.0 - r)

    value -= distance_lower_bound(spec)
    return TailBound(value, err, lin.terms_used + sq.terms_used)


def phi(
    spec: ClassSpec,
    params: FunctionalParams,
    conv: Convention = Convention.EXACT_A1,
    r: float = 0.0,
) -> float:
    """Class majorant of S minus the distance bound, at radius ``r``."""
    return phi_bound(spec, params, conv, r).value


# -- explicit closed forms (N = 1..4)  ---------------------------------------


def phi_corollary(spec: ClassSpec, m: int, N: int, mu: float, lam: float, r: float) -> float:
    """Explicit N = 1..4 closed forms of the majorant.

    Written out per class and per N rather than through :func:`phi_bound`, so
    the two can be checked against each other. The mu multiplier is applied
    on the ``r^N / (1 - r)`` term in every class, and the W-class sums take
    their n = 1 term at the normalised value ``|a_1| + |b_1| = 1``.
    """
    if N not in (1, 2, 3, 4):
        raise ValueError(f"corollary forms exist for N in 1..4, got {N}")
    r = _check_r(r)
    FunctionalParams(m, N, mu, lam)  # validation only
    p = spec.param
    w = 1.0 + r / (1.0 - r)
    if spec.kind is ClassKind.PH0_ALPHA:
        a = 1.0 - p
        F = r - 2.0 * a * (r + math.log1p(-r))
        J1 = r * r + 4.0 * a * a * (li2(r * r) - r * r)
        J2 = F**m - 1.0 - 2.0 * a * (math.log(2.0) - 1.0)
        J3 = r + math.log1p(-r)
        if N == 1:
            return r - 2.0 * a * J3 + J2 + lam * w * J1
        if N == 2:
            return -2.0 * a * J3 + J2 + lam * w * J1
        if N == 3:
            return (
                -2.0 * a * (J3 + r * r / 2.0)
                + J2
                + mu * r**3 / (1.0 - r)
                + lam * w * (J1 - r * r)
            )
        return (
            -2.0 * a * (J3 + r * r / 2.0 + r**3 / 3.0)
            + J2
            + mu * r**4 / (1.0 - r)
            + lam * w * (J1 - r * r)
        )
    if spec.kind is ClassKind.PH0_M:
        M = p
        x = r * r
        G = r + 2.0 * M * (r + (1.0 - r) * math.log1p(-r))
        L1 = x + 4.0 * M * M * ((x + 1.0) * li2(x) + 2.0 * (x - 1.0) * math.log1p(-x) - 3.0 * x)
        L2 = G**m - 1.0 - 2.0 * M * (1.0 - 2.0 * math.log(2.0))
        L3 = r + (1.0 - r) * math.log1p(-r)
        if N == 1:
            return r + 2.0 * M * L3 + L2 + lam * w * L1
        if N == 2:
            return 2.0 * M * L3 + L2 + lam * w * L1
        if N == 3:
            return 2.0 * M * (L3 - x / 2.0) + L2 + mu * r**3 / (1.0 - r) + lam * w * (L1 - x)
        return (
            2.0 * M * (L3 - x / 2.0 - r**3 / 6.0)
            + L2
            + mu * r**4 / (1.0 - r)
            + lam * w * (L1 - x)
        )

    # W class: C_{m,N} plus the refinement terms, each sum taken from its own
    # starting index.
    def wn(n):
        v = 2.0 / (p * n * n + (1.0 - p) * n)
        return np.where(n == 1, 1.0, v)

    def lin_from(start):
        if r == 0.0:
            return 0.0
        return sum_geometric_tail(wn, r, start, SERIES_TOL, max_terms=SERIES_MAX_TERMS, strict=False).value

    def sq_from(start):
        if r == 0.0:
            return 0.0
        return sum_geometric_tail(
            lambda n: wn(n) ** 2, r * r, start, SERIES_TOL, max_terms=SERIES_MAX_TERMS, strict=False
        ).value

    C = lin_from(1) ** m + lin_from(N) - distance_lower_bound(spec)
    if N <= 2:
        return C + lam * w * sq_from(1)
    return C + mu * r**N / (1.0 - r) + lam * w * sq_from(2)
