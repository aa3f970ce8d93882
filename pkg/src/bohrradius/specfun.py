"""Dilogarithm and tail-bounded series summation.

Every truncated sum in the package goes through :func:`sum_geometric_tail`,
which returns the partial sum together with a rigorous bound on what was
dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ConvergenceError",
    "TailBound",
    "li2",
    "sum_geometric_tail",
    "PI2_6",
]

PI2_6 = math.pi**2 / 6.0

# li2 direct-series truncation target; well below binary64 resolution of the
# partial sums (which never exceed pi^2/6).
_LI2_TAIL = 1e-17


class ConvergenceError(ArithmeticError):
    """Raised when a series cannot be truncated to the requested tolerance."""


@dataclass(frozen=True)
class TailBound:
    """A truncated sum and a bound on the omitted part.

    The exact sum lies in ``[value - tail, value + tail]``, or in
    ``[value, value + tail]`` when ``nonnegative`` is set (all omitted terms
    are >= 0).
    """

    value: float
    tail: float
    terms_used: int
    nonnegative: bool = False

    def __post_init__(self):
        if not self.tail >= 0.0:
            raise ValueError(f"tail must be >= 0, got {self.tail}")
        if self.terms_used < 0:
            raise ValueError("terms_used must be >= 0")

    @property
    def lower(self) -> float:
        return self.value if self.nonnegative else self.value - self.tail

    @property
    def upper(self) -> float:
        return self.value + self.tail

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= x <= self.upper + slack


def _coeff_array(coeff: Callable, n: np.ndarray) -> np.ndarray:
    # coeff may return a scalar (constant coefficients) or an array
    return np.broadcast_to(np.asarray(coeff(n), dtype=float), n.shape)


def sum_geometric_tail(
    coeff: Callable,
    ratio_bound: float,
    start: int,
    tol: float = 1e-12,
    *,
    alternating: bool = False,
    order: int = 1,
    max_terms: int = 4_000_000,
    strict: bool = True,
) -> TailBound:
    """Sum ``sum_{n >= start} coeff(n) * ratio_bound**n`` with a tail bound.

    Parameters
    ----------
    coeff : callable
        Vectorised in ``n`` (receives an int64 array). In the default
        geometric mode ``|coeff(n)|`` must be non-increasing for
        ``n >= start``; the tail after index K is then bounded by
        ``|coeff(K+1)| r**(K+1) / (1 - r)``.
    ratio_bound : float
        The ratio ``r``. Geometric mode needs ``0 <= r < 1``; alternating
        mode accepts ``r <= 1``.
    start : int
        First index.
    tol : float
        Target bound on the omitted tail.
    alternating : bool
        Terms alternate in sign with non-increasing magnitudes. Summation
        stops at the first K whose omitted-tail bound is below ``tol``.
    order : int
        Only for ``alternating``. With ``order=0`` the tail is the first
        omitted magnitude. With ``order=p >= 1`` the magnitudes must be
        completely monotone up to order ``p + 1`` (true for every coefficient
        family in this package). The remainder after K is then estimated by
        the first ``p`` Euler-transform terms plus the midpoint of the
        enclosure ``[0, b/2**p]`` of what is left, where ``b`` is the p-th
        backward difference of the magnitudes at K+1; the tail is
        ``b / 2**(p+1)`` plus a rounding allowance. ``order=1`` is the
        familiar convexity bound ``(|t_{K+1}| - |t_{K+2}|) / 4``.
    max_terms : int
        Hard cap on the number of summed terms.
    strict : bool
        Raise :class:`ConvergenceError` if the cap prevents reaching ``tol``.
        Otherwise return the (larger) tail actually achieved.

    Returns
    -------
    TailBound
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    r = float(ratio_bound)
    if r < 0:
        raise ValueError("ratio_bound must be >= 0")
    if alternating:
        if r > 1.0:
            raise ConvergenceError(f"alternating series needs ratio <= 1, got {r}")
        if order < 0:
            raise ValueError("order must be >= 0")
        return _sum_alternating(coeff, r, start, tol, order, max_terms, strict)
    if r >= 1.0:
        raise ConvergenceError(f"geometric tail bound needs ratio < 1, got {r}")

    if r == 0.0:
        # only an n = 0 term can survive
        value = float(_coeff_array(coeff, np.array([start]))[0]) if start == 0 else 0.0
        return TailBound(value, 0.0, 1 if start == 0 else 0, nonnegative=False)

    c0 = abs(float(_coeff_array(coeff, np.array([start]))[0]))
    # smallest K with c0 r^(K+1)/(1-r) <= tol (|coeff| non-increasing)
    if c0 == 0.0:
        last = start
    else:
        need = math.log(tol * (1.0 - r) / c0) / math.log(r) - 1.0
        last = max(start, int(math.ceil(need)))
    capped = last - start + 1 > max_terms
    if capped:
        last = start + max_terms - 1

    n = np.arange(start, last + 2, dtype=np.int64)
    c = _coeff_array(coeff, n)
    logs = n * math.log(r)
    terms = c[:-1] * np.exp(logs[:-1])
    tail = abs(c[-1]) * math.exp(logs[-1]) / (1.0 - r)
    if capped and strict and tail > tol:
        raise ConvergenceError(
            f"tail {tail:.3g} exceeds tol {tol:.3g} after {max_terms} terms (ratio {r})"
        )
    nonneg = bool(np.all(c >= 0))
    return TailBound(float(np.sum(terms)), float(tail), int(terms.size), nonnegative=nonneg)


def _sum_alternating(coeff, r, start, tol, order, max_terms, strict):
    p = order
    total = 0.0
    used = 0
    lo = start
    block = 256
    weights = 0.5 ** np.arange(1, p + 1)
    while True:
        hi = min(lo + block, start + max_terms)
        # p + 1 look-ahead terms feed the remainder estimate
        n = np.arange(lo, hi + p + 1, dtype=np.int64)
        c = _coeff_array(coeff, n)
        t = c * np.power(r, n.astype(float)) if r != 1.0 else c.copy()
        mag = np.abs(t)
        m = hi - lo
        # diffs[k][j] = ((-Delta)^k |t|) at index lo + j + 1
        diffs = [mag[1:]]
        for _ in range(p):
            diffs.append(-np.diff(diffs[-1]))
        b = diffs[p][:m]
        if p == 0:
            crit = b
        else:
            crit = b / 2.0 ** (p + 1) + np.finfo(float).eps * 2.0**p * mag[1 : m + 1]
        hits = np.flatnonzero(crit <= tol)
        if hits.size:
            j = int(hits[0])
            total += float(np.sum(t[: j + 1]))
            used += j + 1
            if p:
                est = sum(w * d[j] for w, d in zip(weights, diffs[:p])) + b[j] / 2.0 ** (p + 1)
                total += math.copysign(float(est), t[j + 1])
            return TailBound(total, float(crit[j]), used)
        total += float(np.sum(t[:m]))
        used += m
        if hi >= start + max_terms:
            tail = float(crit[-1]) if crit.size else float("inf")
            if strict:
                raise ConvergenceError(
                    f"alternating tail {tail:.3g} exceeds tol {tol:.3g} after {max_terms} terms"
                )
            return TailBound(total, tail, used)
        lo = hi
        block *= 2


def _li2_series(x: float) -> float:
    # 0 <= x <= 0.5: tail after K terms <= x^(K+1) / ((K+1)^2 (1-x))
    if x == 0.0:
        return 0.0
    terms = []
    k = 1
    p = x
    while True:
        terms.append(p / (k * k))
        nxt = p * x
        if nxt / ((k + 1) ** 2 * (1.0 - x)) <= _LI2_TAIL:
            break
        p = nxt
        k += 1
    return math.fsum(terms)


def li2(x: float) -> float:
    """Real dilogarithm ``sum_{n>=1} x**n / n**2`` for ``-1 <= x <= 1``.

    ``[0, 1/2]`` is summed directly, ``(1/2, 1)`` uses the reflection
    ``Li2(x) + Li2(1-x) = pi^2/6 - log(x) log(1-x)``, and ``[-1, 0)`` is an
    alternating sum.
    """
    x = float(x)
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"li2 is only defined here for |x| <= 1, got {x}")
    if x == 1.0:
        return PI2_6
    if x >= 0.0:
        if x <= 0.5:
            return _li2_series(x)
        y = 1.0 - x
        return PI2_6 - math.log(x) * math.log1p(-x) - _li2_series(y)
    s = sum_geometric_tail(
        lambda n: np.where(n % 2 == 0, 1.0, -1.0) / (n.astype(float) ** 2),
        -x,
        1,
        1e-17,
        alternating=True,
        order=4,
    )
    return s.value
