"""Reference radii for bounded analytic functions in the unit disc.

These are the classical Bohr-Rogosinski radii ``R_N``, ``R'_N`` and the
refined radii ``r_{a0}``, ``r'_{a0}``; they are the closed-form anchors the
harmonic radii are compared against.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .radius import SolverError, bisect

__all__ = [
    "AnalyticVariant",
    "AnalyticRadiusQuery",
    "BracketFailure",
    "rogosinski_RN",
    "rogosinski_RN_prime",
    "refined_r_a0",
    "refined_r_a0_prime",
    "rn_poly",
    "rn_prime_poly",
    "ra0_quadratic",
    "ra0_prime_cubic",
    "evaluate",
]


class BracketFailure(SolverError):
    pass


class AnalyticVariant(enum.Enum):
    R_N = "rn"
    R_N_PRIME = "rn-prime"
    R_A0 = "ra0"
    R_A0_PRIME = "ra0-prime"


@dataclass(frozen=True)
class AnalyticRadiusQuery:
    variant: AnalyticVariant
    N: Optional[int] = None
    a0: Optional[float] = None

    def __post_init__(self):
        v = AnalyticVariant(self.variant)
        object.__setattr__(self, "variant", v)
        needs_n = v in (AnalyticVariant.R_N, AnalyticVariant.R_N_PRIME)
        if needs_n:
            if self.N is None or self.a0 is not None:
                raise ValueError(f"variant {v.value} takes N and no a0")
            if int(self.N) != self.N or self.N < 1:
                raise ValueError(f"N must be an integer >= 1, got {self.N}")
        else:
            if self.a0 is None or self.N is not None:
                raise ValueError(f"variant {v.value} takes a0 and no N")
            _check_a0(self.a0)


def _check_a0(a0: float) -> float:
    a0 = float(a0)
    if not 0.0 <= a0 < 1.0:
        raise ValueError(f"a0 must lie in [0, 1), got {a0}")
    return a0


def rn_poly(N: int, r: float) -> float:
    return 2.0 * (1.0 + r) * r**N - (1.0 - r) ** 2


def rn_prime_poly(N: int, r: float) -> float:
    return (1.0 + r) * r**N - (1.0 - r) ** 2


def ra0_quadratic(a0: float, r: float) -> float:
    """Quadratic whose smaller positive root is ``r_{a0}``.

    Clearing the square root in ``r = 2 / (3 + a + sqrt5 (1 + a))`` gives
    ``(1 - a - a^2) r^2 - (3 + a) r + 1 = 0``.
    """
    return (1.0 - a0 - a0 * a0) * r * r - (3.0 + a0) * r + 1.0


def ra0_prime_cubic(a0: float, r: float) -> float:
    return (1.0 - a0**3) * r**3 - (1.0 + 2.0 * a0) * r * r - 2.0 * r + 1.0


def _root(f, lo, hi, tol):
    lo, hi, _ = bisect(f, lo, hi, tol)
    return lo + 0.5 * (hi - lo)


def rogosinski_RN(N: int, tol: float = 1e-14) -> float:
    """Positive root of ``2(1+r) r^N - (1-r)^2`` in (0, 1)."""
    if int(N) != N or N < 1:
        raise ValueError(f"N must be an integer >= 1, got {N}")
    return _root(lambda r: rn_poly(N, r), 0.0, 1.0, tol)


def rogosinski_RN_prime(N: int, tol: float = 1e-14) -> float:
    """Positive root of ``(1+r) r^N - (1-r)^2`` in (0, 1)."""
    if int(N) != N or N < 1:
        raise ValueError(f"N must be an integer >= 1, got {N}")
    return _root(lambda r: rn_prime_poly(N, r), 0.0, 1.0, tol)


def refined_r_a0(a0: float) -> float:
    a0 = _check_a0(a0)
    return 2.0 / (3.0 + a0 + math.sqrt(5.0) * (1.0 + a0))


def refined_r_a0_prime(a0: float, tol: float = 1e-14) -> float:
    """Unique positive root of the cubic, bracketed in ``(1/3, 1/(2 + a0))``."""
    a0 = _check_a0(a0)
    lo, hi = 1.0 / 3.0, 1.0 / (2.0 + a0)
    if not (ra0_prime_cubic(a0, lo) > 0.0 > ra0_prime_cubic(a0, hi)):
        raise BracketFailure(f"no sign change of the cubic on ({lo}, {hi}) for a0 = {a0}")
    # the cubic decreases through its root; bisect its negation
    return _root(lambda r: -ra0_prime_cubic(a0, r), lo, hi, tol)


def evaluate(query: AnalyticRadiusQuery, tol: float = 1e-14) -> float:
    v = query.variant
    if v is AnalyticVariant.R_N:
        return rogosinski_RN(query.N, tol)
    if v is AnalyticVariant.R_N_PRIME:
        return rogosinski_RN_prime(query.N, tol)
    if v is AnalyticVariant.R_A0:
        return refined_r_a0(query.a0)
    return refined_r_a0_prime(query.a0, tol)
