"""The three harmonic classes: coefficient bounds, growth, distance, extremals."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .specfun import TailBound, sum_geometric_tail

__all__ = [
    "ClassKind",
    "ClassSpec",
    "CoefficientSequence",
    "InvalidSpec",
    "M_MAX",
    "coeff_bound",
    "coeff_bounds",
    "growth_upper",
    "growth_upper_bound",
    "distance_lower_bound",
    "extremal_sequence",
]

LN2 = math.log(2.0)
# upper end of the admissible M range, 1 / (2 (ln 4 - 1))
M_MAX = 1.0 / (2.0 * (math.log(4.0) - 1.0))

# default truncation target for the numerically summed W-class series
SERIES_TOL = 1e-15
# beyond this many terms a W-class sum returns its (larger) actual tail
SERIES_MAX_TERMS = 4_000_000


class InvalidSpec(ValueError):
    pass


class ClassKind(enum.Enum):
    PH0_ALPHA = "ph0-alpha"
    PH0_M = "ph0-m"
    WH0_ALPHA = "wh0-alpha"

    @property
    def param_name(self) -> str:
        return "M" if self is ClassKind.PH0_M else "alpha"


@dataclass(frozen=True)
class ClassSpec:
    kind: ClassKind
    param: float

    def __post_init__(self):
        kind = ClassKind(self.kind)
        object.__setattr__(self, "kind", kind)
        p = float(self.param)
        object.__setattr__(self, "param", p)
        if not math.isfinite(p):
            raise InvalidSpec(f"{kind.param_name} must be finite")
        if kind is ClassKind.PH0_M:
            if not p > 0.0:
                raise InvalidSpec(
                    f"M must satisfy M > 0 (M = 0 collapses the class to f(z) = z); got {p}"
                )
            if not p < M_MAX:
                raise InvalidSpec(f"M must satisfy M < 1/(2(ln 4 - 1)) = {M_MAX:.6f}; got {p}")
        elif not 0.0 <= p < 1.0:
            raise InvalidSpec(f"alpha must satisfy 0 <= alpha < 1; got {p}")

    def __str__(self):
        return f"{self.kind.value}({self.kind.param_name}={self.param:g})"


class CoefficientSequence:
    """Coefficient magnitudes ``|a_n|``, ``|b_n|`` for ``n = 1 .. n_max``.

    Index 0 holds n = 1, which the normalisation fixes at ``(1, 0)``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=None):
        a = np.array(a, dtype=float)
        b = np.zeros_like(a) if b is None else np.array(b, dtype=float)
        if a.ndim != 1 or a.shape != b.shape or a.size == 0:
            raise ValueError("need matching 1-d magnitude arrays with at least the n = 1 entry")
        if a[0] != 1.0 or b[0] != 0.0:
            raise ValueError(f"normalisation requires (a_1, b_1) = (1, 0), got {(a[0], b[0])}")
        if np.any(a < 0) or np.any(b < 0):
            raise ValueError("coefficient magnitudes must be nonnegative")
        self.a = a
        self.b = b

    @classmethod
    def from_pairs(cls, pairs) -> "CoefficientSequence":
        pairs = list(pairs)
        return cls([p[0] for p in pairs], [p[1] for p in pairs])

    @property
    def pairs(self) -> list:
        return list(zip(self.a.tolist(), self.b.tolist()))

    @property
    def n_max(self) -> int:
        return self.a.size

    def sums(self) -> np.ndarray:
        """``|a_n| + |b_n|``, index 0 being n = 1."""
        return self.a + self.b

    def is_admissible(self, spec: ClassSpec, rtol: float = 1e-12) -> bool:
        if self.n_max < 2:
            return True
        bound = coeff_bounds(spec, np.arange(2, self.n_max + 1))
        return bool(np.all(self.sums()[1:] <= bound * (1.0 + rtol)))

    def __repr__(self):
        return f"CoefficientSequence(n_max={self.n_max})"


def coeff_bounds(spec: ClassSpec, n) -> np.ndarray:
    """Vectorised :func:`coeff_bound`; no domain check on ``n``."""
    n = np.asarray(n, dtype=float)
    p = spec.param
    if spec.kind is ClassKind.PH0_ALPHA:
        return 2.0 * (1.0 - p) / n
    if spec.kind is ClassKind.PH0_M:
        return 2.0 * p / (n * (n - 1.0))
    return 2.0 / (p * n * n + (1.0 - p) * n)


def coeff_bound(spec: ClassSpec, n: int) -> float:
    """Sharp bound on ``|a_n| + |b_n|`` for ``n >= 2``."""
    if int(n) != n or n < 2:
        raise ValueError(f"coefficient bounds start at n = 2, got {n}")
    return float(coeff_bounds(spec, n))


def growth_upper_bound(
    spec: ClassSpec, r: float, tol: float = SERIES_TOL, *, strict: bool = False
) -> TailBound:
    """Upper growth envelope ``r + sum_{n>=2} coeff_bound(n) r^n`` with its error.

    Closed forms for the two P-classes (tail 0); the W class is summed.
    """
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise ValueError(f"growth bound needs 0 <= r < 1, got {r}")
    p = spec.param
    if spec.kind is ClassKind.PH0_ALPHA:
        return TailBound(r - 2.0 * (1.0 - p) * (r + math.log1p(-r)), 0.0, 0, nonnegative=True)
    if spec.kind is ClassKind.PH0_M:
        return TailBound(r + 2.0 * p * (r + (1.0 - r) * math.log1p(-r)), 0.0, 0, nonnegative=True)
    if r == 0.0:
        return TailBound(0.0, 0.0, 0, nonnegative=True)
    s = sum_geometric_tail(
        lambda n: coeff_bounds(spec, n),
        r,
        2,
        tol,
        max_terms=SERIES_MAX_TERMS,
        strict=strict,
    )
    return TailBound(r + s.value, s.tail, s.terms_used + 1, nonnegative=True)


def growth_upper(spec: ClassSpec, r: float) -> float:
    """Sharp upper bound for ``|f(z)|`` on ``|z| = r``."""
    return growth_upper_bound(spec, r).value


def distance_lower_bound(spec: ClassSpec) -> float:
    """Lower bound for the distance from ``f(0)`` to the boundary of ``f(D)``.

    Attained by the extremal function of the class.
    """
    p = spec.param
    if spec.kind is ClassKind.PH0_ALPHA:
        return 1.0 + 2.0 * (1.0 - p) * (LN2 - 1.0)
    if spec.kind is ClassKind.PH0_M:
        return 1.0 + 2.0 * p * (1.0 - 2.0 * LN2)
    return _w_distance(p)


@functools.lru_cache(maxsize=256)
def _w_distance(alpha: float) -> float:
    s = sum_geometric_tail(
        lambda n: np.where(n % 2 == 1, 2.0, -2.0) / (alpha * n * n + (1.0 - alpha) * n),
        1.0,
        2,
        1e-15,
        alternating=True,
        order=3,
    )
    return 1.0 + s.value


def extremal_sequence(spec: ClassSpec, n_max: int) -> CoefficientSequence:
    """Coefficients of the class extremal function, attaining every bound."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = np.empty(n_max)
    a[0] = 1.0
    a[1:] = coeff_bounds(spec, np.arange(2, n_max + 1))
    return CoefficientSequence(a)
