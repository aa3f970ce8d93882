"""Sharp radius as the zero of Phi on (0, 1), by bracketed bisection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classes import ClassSpec
from .functional import Convention, FunctionalParams, phi

__all__ = [
    "SolverError",
    "NoSignChange",
    "NonMonotoneDetected",
    "InvalidProblem",
    "RadiusResult",
    "bisect",
    "solve_radius",
    "audit_monotone",
    "R_CAP",
]

R_CAP = 1.0 - 1e-12
MAX_ITER = 200


class SolverError(RuntimeError):
    pass


class NoSignChange(SolverError):
    pass


class NonMonotoneDetected(SolverError):
    pass


class InvalidProblem(SolverError):
    pass


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    bracket_lo: float
    bracket_hi: float
    iterations: int
    residual: float


def bisect(
    f: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int = MAX_ITER
) -> tuple[float, float, int]:
    """Shrink a bracket with ``f(lo) < 0 <= f(hi)`` to width ``<= 2 tol``.

    Returns ``(lo, hi, iterations)``. Stops early if the midpoint no longer
    separates the endpoints in binary64.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    it = 0
    while hi - lo > 2.0 * tol and it < max_iter:
        mid = lo + 0.5 * (hi - lo)
        if not lo < mid < hi:
            break
        it += 1
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return lo, hi, it


def solve_radius(
    spec: ClassSpec,
    params: FunctionalParams,
    conv: Convention = Convention.EXACT_A1,
    tol: float = 1e-12,
    *,
    audit: bool = False,
    grid_size: int = 64,
) -> RadiusResult:
    """Unique zero of ``phi(spec, params, conv, .)`` in (0, 1), to within ``tol``.

    With ``audit=True`` the monotonicity of Phi is sampled first and
    :class:`NonMonotoneDetected` raised if it fails.
    """
    if not 0.0 < tol <= 1e-3:
        raise ValueError(f"tol must lie in (0, 1e-3], got {tol}")
    conv = Convention(conv)

    def f(r):
        return phi(spec, params, conv, r)

    if audit and not audit_monotone(spec, params, conv, grid_size):
        raise NonMonotoneDetected(f"Phi is not increasing on the sample grid for {spec}, {params}")

    f0 = f(0.0)
    if not f0 < 0.0:
        raise InvalidProblem(f"Phi(0) = {f0} is not negative for {spec}, {params}")

    lo, hi = 0.0, 0.5
    while f(hi) < 0.0:
        if hi >= R_CAP:
            raise NoSignChange(f"Phi stays negative up to r = {R_CAP} for {spec}, {params}")
        lo = hi
        hi = min(1.0 - 0.5 * (1.0 - hi), R_CAP)

    lo, hi, it = bisect(f, lo, hi, tol)
    radius = lo + 0.5 * (hi - lo)
    return RadiusResult(radius, lo, hi, it, abs(f(radius)))


def audit_monotone(
    spec: ClassSpec,
    params: FunctionalParams,
    conv: Convention = Convention.EXACT_A1,
    grid_size: int = 64,
) -> bool:
    """True iff Phi strictly increases across a uniform grid in (0, 1 - 1e-6).

    A sampled check, not a proof.
    """
    if grid_size < 16:
        raise ValueError(f"grid_size must be >= 16, got {grid_size}")
    grid = np.linspace(0.0, 1.0 - 1e-6, grid_size + 1)[1:]
    vals = np.array([phi(spec, params, conv, r) for r in grid])
    return bool(np.all(np.isfinite(vals)) and np.all(np.diff(vals) > 0.0))
