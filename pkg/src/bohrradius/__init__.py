"""Sharp refined Bohr-Rogosinski radii for three classes of harmonic mappings."""

from .analytic_ref import (
    refined_r_a0,
    refined_r_a0_prime,
    rogosinski_RN,
    rogosinski_RN_prime,
)
from .classes import (
    ClassKind,
    ClassSpec,
    CoefficientSequence,
    coeff_bound,
    distance_lower_bound,
    extremal_sequence,
    growth_upper,
)
from .functional import Convention, FunctionalParams, eval_S, phi, phi_corollary
from .radius import RadiusResult, audit_monotone, solve_radius
from .specfun import TailBound, li2, sum_geometric_tail
from .verify import check_root_and_sharpness, fuzz_admissible, oracle_S_extremal

__version__ = "0.1.0"
