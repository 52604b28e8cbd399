"""Alpha-concave stochastic orders: exact checks, a refutation oracle and applied solvers."""

__version__ = "0.1.0"

from .distribution import (  # noqa: E402
    Atom,
    Distribution,
    DomainError,
    IntervalBounds,
    Segment,
    cdf,
    cdf_double_integral,
    cdf_integral,
    expectation,
    mixture,
    partial_moment,
    product_hinge_moment,
    second_moment,
)
from .functions import HingePowerFunction, SmoothUtility, integrate, sample  # noqa: E402
from .oracle import check_alpha, elasticity_check, oracle_dominance, prudence_ratio_check  # noqa: E402
from .orders import (  # noqa: E402
    OrderParams,
    OrderVerdict,
    Outcome,
    PreconditionError,
    check_fosd,
    check_n_sufficient,
    check_sosd,
    check_two_concave_necessary,
    check_two_point,
    check_two_sufficient,
    check_uniform_pair,
    shrink_support,
)

__all__ = [
    "Atom",
    "Distribution",
    "DomainError",
    "HingePowerFunction",
    "IntervalBounds",
    "OrderParams",
    "OrderVerdict",
    "Outcome",
    "PreconditionError",
    "Segment",
    "SmoothUtility",
    "cdf",
    "cdf_double_integral",
    "cdf_integral",
    "check_alpha",
    "check_fosd",
    "check_n_sufficient",
    "check_sosd",
    "check_two_concave_necessary",
    "check_two_point",
    "check_two_sufficient",
    "check_uniform_pair",
    "elasticity_check",
    "expectation",
    "integrate",
    "mixture",
    "oracle_dominance",
    "partial_moment",
    "product_hinge_moment",
    "prudence_ratio_check",
    "sample",
    "second_moment",
    "shrink_support",
]
