"""Component-level versus system-level redundancy for k-out-of-n systems.

The package compares the two redundancy allocations under the stochastic
precedence order three ways: coupled Monte Carlo (:mod:`redlab.precedence`),
exact enumeration over finite supports (:mod:`redlab.oracle`) and an
exhaustive replay of the binary state-vector argument
(:mod:`redlab.statespace`).
"""

__version__ = "0.1.0"

from redlab.errors import (
    BudgetError,
    DimensionError,
    DomainError,
    InvalidAssignmentError,
    RedlabError,
    UnsupportedScenarioError,
    ValidationError,
)
from redlab.distributions import (
    DiscreteFinite,
    Exponential,
    PointMass,
    RandomStream,
    Uniform,
    Weibull,
    quantile,
    sample,
)
from redlab.systems import Mode, Realization, Scenario, SystemSpec, evaluate_pair

__all__ = [
    "__version__",
    "BudgetError",
    "DimensionError",
    "DomainError",
    "InvalidAssignmentError",
    "RedlabError",
    "UnsupportedScenarioError",
    "ValidationError",
    "DiscreteFinite",
    "Exponential",
    "PointMass",
    "RandomStream",
    "Uniform",
    "Weibull",
    "quantile",
    "sample",
    "Mode",
    "Realization",
    "Scenario",
    "SystemSpec",
    "evaluate_pair",
]
