"""Quantum Fisher information, Kubo-Ando matrix means and metric-adjusted skew information."""

from .bloch import BlochVector, ratio_limit_one, ratio_limit_zero, sld_ratio, state_from_bloch
from .evolution import EvolutionSpec, constancy_check, evolve, unitary_covariance_check
from .inequalities import (
    CounterexampleRecord,
    NoCounterexampleError,
    SearchExhaustedError,
    check_sandwich,
    check_var_bound,
    mean_condition_ii,
    optimal_constant,
    scalar_condition_iii,
    search_counterexample,
)
from .matrixcore import (
    DensityMatrix,
    EigenConvergenceError,
    SpectralDecomposition,
    eig_hermitian,
    matrix_function,
    random_density,
    random_observable,
    random_pure,
    random_unitary,
)
from .means import MeanOperator, NonFaithfulStateError, matrix_mean, scalar_mean
from .monotone import F_RLD, F_SLD, F_WY, MonotoneFunction, by_name, catalog, mean_family, tilde
from .qfi import f_information, sld_information, wy_information_direct
from .report import CheckReport

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "CheckReport",
    "CounterexampleRecord",
    "DensityMatrix",
    "EigenConvergenceError",
    "EvolutionSpec",
    "F_RLD",
    "F_SLD",
    "F_WY",
    "MeanOperator",
    "MonotoneFunction",
    "NoCounterexampleError",
    "NonFaithfulStateError",
    "SearchExhaustedError",
    "SpectralDecomposition",
    "by_name",
    "catalog",
    "check_sandwich",
    "check_var_bound",
    "constancy_check",
    "eig_hermitian",
    "evolve",
    "f_information",
    "matrix_function",
    "matrix_mean",
    "mean_condition_ii",
    "mean_family",
    "optimal_constant",
    "random_density",
    "random_observable",
    "random_pure",
    "random_unitary",
    "ratio_limit_one",
    "ratio_limit_zero",
    "scalar_condition_iii",
    "scalar_mean",
    "search_counterexample",
    "sld_information",
    "sld_ratio",
    "state_from_bloch",
    "tilde",
    "unitary_covariance_check",
    "wy_information_direct",
]
