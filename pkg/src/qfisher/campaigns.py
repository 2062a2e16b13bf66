"""Seeded randomized verification campaigns.

Trial ``i`` of a campaign started at ``seed`` draws everything from seed
``seed + i``, so campaigns can be split across workers by seed range and
merged in trial order.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional

import numpy as np

from .evolution import EvolutionSpec, commuting_pair, constancy_check, unitary_covariance_check
from .inequalities import check_sandwich, check_var_bound
from .matrixcore import (
    _rng,
    eig_hermitian,
    random_density,
    random_observable,
    random_pure,
    random_unitary,
)
from .means import arithmetic_mean, harmonic_mean, matrix_mean, mean_table
from .monotone import MonotoneFunction, check_membership
from .qfi import f_information, sld_residual, sld_solve
from .report import CheckReport

SUITES = ("sandwich", "var-bound", "means", "membership", "covariance", "constancy", "two-path")
CONSTANCY_TIMES = np.linspace(0.0, 2 * np.pi, 11)
SCALAR_PAIRS_PER_TRIAL = 100
_TAG_MEANS = 31


def _sandwich(f, n, seed, tol):
    rho = random_density(n, seed)
    A = random_observable(n, seed)
    rep = check_sandwich(f, rho, A, **({"rel_tol": tol} if tol is not None else {}))
    return rep.to_check_report(dim=n, seed=seed)


def _var_bound(f, n, seed, tol):
    # odd trials use pure states, where equality is required
    rho = random_pure(n, seed) if seed % 2 else random_density(n, seed)
    return check_var_bound(f, rho, random_observable(n, seed), seed=seed)


def _means(f, n, seed, tol):
    rng = _rng(seed, _TAG_MEANS)
    x = np.exp(rng.uniform(-8, 8, SCALAR_PAIRS_PER_TRIAL))
    y = np.exp(rng.uniform(-8, 8, SCALAR_PAIRS_PER_TRIAL))
    m = np.array([mean_table(f, np.array([a, b]))[0, 1] for a, b in zip(x, y)])
    harm = 2 * x * y / (x + y)
    arith = (x + y) / 2
    scale = np.maximum(1.0, arith)
    scalar_gap = float(min(np.min((m - harm) / scale), np.min((arith - m) / scale)))

    # commuting pair: shared eigenbasis, independent positive spectra
    U = eig_hermitian(random_observable(n, seed)).eigenvectors
    a = np.exp(rng.uniform(-3, 3, n))
    b = np.exp(rng.uniform(-3, 3, n))
    A = (U * a) @ U.conj().T
    B = (U * b) @ U.conj().T
    M = matrix_mean(f, A, B)
    lower = eig_hermitian(M - harmonic_mean(A, B)).eigenvalues[0]
    upper = eig_hermitian(arithmetic_mean(A, B) - M).eigenvalues[0]
    matrix_gap = float(min(lower, upper))

    scalar_tol = 1e-12 if tol is None else tol
    matrix_tol = 1e-9 if tol is None else tol
    margin = min(scalar_gap + scalar_tol, matrix_gap + matrix_tol)
    return CheckReport(
        check="means",
        f_name=f.name,
        dim=n,
        seed=seed,
        lhs=margin,
        rhs=0.0,
        margin=margin,
        tolerance=0.0,
        passed=margin >= 0,
        details={
            "scalar_min_gap": scalar_gap,
            "scalar_tolerance": scalar_tol,
            "matrix_min_eig": matrix_gap,
            "matrix_tolerance": matrix_tol,
        },
    )


def _membership(f, n, seed, tol):
    return check_membership(f, probe_dim=n, seed=seed)


def _covariance(f, n, seed, tol):
    rho = random_density(n, seed, faithful=True)
    kw = {"rel_tol": tol} if tol is not None else {}
    return unitary_covariance_check(
        f, rho, random_observable(n, seed), random_unitary(n, seed), seed=seed, **kw
    )


def _constancy(f, n, seed, tol):
    A, H = commuting_pair(n, seed)
    spec = EvolutionSpec(random_density(n, seed), H, CONSTANCY_TIMES)
    kw = {"rel_tol": tol} if tol is not None else {}
    return constancy_check(f, spec, A, seed=seed, **kw)


def _two_path(f, n, seed, tol):
    rho = random_density(n, seed, faithful=True)
    A = random_observable(n, seed)
    metric = f_information(f, rho, A, "metric").value
    varpath = f_information(f, rho, A, "variance_minus_C").value
    residual = sld_residual(rho, A, sld_solve(rho, A))
    rel = 1e-9 if tol is None else tol
    diff = abs(metric - varpath)
    agree_tol = rel * max(1.0, varpath)
    margin = min(agree_tol - diff, 1e-9 - residual)
    return CheckReport(
        check="two-path",
        f_name=f.name,
        dim=n,
        seed=seed,
        lhs=metric,
        rhs=varpath,
        margin=margin,
        tolerance=0.0,
        passed=margin >= 0,
        details={"abs_diff": diff, "agreement_tolerance": agree_tol, "sld_residual": residual},
    )


_RUNNERS: dict[str, Callable[[MonotoneFunction, int, int, Optional[float]], CheckReport]] = {
    "sandwich": _sandwich,
    "var-bound": _var_bound,
    "means": _means,
    "membership": _membership,
    "covariance": _covariance,
    "constancy": _constancy,
    "two-path": _two_path,
}


def iter_suite(
    suite: str,
    f: MonotoneFunction,
    n: int,
    trials: int,
    seed: int = 0,
    tol: Optional[float] = None,
) -> Iterator[CheckReport]:
    """Yield one report per trial, trial ``i`` seeded with ``seed + i``."""
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if n < 2:
        raise ValueError("dimension must be at least 2")
    runner = _RUNNERS[suite]
    for i in range(trials):
        yield runner(f, n, seed + i, tol)


def run_suite(suite, f, n, trials, seed=0, tol=None) -> list[CheckReport]:
    return list(iter_suite(suite, f, n, trials, seed, tol))
