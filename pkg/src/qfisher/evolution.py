"""Unitary evolution ``rho_H(t) = exp(-itH) rho exp(itH)`` and the checks built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .matrixcore import (
    DensityMatrix,
    SpectralDecomposition,
    _check_same_dim,
    _rng,
    as_density,
    commutator,
    eig_hermitian,
    hermitian,
    random_observable,
)
from .monotone import MonotoneFunction
from .qfi import f_information, metric_norm_sq
from .report import CheckReport

REL_TOL = 1e-9
COMMUTATION_TOL = 1e-12
UNITARY_TOL = 1e-10
_TAG_POLY = 21


@dataclass(frozen=True)
class EvolutionSpec:
    rho0: DensityMatrix
    H: np.ndarray
    times: np.ndarray
    H_spectral: SpectralDecomposition = field(init=False, repr=False)

    def __post_init__(self):
        rho0 = as_density(self.rho0)
        H = hermitian(self.H)
        _check_same_dim(rho0.matrix, H)
        times = np.atleast_1d(np.asarray(self.times, dtype=float))
        if not np.all(np.isfinite(times)):
            raise ValueError("evolution times must be finite")
        if np.any(np.diff(times) < 0):
            raise ValueError("evolution times must be sorted ascending")
        object.__setattr__(self, "rho0", rho0)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "H_spectral", eig_hermitian(H))


def propagator(spec: EvolutionSpec, t: float) -> np.ndarray:
    """``exp(-itH)`` by spectral calculus."""
    V = spec.H_spectral.eigenvectors
    return (V * np.exp(-1j * t * spec.H_spectral.eigenvalues)) @ V.conj().T


def evolve(spec: EvolutionSpec, t: float) -> DensityMatrix:
    U = propagator(spec, t)
    return DensityMatrix(U @ spec.rho0.matrix @ U.conj().T, trace_atol=1e-10)


def commutes(A, H, rtol: float = COMMUTATION_TOL) -> tuple[bool, float]:
    """Whether ``||[A, H]||_F <= rtol * max(1, ||A||_F ||H||_F)``; also returns the norm."""
    A, H = hermitian(A), hermitian(H)
    norm = float(np.linalg.norm(commutator(A, H)))
    scale = max(1.0, float(np.linalg.norm(A) * np.linalg.norm(H)))
    return norm <= rtol * scale, norm


def constancy_check(
    f: MonotoneFunction, spec: EvolutionSpec, A, *, rel_tol: float = REL_TOL, seed: int = 0
) -> CheckReport:
    """Drift of ``I^f_{rho_H(t)}(A)`` over ``spec.times`` relative to ``t = 0``.

    The information is constant when ``[A, H] = 0``.  If the commutator is
    not negligible the check still runs, and ``details["hypothesis"]`` reads
    ``"violated"``.
    """
    A = hermitian(A)
    ok, comm = commutes(A, spec.H)
    i0 = f_information(f, spec.rho0, A).value
    series = [f_information(f, evolve(spec, t), A).value for t in spec.times]
    drifts = [abs(v - i0) for v in series]
    max_drift = max(drifts) if drifts else 0.0
    tol = rel_tol * max(1.0, i0)
    return CheckReport(
        check="constancy",
        f_name=f.name,
        dim=A.shape[0],
        seed=seed,
        lhs=max_drift,
        rhs=0.0,
        margin=-max_drift,
        tolerance=tol,
        passed=max_drift <= tol,
        details={
            "hypothesis": "holds" if ok else "violated",
            "commutator_norm": comm,
            "i0": i0,
            "times": spec.times.tolist(),
            "values": series,
        },
    )


def is_unitary(U, atol: float = UNITARY_TOL) -> bool:
    U = np.asarray(U, dtype=complex)
    return U.ndim == 2 and U.shape[0] == U.shape[1] and bool(
        np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])) <= atol
    )


def unitary_covariance_check(
    f: MonotoneFunction, rho, A, U, *, rel_tol: float = REL_TOL, seed: int = 0
) -> CheckReport:
    """Compare ``||U* A U||^2`` at ``U* rho U`` with ``||A||^2`` at ``rho``."""
    if not is_unitary(U):
        raise ValueError("U is not unitary to within 1e-10")
    rho = as_density(rho)
    A = hermitian(A)
    U = np.asarray(U, dtype=complex)
    base = metric_norm_sq(f, rho, A)
    moved_rho = DensityMatrix(U.conj().T @ rho.matrix @ U, trace_atol=1e-10)
    moved = metric_norm_sq(f, moved_rho, U.conj().T @ A @ U)
    diff = abs(moved - base)
    tol = rel_tol * max(1.0, base)
    return CheckReport(
        check="covariance",
        f_name=f.name,
        dim=rho.dim,
        seed=seed,
        lhs=moved,
        rhs=base,
        margin=-diff,
        tolerance=tol,
        passed=diff <= tol,
        details={"abs_diff": diff},
    )


def _poly(K: np.ndarray, coeffs: Sequence[float]) -> np.ndarray:
    out = np.zeros_like(K)
    P = np.eye(K.shape[0], dtype=complex)
    for c in coeffs:
        out = out + c * P
        P = P @ K
    return (out + out.conj().T) / 2


def commuting_pair(n: int, seed: int, degree: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Observables ``p(K)``, ``q(K)`` of one random Hermitian ``K``; they commute up to rounding."""
    K = random_observable(n, seed)
    rng = _rng(seed, _TAG_POLY)
    p = rng.standard_normal(degree + 1)
    q = rng.standard_normal(degree + 1)
    return _poly(K, p), _poly(K, q)
