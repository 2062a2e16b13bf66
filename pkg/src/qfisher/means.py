"""Kubo-Ando matrix means.

Scalar means ``m_f(x, y) = x f(y/x)``, the full matrix mean of two positive
definite matrices, and the superoperator ``m_f(L_rho, R_rho)`` which acts
entrywise in the eigenbasis of ``rho``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .matrixcore import (
    FAITHFUL_THRESHOLD,
    SpectralDecomposition,
    _check_same_dim,
    as_density,
    eig_hermitian,
    hermitian,
    matrix_function,
)
from .monotone import MonotoneFunction, f_zero

logger = logging.getLogger(__name__)

CONDITION_WARNING = 1e12


class NonFaithfulStateError(ValueError):
    pass


def scalar_mean(f: MonotoneFunction, x: float, y: float) -> float:
    """``m_f(x, y) = x f(y/x)`` for positive reals.

    A zero argument is accepted only for non-regular ``f`` and resolved by
    continuity, ``m_f(0, y) = y f(0) = 0``.

    Examples:
        >>> from qfisher.monotone import F_SLD
        >>> scalar_mean(F_SLD, 1.0, 3.0)
        2.0
    """
    x, y = float(x), float(y)
    if x < 0 or y < 0:
        raise ValueError(f"means are defined for non-negative arguments, got ({x}, {y})")
    if x == 0 or y == 0:
        fz = f_zero(f)
        if fz > 0:
            raise ValueError(f"zero argument needs a non-regular function, {f.name!r} is regular")
        return max(x, y) * fz
    return float(mean_table(f, np.array([x, y]))[0, 1])


def mean_table(f: MonotoneFunction, lam: np.ndarray) -> np.ndarray:
    """Matrix ``[m_f(lam_i, lam_j)]`` for non-negative ``lam``.

    Evaluated as ``hi * f(lo/hi)`` which is exactly symmetric and keeps the
    evaluator on ``(0, 1]``.  Entries with a zero argument take the
    continuity value ``hi * f(0)``.
    """
    lam = np.asarray(lam, dtype=float)
    hi = np.maximum.outer(lam, lam)
    lo = np.minimum.outer(lam, lam)
    out = np.zeros_like(hi)
    pos = lo > 0
    if np.any(pos):
        out[pos] = hi[pos] * f(lo[pos] / hi[pos])
    edge = (lo == 0) & (hi > 0)
    if np.any(edge):
        out[edge] = hi[edge] * f_zero(f)
    return out


def arithmetic_mean(A, B) -> np.ndarray:
    return (hermitian(A) + hermitian(B)) / 2


def harmonic_mean(A, B) -> np.ndarray:
    inv_a = matrix_function(A, lambda t: 1 / t)
    inv_b = matrix_function(B, lambda t: 1 / t)
    return 2 * matrix_function(inv_a + inv_b, lambda t: 1 / t)


def matrix_mean(f: MonotoneFunction, A, B) -> np.ndarray:
    """Kubo-Ando mean ``A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}`` of positive definite matrices."""
    A = hermitian(A)
    B = hermitian(B)
    _check_same_dim(A, B)
    spec_a = eig_hermitian(A)
    if spec_a.eigenvalues[0] <= 0:
        raise ValueError(f"first argument is not positive definite (min eigenvalue {spec_a.eigenvalues[0]:.3e})")
    if eig_hermitian(B).eigenvalues[0] <= 0:
        raise ValueError("second argument is not positive definite")
    cond = spec_a.eigenvalues[-1] / spec_a.eigenvalues[0]
    if cond > CONDITION_WARNING:
        logger.warning("matrix_mean: first argument has condition number %.3e", cond)
    sqrt_a = matrix_function(spec_a, np.sqrt)
    isqrt_a = matrix_function(spec_a, lambda t: 1 / np.sqrt(t))
    inner = isqrt_a @ B @ isqrt_a
    inner = (inner + inner.conj().T) / 2
    out = sqrt_a @ matrix_function(inner, f) @ sqrt_a
    return (out + out.conj().T) / 2


@dataclass(frozen=True)
class MeanOperator:
    """``m_f(L_rho, R_rho)`` with ``L_rho X = rho X`` and ``R_rho X = X rho``."""

    f: MonotoneFunction
    rho_spectral: SpectralDecomposition

    @classmethod
    def of(cls, f: MonotoneFunction, rho) -> "MeanOperator":
        return cls(f, as_density(rho).spectral)

    @property
    def table(self) -> np.ndarray:
        return mean_table(self.f, self.rho_spectral.eigenvalues)

    @property
    def faithful(self) -> bool:
        return bool(self.rho_spectral.eigenvalues[0] > FAITHFUL_THRESHOLD)


def superop_apply(op: MeanOperator, X) -> np.ndarray:
    """``(m_f(L, R) X)_{ij} = m_f(lam_i, lam_j) x_{ij}`` in the eigenbasis of rho."""
    X = np.asarray(X, dtype=complex)
    _check_same_dim(X, op.rho_spectral.eigenvectors)
    spec = op.rho_spectral
    return spec.from_eigenbasis(op.table * spec.to_eigenbasis(X))


def superop_apply_inverse(op: MeanOperator, X) -> np.ndarray:
    """Entrywise division by ``m_f(lam_i, lam_j)``; needs a faithful state."""
    if not op.faithful:
        raise NonFaithfulStateError(
            "m_f(L, R) is not invertible on a non-faithful state; "
            "use the variance-minus-correlation form of the information instead"
        )
    X = np.asarray(X, dtype=complex)
    _check_same_dim(X, op.rho_spectral.eigenvectors)
    spec = op.rho_spectral
    return spec.from_eigenbasis(spec.to_eigenbasis(X) / op.table)
