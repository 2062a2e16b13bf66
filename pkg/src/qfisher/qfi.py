"""Monotone metrics and metric-adjusted skew information.

The f-information ``I^f_rho(A)`` is available by two routes that share no
code past the eigendecomposition of rho:

* ``metric``: ``f(0)/2 * ||i[rho, A]||^2_{rho,f}``, faithful states only;
* ``variance_minus_C``: ``Var_rho(A) - C^{f~}_rho(A_0)``, any state.

The Wigner-Yanase and SLD informations also have direct matrix formulas,
:func:`wy_information_direct` and :func:`sld_information`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .matrixcore import (
    DensityMatrix,
    _check_same_dim,
    as_density,
    center,
    commutator,
    hermitian,
    sqrtm_psd,
)
from .means import MeanOperator, NonFaithfulStateError, superop_apply, superop_apply_inverse
from .monotone import F_SLD, F_WY, MonotoneFunction, f_zero, tilde

logger = logging.getLogger(__name__)

NEGATIVE_TOL = 1e-10
SLD_KERNEL_THRESHOLD = 1e-12


class InformationConsistencyError(ArithmeticError):
    """An information value came out clearly negative."""


class Path(str, Enum):
    METRIC = "metric"
    VARIANCE_MINUS_C = "variance_minus_C"
    DIRECT = "direct"


@dataclass(frozen=True)
class InformationResult:
    f_name: str
    value: float
    path: Path
    rho_faithful: bool
    # set when the value is in [-1e-10, 0): rounding, not an error
    flagged: bool = False

    def __float__(self) -> float:
        return self.value


def _prepare(rho, *mats):
    rho = as_density(rho)
    out = [hermitian(m) for m in mats]
    _check_same_dim(rho.matrix, *out)
    return (rho, *out)


def _checked(f_name: str, value: float, path: Path, rho: DensityMatrix) -> InformationResult:
    value = float(value)
    if value < -NEGATIVE_TOL:
        raise InformationConsistencyError(
            f"{path.value} information for {f_name!r} is {value:.3e}, below -{NEGATIVE_TOL:g}"
        )
    flagged = value < 0
    if flagged:
        logger.debug("%s information for %s is slightly negative: %.3e", path.value, f_name, value)
    return InformationResult(f_name, value, path, rho.faithful, flagged)


def variance(rho, A) -> float:
    """``Tr(rho A^2) - Tr(rho A)^2``."""
    rho, A = _prepare(rho, A)
    R = rho.matrix
    m = np.trace(R @ A).real
    return float(np.trace(R @ A @ A).real - m * m)


def covariance(rho, A, B) -> float:
    """``Tr(rho A B) - Tr(rho A) Tr(rho B)`` (real part; equals the variance when ``A = B``)."""
    rho, A, B = _prepare(rho, A, B)
    R = rho.matrix
    return float(np.trace(R @ A @ B).real - np.trace(R @ A).real * np.trace(R @ B).real)


def variance_spectral(rho, A) -> float:
    """``1/2 sum_ij (lam_i + lam_j) |a_ij|^2`` with ``a`` the centered ``A`` in rho's eigenbasis."""
    rho, A = _prepare(rho, A)
    a = rho.spectral.to_eigenbasis(center(A, rho))
    lam = rho.eigenvalues
    return float(0.5 * np.sum((lam[:, None] + lam[None, :]) * np.abs(a) ** 2))


def metric_inner(f: MonotoneFunction, rho, A, B) -> float:
    """Monotone metric ``Tr(A m_f(L_rho, R_rho)^{-1}(B))`` on a faithful state."""
    rho, A, B = _prepare(rho, A, B)
    op = MeanOperator.of(f, rho)
    return float(np.trace(A @ superop_apply_inverse(op, B)).real)


def metric_norm_sq(f: MonotoneFunction, rho, A) -> float:
    return metric_inner(f, rho, A, A)


def correlation_C(g: MonotoneFunction, rho, A) -> float:
    """``C^g_rho(A_0) = Tr(m_g(L_rho, R_rho)(A_0) A_0)``; defined for every state."""
    rho, A = _prepare(rho, A)
    A0 = center(A, rho)
    op = MeanOperator.of(g, rho)
    return float(np.trace(superop_apply(op, A0) @ A0).real)


def tangent(rho, A) -> np.ndarray:
    """``i[rho, A]``, the velocity of rho under the flow generated by ``A``."""
    rho, A = _prepare(rho, A)
    X = 1j * commutator(rho.matrix, A)
    return (X + X.conj().T) / 2


def f_information(
    f: MonotoneFunction, rho, A, path: Path | str = Path.VARIANCE_MINUS_C
) -> InformationResult:
    """Metric-adjusted skew information of ``A`` in ``rho``.

    ``path="direct"`` is accepted only for the Wigner-Yanase and SLD
    functions, which have their own closed matrix formulas.

    Raises:
        ValueError: ``f`` is not regular, or the direct path is unavailable.
        NonFaithfulStateError: metric path on a non-faithful state.
    """
    path = Path(path)
    fz = f_zero(f)
    if fz <= 0:
        raise ValueError(f"f-information needs a regular function; {f.name!r} has f(0)=0")
    rho, A = _prepare(rho, A)
    if path is Path.METRIC:
        if not rho.faithful:
            raise NonFaithfulStateError("metric path requires a faithful state")
        X = tangent(rho, A)
        value = fz / 2 * metric_inner(f, rho, X, X)
    elif path is Path.VARIANCE_MINUS_C:
        value = variance(rho, A) - correlation_C(tilde(f), rho, A)
    else:
        if f.name == F_WY.name:
            value = wy_information_direct(rho, A)
        elif f.name == F_SLD.name:
            value = sld_information(rho, A)
        else:
            raise ValueError(f"no direct formula for {f.name!r}")
    return _checked(f.name, value, path, rho)


def wy_information_direct(rho, A) -> float:
    """Wigner-Yanase skew information ``-1/2 Tr([rho^{1/2}, A]^2)``."""
    rho, A = _prepare(rho, A)
    K = commutator(sqrtm_psd(rho), A)
    return float(-0.5 * np.trace(K @ K).real)


def sld_solve(rho, A) -> np.ndarray:
    """Hermitian ``L`` with ``L rho + rho L = 2i[rho, A]``.

    In the eigenbasis of rho ``L_ij = 2i (lam_i - lam_j) a_ij / (lam_i + lam_j)``;
    entries where ``lam_i + lam_j <= 1e-12`` are set to zero (the minimal
    norm solution, since the right-hand side vanishes there too).
    """
    rho, A = _prepare(rho, A)
    lam = rho.eigenvalues
    a = rho.spectral.to_eigenbasis(A)
    num = 2j * (lam[:, None] - lam[None, :]) * a
    den = lam[:, None] + lam[None, :]
    keep = den > SLD_KERNEL_THRESHOLD
    L = np.zeros_like(a)
    L[keep] = num[keep] / den[keep]
    L = rho.spectral.from_eigenbasis(L)
    return (L + L.conj().T) / 2


def sld_residual(rho, A, L) -> float:
    rho, A = _prepare(rho, A)
    R = rho.matrix
    return float(np.linalg.norm(L @ R + R @ L - 2j * commutator(R, A)))


def sld_information(rho, A) -> float:
    """``1/4 Tr(rho L^2)`` with ``L`` from :func:`sld_solve`."""
    rho, A = _prepare(rho, A)
    L = sld_solve(rho, A)
    return float(0.25 * np.trace(rho.matrix @ L @ L).real)
