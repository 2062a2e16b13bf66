"""Qubit closed forms on the Bloch ball.

For ``rho = (I + x s1 + y s2 + z s3)/2`` with radius ``r`` the f-information
of ``A`` is ``[1 - m_{f~}(1-r, 1+r)] |a_12|^2``, where ``a_12`` is the
off-diagonal entry of ``A`` in the eigenbasis of rho.  Dividing the SLD
value by it gives a ratio that depends on ``r`` alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrixcore import IDENTITY2, PAULI, DensityMatrix, hermitian
from .means import scalar_mean
from .monotone import LimitError, MonotoneFunction, f_zero, tilde

RADIUS_ATOL = 1e-12
# below this radius 1 - m_{f~}(1-r, 1+r) is evaluated in cancellation-free form
STABLE_GAP_RADIUS = 1e-2


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.r > 1 + RADIUS_ATOL:
            raise ValueError(f"Bloch vector has length {self.r!r} > 1")

    @property
    def r(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    @property
    def eigenvalues(self) -> tuple[float, float]:
        r = min(self.r, 1.0)
        return (1 - r) / 2, (1 + r) / 2


def state_from_bloch(v: BlochVector) -> DensityMatrix:
    """``(I + x s1 + y s2 + z s3) / 2``."""
    M = 0.5 * (IDENTITY2 + v.x * PAULI[0] + v.y * PAULI[1] + v.z * PAULI[2])
    return DensityMatrix(M)


def bloch_eigenbasis(v: BlochVector) -> np.ndarray:
    """Unitary whose columns are eigenvectors for ``(1-r)/2`` then ``(1+r)/2``.

    Built from the polar angles of the Bloch vector; the identity when
    ``r = 0``.
    """
    r = v.r
    if r == 0:
        return IDENTITY2.copy()
    # atan2 keeps the polar angle accurate near the poles, where acos does not
    theta = math.atan2(math.hypot(v.x, v.y), v.z)
    phi = math.atan2(v.y, v.x)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    up = np.array([c, e * s])
    down = np.array([-s * e.conjugate(), c])
    return np.column_stack([down, up])


def tilde_gap(f: MonotoneFunction, r: float) -> float:
    """``1 - m_{f~}(1-r, 1+r)``.

    Equal to ``2 r^2 f(0) / m_f(1-r, 1+r)``; that form is used for small
    ``r`` where the direct difference loses all significant digits.
    """
    if r < STABLE_GAP_RADIUS:
        return 2 * r * r * f_zero(f) / scalar_mean(f, 1 - r, 1 + r)
    return 1.0 - scalar_mean(tilde(f), 1 - r, 1 + r)


def bloch_f_information(f: MonotoneFunction, v: BlochVector, A) -> float:
    """``[1 - m_{f~}(1-r, 1+r)] |a_12|^2``."""
    A = hermitian(A)
    if A.shape != (2, 2):
        raise ValueError("Bloch formulas need a 2x2 observable")
    U = bloch_eigenbasis(v)
    a12 = (U.conj().T @ A @ U)[0, 1]
    r = min(v.r, 1.0)
    if r == 0:
        return 0.0
    return tilde_gap(f, r) * abs(a12) ** 2


def sld_ratio(f: MonotoneFunction, r: float) -> float:
    """``I_SLD / I_f = r^2 / (1 - m_{f~}(1-r, 1+r))`` for ``0 < r < 1``."""
    if not 0 < r < 1:
        raise ValueError(f"radius must lie in (0, 1), got {r!r}")
    return r * r / tilde_gap(f, r)


def _neville_at_zero(t: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Diagonal of the Neville table for polynomial extrapolation to ``t = 0``."""
    P = list(values.astype(float))
    diag = [P[-1]]
    n = len(P)
    for level in range(1, n):
        P = [
            (t[i + level] * P[i] - t[i] * P[i + 1]) / (t[i + level] - t[i])
            for i in range(n - level)
        ]
        diag.append(P[-1])
    return np.array(diag)


def ratio_limit_zero(f: MonotoneFunction, tol: float = 1e-7) -> float:
    """``lim_{r->0}`` of :func:`sld_ratio`, which should equal ``1/(2 f(0))``.

    Samples ``r = 1e-2 ... 1e-6`` and Richardson-extrapolates in ``r^2``
    (the ratio is even in ``r``).
    """
    r = 10.0 ** -np.arange(2, 7)
    vals = np.array([sld_ratio(f, x) for x in r])
    est = _neville_at_zero(r**2, vals)
    if abs(est[-1] - est[-2]) > tol:
        raise LimitError(f"ratio limit at r=0 unsettled: {est[-2]!r} vs {est[-1]!r}")
    return float(est[-1])


def ratio_limit_one(f: MonotoneFunction, tol: float = 1e-5) -> float:
    """``lim_{r->1}`` of :func:`sld_ratio`; equals 1 since ``f~(0) = 0``.

    Samples ``r = 1 - 10^-k`` for ``k = 2 ... 6`` and extrapolates
    polynomially in ``sqrt(1 - r)``, which covers both the ``sqrt`` and the
    linear approach seen across the catalog.
    """
    eps = 10.0 ** -np.arange(2, 7)
    vals = np.array([sld_ratio(f, 1 - e) for e in eps])
    est = _neville_at_zero(np.sqrt(eps), vals)
    if abs(est[-1] - est[-2]) > tol:
        raise LimitError(f"ratio limit at r=1 unsettled: {est[-2]!r} vs {est[-1]!r}")
    return float(est[-1])
