"""Dense Hermitian linear algebra for small quantum systems.

Everything here works on plain ``numpy`` complex arrays.  The only wrapper
types are :class:`SpectralDecomposition` and :class:`DensityMatrix`, which
carry the eigen-data that every information functional needs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Union

import numpy as np

logger = logging.getLogger(__name__)

HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
NEGATIVE_EIG_ATOL = 1e-12
ZERO_CLAMP = 1e-12
FAITHFUL_THRESHOLD = 1e-9
FAITHFUL_MIXING = 1e-4

JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-12

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)

# stream tags so that ρ, A, U drawn from the same seed are independent
_TAG_DENSITY = 1
_TAG_OBSERVABLE = 2
_TAG_UNITARY = 3
_TAG_PURE = 4


class EigenConvergenceError(RuntimeError):
    """Jacobi iteration hit the sweep cap before the off-diagonal mass vanished."""

    def __init__(self, sweeps: int, residual: float):
        super().__init__(
            f"Jacobi eigensolver did not converge after {sweeps} sweeps "
            f"(off-diagonal Frobenius norm {residual:.3e})"
        )
        self.sweeps = sweeps
        self.residual = residual


class SpectralDecomposition(NamedTuple):
    """Eigenvalues in ascending order and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def to_eigenbasis(self, X: np.ndarray) -> np.ndarray:
        U = self.eigenvectors
        return U.conj().T @ X @ U

    def from_eigenbasis(self, X: np.ndarray) -> np.ndarray:
        U = self.eigenvectors
        return U @ X @ U.conj().T


MatrixLike = Union[np.ndarray, "DensityMatrix"]


def hermitian(M, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate ``M`` as a square Hermitian matrix and return its exact symmetrization."""
    if isinstance(M, DensityMatrix):
        return M.matrix
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    dev = np.max(np.abs(M - M.conj().T))
    if dev > atol:
        raise ValueError(f"matrix is not Hermitian (max |M - M^dagger| = {dev:.3e})")
    return (M + M.conj().T) / 2


def _check_same_dim(*mats: np.ndarray) -> int:
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def _jacobi_rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    apq = A[p, q]
    mag = abs(apq)
    phase = apq / mag
    app, aqq = A[p, p].real, A[q, q].real
    theta = 0.5 * np.arctan2(2 * mag, aqq - app)
    c, s = np.cos(theta), np.sin(theta)
    # unitary acting on columns p, q: phase fix followed by a real Givens rotation
    W = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    A[:, idx] = A[:, idx] @ W
    A[idx, :] = W.conj().T @ A[idx, :]
    A[p, q] = A[q, p] = 0.0
    A[p, p] = A[p, p].real
    A[q, q] = A[q, q].real
    V[:, idx] = V[:, idx] @ W


def eig_hermitian(
    M, max_sweeps: int = JACOBI_MAX_SWEEPS, tol: float = JACOBI_TOL
) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.

    Sweeps over all pairs ``p < q`` until the off-diagonal Frobenius norm
    drops below ``tol * max(1, ||M||_F)``.

    Raises:
        EigenConvergenceError: if ``max_sweeps`` sweeps are not enough.
    """
    A = hermitian(M).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(1.0, np.linalg.norm(A))
    threshold = tol * scale
    # entries this small are below rounding of the diagonal; rotating on them
    # only loses phase accuracy
    negligible = 1e-20 * scale

    def off_norm() -> float:
        return float(np.linalg.norm(A[~np.eye(n, dtype=bool)]))

    sweeps = 0
    off = off_norm()
    while off > threshold:
        if sweeps >= max_sweeps:
            raise EigenConvergenceError(sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) > negligible:
                    _jacobi_rotate(A, V, p, q)
                else:
                    A[p, q] = A[q, p] = 0.0
        sweeps += 1
        off = off_norm()

    evals = np.diag(A).real.copy()
    order = np.argsort(evals, kind="stable")
    return SpectralDecomposition(evals[order], V[:, order])


def commutator(A, B) -> np.ndarray:
    """Return ``AB - BA``."""
    A = np.asarray(A.matrix if isinstance(A, DensityMatrix) else A, dtype=complex)
    B = np.asarray(B.matrix if isinstance(B, DensityMatrix) else B, dtype=complex)
    _check_same_dim(A, B)
    return A @ B - B @ A


def matrix_function(M, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral functional calculus ``U func(Λ) U†``.

    ``M`` may be a Hermitian array, a :class:`DensityMatrix` (its clamped
    spectrum is used) or a precomputed :class:`SpectralDecomposition`.
    """
    if isinstance(M, DensityMatrix):
        spec = M.spectral
    elif isinstance(M, SpectralDecomposition):
        spec = M
    else:
        spec = eig_hermitian(M)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.asarray(func(spec.eigenvalues))
    if not np.all(np.isfinite(vals)):
        bad = spec.eigenvalues[~np.isfinite(vals)]
        raise ValueError(f"function undefined at eigenvalue(s) {bad.tolist()}")
    if np.iscomplexobj(vals) and np.max(np.abs(vals.imag)) > 0:
        raise ValueError("function returned complex values on a Hermitian spectrum")
    U = spec.eigenvectors
    out = (U * vals.real) @ U.conj().T
    return (out + out.conj().T) / 2


def sqrtm_psd(M) -> np.ndarray:
    """Positive square root; eigenvalues in ``[-1e-12, 0)`` are treated as zero."""

    def _sqrt(lam):
        lam = np.where((lam < 0) & (lam >= -NEGATIVE_EIG_ATOL), 0.0, lam)
        return np.sqrt(lam)

    return matrix_function(M, _sqrt)


def center(A, rho: "DensityMatrix") -> np.ndarray:
    """Return ``A - Tr(ρA) I`` so that the centered observable has zero mean in ``ρ``."""
    A = hermitian(A)
    rho = as_density(rho)
    _check_same_dim(A, rho.matrix)
    mean = np.trace(rho.matrix @ A).real
    return A - mean * np.eye(A.shape[0])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Unit-trace positive semidefinite Hermitian matrix with cached spectrum.

    The stored matrix is symmetrized and renormalized to trace one.  The
    cached eigenvalues are clamped: entries of magnitude below ``1e-12`` (and
    admissible negative rounding) become exactly zero.
    """

    matrix: np.ndarray
    trace_atol: float = TRACE_ATOL
    spectral: SpectralDecomposition = field(init=False, repr=False)

    def __post_init__(self):
        M = hermitian(self.matrix)
        tr = np.trace(M).real
        if abs(tr - 1.0) > self.trace_atol:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        M = M / tr
        spec = eig_hermitian(M)
        lam = spec.eigenvalues
        if lam[0] < -NEGATIVE_EIG_ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {lam[0]:.3e}")
        lam = np.where(np.abs(lam) < ZERO_CLAMP, 0.0, lam)
        lam = np.maximum(lam, 0.0)
        M.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "spectral", SpectralDecomposition(lam, spec.eigenvectors))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectral.eigenvalues

    @property
    def faithful(self) -> bool:
        return bool(self.eigenvalues[0] > FAITHFUL_THRESHOLD)

    @property
    def pure(self) -> bool:
        return int(np.count_nonzero(self.eigenvalues)) == 1

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def _rng(seed: int, tag: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.default_rng([tag, seed])


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_density(n: int, seed: int, faithful: bool = False) -> DensityMatrix:
    """Ginibre-ensemble density matrix ``GG†/Tr(GG†)``.

    With ``faithful=True`` the state is mixed with ``I/n`` at weight 1e-4,
    which puts every eigenvalue above ``1e-4/n``.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    G = _ginibre(_rng(seed, _TAG_DENSITY), n)
    rho = G @ G.conj().T
    rho /= np.trace(rho).real
    if faithful:
        rho = (1 - FAITHFUL_MIXING) * rho + FAITHFUL_MIXING * np.eye(n) / n
    return DensityMatrix(rho)


def random_pure(n: int, seed: int) -> DensityMatrix:
    """Projector onto a Haar-random unit vector."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    rng = _rng(seed, _TAG_PURE)
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    psi /= np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()))


def random_observable(n: int, seed: int) -> np.ndarray:
    """Hermitian part of a standard complex Gaussian matrix."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    G = _ginibre(_rng(seed, _TAG_OBSERVABLE), n)
    return (G + G.conj().T) / 2


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar unitary from the phase-corrected QR factorization of a Ginibre matrix."""
    G = _ginibre(_rng(seed, _TAG_UNITARY), n)
    Q, R = np.linalg.qr(G)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def matrix_to_json(M) -> dict:
    M = np.asarray(M.matrix if isinstance(M, DensityMatrix) else M, dtype=complex)
    return {"n": int(M.shape[0]), "re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the ``{"n": int, "re": [[...]], "im": [[...]]}`` row-major literal."""
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((n, n))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix literal: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(f"matrix literal declares n={n} but has shapes {re.shape}, {im.shape}")
    return re + 1j * im
