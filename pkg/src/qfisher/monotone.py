"""Symmetric normalized operator monotone functions.

A :class:`MonotoneFunction` bundles a vectorised evaluator on ``(0, inf)``
with its limit at zero.  Catalog members carry that limit analytically;
user-supplied evaluators fall back on :func:`f_zero`'s numeric limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .matrixcore import eig_hermitian, matrix_function, _rng
from .report import CheckReport

Evaluator = Callable[[np.ndarray], np.ndarray]

TILDE_TAYLOR_RADIUS = 1e-7
F_ZERO_TOL = 1e-9
_TAG_MEMBERSHIP = 11


class LimitError(ArithmeticError):
    """A numeric limit failed to settle."""


@dataclass(frozen=True)
class MonotoneFunction:
    """Element of F_op: ``f(1) = 1``, ``x f(1/x) = f(x)``, operator monotone.

    Attributes:
        name: catalog name (``"wy"``, ``"mix:0.5"``, ...) or a free label.
        eval: vectorised evaluator on strictly positive arrays.
        f_at_zero: ``lim_{x->0} f(x)`` if known in closed form.
        analytic_tilde: closed form of the tilde transform, if known.
    """

    name: str
    eval: Evaluator
    f_at_zero: Optional[float] = None
    analytic_tilde: Optional[Evaluator] = None

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))

    @property
    def regular(self) -> bool:
        return f_zero(self) > 0.0


def _wy(x):
    return ((1 + np.sqrt(x)) / 2) ** 2


def _sld(x):
    return (1 + x) / 2


def _rld(x):
    return 2 * x / (1 + x)


F_WY = MonotoneFunction("wy", _wy, 0.25, np.sqrt)
F_SLD = MonotoneFunction("sld", _sld, 0.5, _rld)
F_RLD = MonotoneFunction("rld", _rld, 0.0)


def mean_family(s: float) -> MonotoneFunction:
    """Convex combination ``(1-s) f_SLD + s f_RLD`` of the arithmetic and harmonic means."""
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {s}")

    def _mix(x):
        return (1 - s) * (1 + x) / 2 + s * 2 * x / (1 + x)

    return MonotoneFunction(f"mix:{s:g}", _mix, (1 - s) / 2)


def catalog() -> list[MonotoneFunction]:
    return [F_WY, F_SLD, F_RLD, mean_family(0.25), mean_family(0.5), mean_family(0.75)]


def regular_catalog() -> list[MonotoneFunction]:
    return [f for f in catalog() if f.regular]


_MIX_RE = re.compile(r"^mix:(.+)$")


def by_name(name: str) -> MonotoneFunction:
    """Look up ``"wy"``, ``"sld"``, ``"rld"`` or ``"mix:<s>"``."""
    key = name.strip().lower()
    fixed = {"wy": F_WY, "sld": F_SLD, "rld": F_RLD}
    if key in fixed:
        return fixed[key]
    m = _MIX_RE.match(key)
    if m:
        try:
            s = float(m.group(1))
        except ValueError:
            raise ValueError(f"bad mixing weight in {name!r}") from None
        return mean_family(s)
    raise ValueError(f"unknown monotone function {name!r}; expected wy, sld, rld or mix:<s>")


def f_zero(f: MonotoneFunction) -> float:
    """Limit of ``f`` at zero.

    Uses the stored value when available.  Otherwise evaluates at
    ``x = 1e-6 ... 1e-12`` and accepts once two successive values differ by
    less than 1e-9; a converged value below that tolerance is reported as 0.
    """
    if f.f_at_zero is not None:
        return float(f.f_at_zero)
    prev = float(f(1e-6))
    for k in range(7, 13):
        cur = float(f(10.0 ** -k))
        if abs(cur - prev) < F_ZERO_TOL:
            return 0.0 if abs(cur) < F_ZERO_TOL else cur
        prev = cur
    raise LimitError(
        f"f(0) for {f.name!r} did not converge: f(1e-11)={prev!r}, f(1e-12)={cur!r}"
    )


def _tilde_formula(f: MonotoneFunction, fz: float) -> Evaluator:
    def _ft(x):
        x = np.asarray(x)
        d = x - 1
        with np.errstate(invalid="ignore", divide="ignore"):
            general = 0.5 * ((x + 1) - d**2 * fz / f.eval(x))
        # second-order Taylor expansion at 1: f~(1) = 1, f~'(1) = 1/2, f~''(1) = -f(0)
        taylor = 1 + d / 2 - fz * d**2 / 2
        return np.where(np.abs(d) < TILDE_TAYLOR_RADIUS, taylor, general)

    return _ft


def tilde(f: MonotoneFunction, analytic: bool = True) -> MonotoneFunction:
    """``f~(x) = ((x+1) - (x-1)^2 f(0)/f(x)) / 2``, a non-regular member of F_op.

    With ``analytic=False`` the closed form stored on ``f`` is ignored and the
    defining formula is evaluated.
    """
    fz = f_zero(f)
    if fz <= 0.0:
        raise ValueError(f"tilde transform needs a regular function; {f.name!r} has f(0)=0")
    if analytic and f.analytic_tilde is not None:
        ev = f.analytic_tilde
    else:
        ev = _tilde_formula(f, fz)
    return MonotoneFunction(f"tilde({f.name})", ev, 0.0)


def derivative_at_one(f: MonotoneFunction, h: float = 1e-5) -> float:
    return float((f(1 + h) - f(1 - h)) / (2 * h))


def tilde_second_derivative(f: MonotoneFunction, h: float = 1e-4) -> float:
    """Central second difference of the defining f~ formula at 1, Richardson-extrapolated once."""
    ft = tilde(f, analytic=False)

    def d2(step):
        return (ft(1 + step) - 2 * ft(1.0) + ft(1 - step)) / step**2

    return float((4 * d2(h / 2) - d2(h)) / 3)


def log_grid(lo: float = 1e-6, hi: float = 1e6, num: int = 201) -> np.ndarray:
    """Log-spaced grid that always contains ``x = 1`` exactly."""
    g = np.logspace(np.log10(lo), np.log10(hi), num)
    return np.unique(np.append(g, 1.0))


def _derivative(f: MonotoneFunction, x: np.ndarray) -> np.ndarray:
    # complex step is exact to rounding for numpy-expressible evaluators
    h = 1e-30 * x
    try:
        with np.errstate(all="ignore"):
            val = np.asarray(f.eval(x + 1j * h))
        if np.iscomplexobj(val) and np.all(np.isfinite(val)) and np.any(val.imag != 0):
            return val.imag / h
    except (TypeError, ValueError):
        pass
    h = 1e-4 * x

    def cd(step):
        return (f(x + step) - f(x - step)) / (2 * step)

    return (4 * cd(h / 2) - cd(h)) / 3


def loewner_matrix(f: MonotoneFunction, points: Sequence[float]) -> np.ndarray:
    """Divided-difference matrix ``[(f(x_i) - f(x_j)) / (x_i - x_j)]`` with ``f'`` on the diagonal."""
    x = np.asarray(points, dtype=float)
    fx = f(x)
    dx = x[:, None] - x[None, :]
    df = fx[:, None] - fx[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        L = df / dx
    L[np.diag_indices_from(L)] = _derivative(f, x)
    return (L + L.T) / 2


def _psd_min_eig(M: np.ndarray) -> float:
    return float(eig_hermitian(M).eigenvalues[0])


def check_membership(
    f: MonotoneFunction,
    grid: Optional[Sequence[float]] = None,
    probe_dim: int = 3,
    seed: int = 0,
    pairs: int = 50,
    subsets: int = 40,
) -> CheckReport:
    """Sampled evidence that ``f`` belongs to F_op.

    Runs four sub-checks and records each under ``details``: normalization
    ``f(1) = 1``, symmetry ``x f(1/x) = f(x)`` on the grid, monotonicity
    ``f(B) - f(A) >= 0`` on random ordered pairs ``0 < A <= B``, and
    positivity of Loewner matrices on grid subsets of size at most six.
    Loewner matrices are congruence-scaled by their diagonal before the
    eigenvalue test so that the tolerance is scale free.

    Passing is evidence, not a proof of operator monotonicity.
    """
    if probe_dim < 2:
        raise ValueError("probe_dim must be at least 2")
    grid = log_grid(1e-3, 1e3, 41) if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise ValueError("grid must be strictly positive")
    rng = _rng(seed, _TAG_MEMBERSHIP)
    checks = {}

    norm_err = abs(float(f(1.0)) - 1.0)
    checks["normalization"] = {"value": norm_err, "tolerance": 1e-12, "pass": norm_err <= 1e-12}

    fx = f(grid)
    sym = np.abs(grid * f(1 / grid) - fx) / np.maximum(np.abs(fx), 1e-300)
    sym_err = float(np.max(sym))
    checks["symmetry"] = {"value": sym_err, "tolerance": 1e-10, "pass": sym_err <= 1e-10}

    worst_pair = np.inf
    for _ in range(pairs):
        G = rng.standard_normal((probe_dim, probe_dim)) + 1j * rng.standard_normal((probe_dim, probe_dim))
        H = rng.standard_normal((probe_dim, probe_dim)) + 1j * rng.standard_normal((probe_dim, probe_dim))
        A = G @ G.conj().T / probe_dim + 1e-3 * np.eye(probe_dim)
        B = A + H @ H.conj().T / probe_dim
        diff = matrix_function(B, f) - matrix_function(A, f)
        worst_pair = min(worst_pair, _psd_min_eig(diff))
    checks["monotone_pairs"] = {"value": worst_pair, "tolerance": 1e-9, "pass": worst_pair >= -1e-9}

    worst_loewner = np.inf
    size = min(6, len(grid))
    for _ in range(subsets):
        pts = np.sort(rng.choice(grid, size=size, replace=False))
        L = loewner_matrix(f, pts)
        d = np.sqrt(np.abs(np.diag(L)))
        if np.any(d == 0):
            worst_loewner = min(worst_loewner, _psd_min_eig(L))
            continue
        worst_loewner = min(worst_loewner, _psd_min_eig(L / np.outer(d, d)))
    checks["loewner"] = {"value": worst_loewner, "tolerance": 1e-9, "pass": worst_loewner >= -1e-9}

    # every sub-check as slack >= 0 so a single margin summarises them
    slacks = [
        1e-12 - norm_err,
        1e-10 - sym_err,
        worst_pair + 1e-9,
        worst_loewner + 1e-9,
    ]
    margin = float(min(slacks))
    return CheckReport(
        check="membership",
        f_name=f.name,
        dim=probe_dim,
        seed=seed,
        lhs=margin,
        rhs=0.0,
        margin=margin,
        tolerance=0.0,
        passed=all(c["pass"] for c in checks.values()),
        details=checks,
    )
