"""Sandwich inequality ``I_f <= I_SLD <= I_f / (2 f(0))`` and its optimality.

Besides checking the inequality on given inputs this module tests the two
scalar reformulations of the upper bound with constant ``k`` (the
mean-domination condition and the pointwise condition on ``f``) and finds
explicit qubit witnesses when ``k`` is below the optimal constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .matrixcore import SIGMA1, DensityMatrix, as_density, matrix_to_json
from .monotone import MonotoneFunction, f_zero, log_grid, tilde
from .qfi import f_information, sld_information, variance
from .report import CheckReport

REL_TOL = 1e-9
VAR_TOL = 1e-10
PURE_TOL = 1e-9
SCALAR_TOL = 1e-12
VIOLATION_FLOOR = 1e-10
MAX_HALVINGS = 60


class NoCounterexampleError(ValueError):
    """Raised for ``k`` at or above the optimal constant ``1/(2 f(0))``."""


class SearchExhaustedError(RuntimeError):
    pass


def optimal_constant(f: MonotoneFunction) -> float:
    fz = f_zero(f)
    if fz <= 0:
        raise ValueError(f"{f.name!r} is not regular")
    return 1.0 / (2.0 * fz)


def condition_grid() -> np.ndarray:
    """201 log-spaced points on ``[1e-4, 1e4]`` plus ``x = 1``."""
    return log_grid(1e-4, 1e4, 201)


@dataclass(frozen=True)
class SandwichReport:
    f_name: str
    i_f: float
    i_sld: float
    upper: float
    left_margin: float
    right_margin: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.left_margin >= -self.tolerance and self.right_margin >= -self.tolerance

    def to_check_report(self, dim: int = 0, seed: int = 0) -> CheckReport:
        margin = min(self.left_margin, self.right_margin)
        return CheckReport(
            check="sandwich",
            f_name=self.f_name,
            dim=dim,
            seed=seed,
            lhs=self.i_f,
            rhs=self.upper,
            margin=margin,
            tolerance=self.tolerance,
            passed=self.passed,
            details={
                "i_sld": self.i_sld,
                "left_margin": self.left_margin,
                "right_margin": self.right_margin,
            },
        )


def check_sandwich(f: MonotoneFunction, rho, A, rel_tol: float = REL_TOL) -> SandwichReport:
    """Evaluate both sides of ``I_f <= I_SLD <= I_f/(2 f(0))``.

    ``I_f`` comes from the variance-minus-correlation path, ``I_SLD`` from
    the SLD operator equation, so the two sides share no formula.
    """
    k = optimal_constant(f)
    rho = as_density(rho)
    i_f = f_information(f, rho, A).value
    i_sld = sld_information(rho, A)
    upper = k * i_f
    return SandwichReport(
        f_name=f.name,
        i_f=i_f,
        i_sld=i_sld,
        upper=upper,
        left_margin=i_sld - i_f,
        right_margin=upper - i_sld,
        tolerance=rel_tol * max(1.0, i_sld),
    )


def check_var_bound(f: MonotoneFunction, rho, A, *, seed: int = 0) -> CheckReport:
    """``I_f <= Var`` up to 1e-10, with equality to 1e-9 required on pure states."""
    rho = as_density(rho)
    i_f = f_information(f, rho, A).value
    var = variance(rho, A)
    details = {"pure": rho.pure}
    tol = VAR_TOL
    margin = var - i_f
    if rho.pure:
        gap = abs(var - i_f)
        details["pure_gap"] = gap
        # pure states demand equality; fold it into the margin
        margin = min(margin, PURE_TOL - gap - tol)
    return CheckReport(
        check="var-bound",
        f_name=f.name,
        dim=rho.dim,
        seed=seed,
        lhs=i_f,
        rhs=var,
        margin=margin,
        tolerance=tol,
        passed=margin >= -tol,
        details=details,
    )


def _min_normalized_gap(lhs: np.ndarray, rhs: np.ndarray) -> tuple[int, float]:
    gap = (rhs - lhs) / np.maximum(1.0, np.abs(rhs))
    i = int(np.argmin(gap))
    return i, float(gap[i])


def scalar_condition_iii(
    f: MonotoneFunction, k: float, grid: Optional[Sequence[float]] = None
) -> CheckReport:
    """Pointwise condition ``f(x) <= 2 k f(0) (1 + x)/2`` on a grid.

    The reported margin is the smallest gap, normalised by ``max(1, rhs)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    fz = f_zero(f)
    if fz <= 0:
        raise ValueError(f"{f.name!r} is not regular")
    x = condition_grid() if grid is None else np.asarray(grid, dtype=float)
    lhs = f(x)
    rhs = 2 * k * fz * (1 + x) / 2
    i, margin = _min_normalized_gap(lhs, rhs)
    return CheckReport(
        check="condition-iii",
        f_name=f.name,
        dim=1,
        seed=0,
        lhs=lhs[i],
        rhs=rhs[i],
        margin=margin,
        tolerance=SCALAR_TOL,
        passed=margin >= -SCALAR_TOL,
        details={"k": k, "argmin_x": float(x[i]), "gap_at_one": 2 * k * fz - float(f(1.0))},
    )


def mean_condition_ii(
    f: MonotoneFunction,
    k: float,
    pairs: Optional[Iterable[tuple[float, float]]] = None,
) -> CheckReport:
    """Mean condition ``m_{f~} <= (1 - 1/k) m_A + (1/k) m_H`` on sampled pairs.

    By default the pairs are ``(1, x)`` for ``x`` on :func:`condition_grid`,
    which by homogeneity of means matches the grid of
    :func:`scalar_condition_iii`.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ft = tilde(f)
    if pairs is None:
        g = condition_grid()
        xs, ys = np.ones_like(g), g
    else:
        arr = np.asarray(list(pairs), dtype=float).reshape(-1, 2)
        xs, ys = arr[:, 0], arr[:, 1]
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("pairs must be strictly positive")
    hi, lo = np.maximum(xs, ys), np.minimum(xs, ys)
    lhs = hi * ft(lo / hi)
    rhs = (1 - 1 / k) * (xs + ys) / 2 + (1 / k) * 2 * xs * ys / (xs + ys)
    i, margin = _min_normalized_gap(lhs, rhs)
    return CheckReport(
        check="condition-ii",
        f_name=f.name,
        dim=1,
        seed=0,
        lhs=lhs[i],
        rhs=rhs[i],
        margin=margin,
        tolerance=SCALAR_TOL,
        passed=margin >= -SCALAR_TOL,
        details={"k": k, "argmin_pair": [float(xs[i]), float(ys[i])]},
    )


def bloch_z_state(r: float) -> DensityMatrix:
    return DensityMatrix(np.diag([(1 + r) / 2, (1 - r) / 2]).astype(complex))


@dataclass(frozen=True)
class CounterexampleRecord:
    """Qubit witness of ``I_SLD > k I_f``."""

    f_name: str
    k: float
    r: float
    rho: DensityMatrix
    observable: np.ndarray
    i_sld: float
    k_times_i_f: float

    @property
    def violation(self) -> float:
        return self.i_sld - self.k_times_i_f

    @property
    def ratio(self) -> float:
        return self.i_sld / (self.k_times_i_f / self.k)

    def revalidate(self, f: MonotoneFunction) -> float:
        """Recompute the violation from the stored state and observable."""
        i_sld = sld_information(self.rho, self.observable)
        i_f = f_information(f, self.rho, self.observable).value
        return i_sld - self.k * i_f

    def to_dict(self) -> dict:
        return {
            "f_name": self.f_name,
            "k": self.k,
            "r": self.r,
            "rho": matrix_to_json(self.rho),
            "observable": matrix_to_json(self.observable),
            "i_sld": self.i_sld,
            "k_times_i_f": self.k_times_i_f,
            "violation": self.violation,
            "ratio": self.ratio,
        }


def _witness(f: MonotoneFunction, k: float, r: float) -> Optional[CounterexampleRecord]:
    rho = bloch_z_state(r)
    i_sld = sld_information(rho, SIGMA1)
    i_f = f_information(f, rho, SIGMA1).value
    if i_f <= 0:
        return None
    rec = CounterexampleRecord(f.name, float(k), float(r), rho, SIGMA1.copy(), i_sld, k * i_f)
    return rec if rec.violation > VIOLATION_FLOOR else None


def search_counterexample(f: MonotoneFunction, k: float) -> CounterexampleRecord:
    """Find ``rho, A`` (2x2) with ``I_SLD(A) > k I_f(A)`` for ``1 <= k < 1/(2 f(0))``.

    Scans ``rho = diag((1+r)/2, (1-r)/2)``, ``A = sigma_1`` with ``r``
    halved from 0.5; the SLD/f ratio tends to ``1/(2 f(0))`` as ``r -> 0``,
    so the scan terminates.  Should the ratio ever decrease along the scan,
    a fine grid over ``(0, 1)`` is searched instead.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    limit = optimal_constant(f)
    if k >= limit:
        raise NoCounterexampleError(
            f"no counterexample exists at or above the optimal constant "
            f"1/(2f(0)) = {limit!r} (k = {k!r})"
        )
    r = 0.5
    prev_ratio = -np.inf
    for _ in range(MAX_HALVINGS + 1):
        rec = _witness(f, k, r)
        if rec is not None:
            return rec
        rho = bloch_z_state(r)
        i_f = f_information(f, rho, SIGMA1).value
        ratio = sld_information(rho, SIGMA1) / i_f if i_f > 0 else -np.inf
        if ratio < prev_ratio:
            break
        prev_ratio = ratio
        r /= 2
    for r in np.linspace(0.999, 0.001, 999):
        rec = _witness(f, k, float(r))
        if rec is not None:
            return rec
    raise SearchExhaustedError(f"no witness found for {f.name!r} at k = {k!r}")
