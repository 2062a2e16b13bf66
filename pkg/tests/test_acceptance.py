"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline, or
``python3 tests/test_acceptance.py`` for just the summary.
"""

from __future__ import annotations

import io
import math
import sys
import time

import numpy as np
import pytest

from qfisher import campaigns
from qfisher.bloch import BlochVector, bloch_f_information, ratio_limit_one, ratio_limit_zero, sld_ratio
from qfisher.cli import main as cli_main
from qfisher.evolution import EvolutionSpec, commuting_pair, constancy_check, unitary_covariance_check
from qfisher.inequalities import (
    bloch_z_state,
    check_var_bound,
    optimal_constant,
    search_counterexample,
)
from qfisher.matrixcore import (
    SIGMA1,
    random_density,
    random_observable,
    random_pure,
    random_unitary,
)
from qfisher.monotone import (
    F_SLD,
    F_WY,
    by_name,
    catalog,
    derivative_at_one,
    f_zero,
    log_grid,
    regular_catalog,
    tilde,
    tilde_second_derivative,
)
from qfisher.qfi import f_information, sld_information, wy_information_direct

SANDWICH_F = ["wy", "mix:0.25", "mix:0.5", "mix:0.75"]
SANDWICH_N = [2, 3, 4, 6]
CONSTANCY_TIMES = np.linspace(0.0, 2 * np.pi, 11)

_sandwich_cache: dict = {}


def _sandwich_campaign():
    """Run the full sandwich campaign once; criteria 1 and 2 share it."""
    if not _sandwich_cache:
        t0 = time.perf_counter()
        failures = {}
        worst = math.inf
        for name in SANDWICH_F:
            f = by_name(name)
            for n in SANDWICH_N:
                for rep in campaigns.iter_suite("sandwich", f, n, 500, seed=0, tol=1e-9):
                    worst = min(worst, rep.margin + rep.tolerance)
                    if not rep.passed:
                        failures.setdefault(name, []).append((n, rep.seed))
        _sandwich_cache.update(elapsed=time.perf_counter() - t0, failures=failures, worst=worst)
    return _sandwich_cache


def criterion_1():
    c = _sandwich_campaign()
    ok = not c["failures"] and c["elapsed"] < 60
    return ok, f"8000 cases, {sum(map(len, c['failures'].values()))} failures, {c['elapsed']:.1f}s"


def criterion_2():
    c = _sandwich_campaign()
    k = optimal_constant(F_WY)
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(["search-k", "--f", "wy", "--k", "2"], out=out, err=err)
    ok = k == 2.0 and "wy" not in c["failures"] and code == 1
    return ok, f"1/(2f(0)) = {k!r}, wy campaign clean, search-k --k 2 exit {code}"


def criterion_3():
    notes = []
    ok = True
    for name in ("wy", "mix:0.25", "mix:0.5", "mix:0.75"):
        f = by_name(name)
        k = 0.95 * optimal_constant(f)
        rec = search_counterexample(f, k)
        violation = rec.revalidate(f)
        ok &= rec.rho.dim == 2 and violation > 1e-10
        notes.append(f"{name}: r={rec.r:g} excess={violation:.2e}")
    rec = search_counterexample(F_WY, 1.9)
    ok &= rec.r <= 0.436 and rec.revalidate(F_WY) > 1e-10
    rho = bloch_z_state(0.3)
    ratio = sld_information(rho, SIGMA1) / f_information(F_WY, rho, SIGMA1).value
    err = abs(ratio - (1 + math.sqrt(0.91)))
    ok &= err <= 1e-10
    notes.append(f"wy k=1.9 r={rec.r:g}, ratio(0.3) err={err:.1e}")
    return ok, "; ".join(notes)


def criterion_4():
    expected = {"wy": 2.0, "sld": 1.0, "mix:0.5": 2.0}
    worst0 = worst1 = 0.0
    for f in regular_catalog():
        target = expected.get(f.name, 1 / (2 * f_zero(f)))
        worst0 = max(worst0, abs(ratio_limit_zero(f) - target))
        worst1 = max(worst1, abs(ratio_limit_one(f) - 1))
    return worst0 <= 1e-5 and worst1 <= 1e-4, f"max err r->0 {worst0:.1e}, r->1 {worst1:.1e}"


def criterion_5():
    v = BlochVector(0.0, 0.0, 0.6)
    rho = bloch_z_state(0.6)
    wy = {
        "direct": wy_information_direct(rho, SIGMA1),
        "metric": f_information(F_WY, rho, SIGMA1, "metric").value,
        "variance": f_information(F_WY, rho, SIGMA1, "variance_minus_C").value,
        "bloch": bloch_f_information(F_WY, v, SIGMA1),
    }
    sld = {
        "solve": sld_information(rho, SIGMA1),
        "metric": f_information(F_SLD, rho, SIGMA1, "metric").value,
        "variance": f_information(F_SLD, rho, SIGMA1, "variance_minus_C").value,
        "bloch": bloch_f_information(F_SLD, v, SIGMA1),
    }
    ratios = [sld_ratio(F_WY, 0.6), sld["solve"] / wy["direct"]]
    analytic = max(
        max(abs(x - 0.2) for x in wy.values()),
        max(abs(x - 0.36) for x in sld.values()),
        max(abs(x - 1.8) for x in ratios),
    )
    spread = max(max(wy.values()) - min(wy.values()), max(sld.values()) - min(sld.values()))
    return analytic <= 1e-10 and spread <= 1e-9, f"analytic err {analytic:.1e}, four-way spread {spread:.1e}"


def criterion_6():
    fs = regular_catalog()
    rng = np.random.default_rng(6)
    worst = -math.inf
    failures = 0
    for i in range(500):
        f = fs[i % len(fs)]
        n = int(rng.integers(2, 6))
        rep = check_var_bound(f, random_density(n, i), random_observable(n, i), seed=i)
        worst = max(worst, rep.lhs - rep.rhs)
        failures += rep.lhs > rep.rhs + 1e-10
    pure_gap = 0.0
    for i in range(100):
        n = 2 + i % 2
        f = fs[i % len(fs)]
        rho, A = random_pure(n, i), random_observable(n, i)
        pure_gap = max(pure_gap, abs(f_information(f, rho, A).value - check_var_bound(f, rho, A).rhs))
    ok = failures == 0 and pure_gap <= 1e-9
    return ok, f"max I_f - Var {worst:.1e}, max pure gap {pure_gap:.1e}"


def criterion_7():
    worst = 0.0
    ok = True
    for f in regular_catalog():
        for n in (2, 3, 4):
            for seed in range(50):
                A, H = commuting_pair(n, seed)
                spec = EvolutionSpec(random_density(n, seed), H, CONSTANCY_TIMES)
                rep = constancy_check(f, spec, A, rel_tol=1e-9, seed=seed)
                ok &= rep.passed and rep.details["hypothesis"] == "holds"
                worst = max(worst, rep.lhs / max(1.0, rep.details["i0"]))
    return ok, f"max relative drift {worst:.1e}"


def criterion_8():
    worst = 0.0
    ok = True
    for f in catalog():
        for n in (2, 3, 4):
            for seed in range(50):
                rho = random_density(n, seed, faithful=True)
                rep = unitary_covariance_check(
                    f, rho, random_observable(n, seed), random_unitary(n, seed), rel_tol=1e-9, seed=seed
                )
                ok &= rep.passed
                worst = max(worst, rep.details["abs_diff"] / max(1.0, rep.rhs))
    return ok, f"max relative difference {worst:.1e}"


def criterion_9():
    ok = True
    scalar = matrix = math.inf
    for f in catalog():
        # 100 trials x 100 scalar pairs, one commuting matrix pair per trial
        for rep in campaigns.iter_suite("means", f, 3, 100, seed=0):
            ok &= rep.passed
            scalar = min(scalar, rep.details["scalar_min_gap"])
            matrix = min(matrix, rep.details["matrix_min_eig"])
    return ok, f"min scalar gap {scalar:.1e}, min PSD eigenvalue {matrix:.1e}"


def criterion_10():
    grid = log_grid(1e-4, 1e4, 201)
    wy = np.max(np.abs(tilde(F_WY, analytic=False)(grid) - np.sqrt(grid)))
    sld = np.max(np.abs(tilde(F_SLD, analytic=False)(grid) - 2 * grid / (1 + grid)))
    second = max(abs(tilde_second_derivative(f) + f_zero(f)) for f in regular_catalog())
    first = max(abs(derivative_at_one(f) - 0.5) for f in regular_catalog())
    ok = wy <= 1e-10 and sld <= 1e-10 and second <= 1e-6 and first <= 1e-8
    return ok, f"tilde wy {wy:.1e}, sld {sld:.1e}; f~''(1) {second:.1e}; f'(1) {first:.1e}"


def criterion_11():
    ok = True
    agree = resid = 0.0
    for f in regular_catalog():
        for n in (2, 3, 4, 5):
            for rep in campaigns.iter_suite("two-path", f, n, 50, seed=1000 * n, tol=1e-9):
                ok &= rep.passed
                agree = max(agree, rep.details["abs_diff"] / max(1.0, rep.rhs))
                resid = max(resid, rep.details["sld_residual"])
    return ok, f"max relative disagreement {agree:.1e}, max SLD residual {resid:.1e}"


CRITERIA = [
    (1, "sandwich campaign", criterion_1),
    (2, "Wigner-Yanase constant 2", criterion_2),
    (3, "optimality witnesses", criterion_3),
    (4, "Bloch limits", criterion_4),
    (5, "closed-form qubit, four-way", criterion_5),
    (6, "variance bound and pure equality", criterion_6),
    (7, "constancy under commuting flow", criterion_7),
    (8, "unitary covariance", criterion_8),
    (9, "mean sandwich", criterion_9),
    (10, "tilde identities", criterion_10),
    (11, "two-path equivalence", criterion_11),
]


def _line(num, title, ok, note):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {title}: {note}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, note = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, note))
    assert ok, note


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, note = fn()
        results.append(ok)
        print(_line(num, title, ok, note), flush=True)
    sys.exit(0 if all(results) else 1)
