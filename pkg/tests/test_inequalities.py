import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfisher.inequalities import (
    NoCounterexampleError,
    bloch_z_state,
    check_sandwich,
    check_var_bound,
    mean_condition_ii,
    optimal_constant,
    scalar_condition_iii,
    search_counterexample,
)
from qfisher.matrixcore import SIGMA1, SIGMA3, random_density, random_observable, random_pure
from qfisher.monotone import F_RLD, F_SLD, F_WY, mean_family, regular_catalog


def test_optimal_constants():
    assert optimal_constant(F_WY) == 2
    assert optimal_constant(F_SLD) == 1
    assert optimal_constant(mean_family(0.5)) == 2
    with pytest.raises(ValueError):
        optimal_constant(F_RLD)


def test_sandwich_qubit(rho_z06):
    rep = check_sandwich(F_WY, rho_z06, SIGMA1)
    assert (rep.i_f, rep.i_sld, rep.upper) == pytest.approx((0.2, 0.36, 0.4), abs=1e-12)
    assert rep.passed and rep.to_check_report().passed


def test_sandwich_sld_tight():
    rho, A = random_density(3, 5), random_observable(3, 5)
    rep = check_sandwich(F_SLD, rho, A)
    assert abs(rep.left_margin) <= 1e-12 and abs(rep.right_margin) <= 1e-12


def test_sandwich_commuting(rho_z06):
    rep = check_sandwich(F_WY, rho_z06, SIGMA3)
    assert max(abs(rep.i_f), abs(rep.i_sld), abs(rep.upper)) <= 1e-15 and rep.passed


def test_sandwich_rejects_non_regular(rho_z06):
    with pytest.raises(ValueError):
        check_sandwich(F_RLD, rho_z06, SIGMA1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_sandwich_random(seed, n):
    rho, A = random_density(n, seed), random_observable(n, seed)
    for f in regular_catalog():
        assert check_sandwich(f, rho, A).passed


def test_var_bound(rho_pure, rho_mixed):
    rep = check_var_bound(F_WY, rho_pure, SIGMA1)
    assert rep.passed and rep.lhs == pytest.approx(1) and rep.rhs == pytest.approx(1)
    assert rep.details["pure"]
    rep = check_var_bound(F_WY, rho_mixed, SIGMA3)
    assert rep.passed and rep.lhs == pytest.approx(0, abs=1e-15) and rep.rhs == pytest.approx(1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_var_bound_pure_equality(seed, n):
    rep = check_var_bound(mean_family(0.3), random_pure(n, seed), random_observable(n, seed))
    assert rep.passed and rep.details["pure_gap"] <= 1e-9


def test_condition_iii():
    assert scalar_condition_iii(F_WY, 2).passed
    rep = scalar_condition_iii(F_WY, 1.9)
    assert not rep.passed
    assert rep.details["gap_at_one"] == pytest.approx(-0.05, abs=1e-15)
    for f in regular_catalog():
        rep = scalar_condition_iii(f, optimal_constant(f))
        assert rep.passed and rep.details["gap_at_one"] == pytest.approx(0, abs=1e-15)
    with pytest.raises(ValueError):
        scalar_condition_iii(F_WY, 0.5)


def test_condition_ii():
    assert mean_condition_ii(F_WY, 2).passed
    rep = mean_condition_ii(F_WY, 1, pairs=[(0.4, 1.6)])
    assert not rep.passed
    assert rep.lhs == pytest.approx(0.8) and rep.rhs == pytest.approx(0.64)
    rep = mean_condition_ii(mean_family(0.4), 1.3, pairs=[(2.0, 2.0)])
    assert rep.lhs == pytest.approx(2.0) and rep.margin == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("f", regular_catalog(), ids=lambda f: f.name)
def test_conditions_agree(f):
    # (ii) and (iii) hold for the same k
    k_opt = optimal_constant(f)
    for k in (1.0, 1.2, 0.9 * k_opt, k_opt):
        if not 1 <= k <= k_opt:
            continue
        assert mean_condition_ii(f, k).passed == scalar_condition_iii(f, k).passed


def test_search_wy():
    rec = search_counterexample(F_WY, 1.9)
    assert rec.r <= 0.436 and rec.violation > 1e-10
    assert rec.revalidate(F_WY) == pytest.approx(rec.violation, abs=1e-14)
    assert rec.ratio == pytest.approx(1 + math.sqrt(1 - rec.r**2), abs=1e-12)
    d = rec.to_dict()
    assert d["rho"]["n"] == 2 and d["violation"] > 0


def test_search_ratio_formula():
    rho = bloch_z_state(0.3)
    from qfisher.qfi import f_information, sld_information

    ratio = sld_information(rho, SIGMA1) / f_information(F_WY, rho, SIGMA1).value
    assert ratio == pytest.approx(1 + math.sqrt(0.91), abs=1e-10)


def test_search_k_one():
    rec = search_counterexample(F_WY, 1.0)
    assert rec.ratio > 1


def test_search_at_optimum():
    with pytest.raises(NoCounterexampleError, match="no counterexample exists"):
        search_counterexample(F_WY, 2.0)
    with pytest.raises(NoCounterexampleError):
        search_counterexample(F_SLD, 1.0)
    with pytest.raises(ValueError):
        search_counterexample(F_WY, 0.9)


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75])
def test_search_mix(s):
    f = mean_family(s)
    rec = search_counterexample(f, 0.95 * optimal_constant(f))
    assert rec.revalidate(f) > 1e-10
    assert np.array_equal(rec.observable, SIGMA1)
