import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfisher.monotone import (
    F_RLD,
    F_SLD,
    F_WY,
    LimitError,
    MonotoneFunction,
    by_name,
    catalog,
    check_membership,
    derivative_at_one,
    f_zero,
    log_grid,
    loewner_matrix,
    mean_family,
    regular_catalog,
    tilde,
    tilde_second_derivative,
)

GRID = log_grid(1e-4, 1e4, 201)


def test_catalog_f_zero():
    assert f_zero(F_WY) == 0.25
    assert f_zero(F_SLD) == 0.5
    assert f_zero(F_RLD) == 0.0 and not F_RLD.regular
    assert [f.name for f in catalog()][:3] == ["wy", "sld", "rld"]
    assert all(f.regular for f in regular_catalog())


def test_mean_family_endpoints():
    np.testing.assert_allclose(mean_family(0)(GRID), F_SLD(GRID), rtol=1e-15)
    np.testing.assert_allclose(mean_family(1)(GRID), F_RLD(GRID), rtol=1e-15)
    half = mean_family(0.5)
    assert half(1.0) == pytest.approx(1.0, abs=1e-15)
    assert f_zero(half) == 0.25
    with pytest.raises(ValueError):
        mean_family(1.5)


def test_f_zero_numeric():
    # strip the stored limit so the numeric path runs
    f = mean_family(0.8)
    bare = MonotoneFunction("bare", f.eval)
    assert f_zero(bare) == pytest.approx(0.1, abs=1e-8)
    assert f_zero(MonotoneFunction("r", F_RLD.eval)) == 0.0


def test_f_zero_divergent():
    with pytest.raises(LimitError, match="1e-"):
        f_zero(MonotoneFunction("osc", lambda x: 1 + np.sin(1 / x)))


def test_by_name():
    assert by_name("wy") is F_WY
    assert by_name("mix:0.25").name == "mix:0.25"
    for bad in ["foo", "mix:2", "mix:x", ""]:
        with pytest.raises(ValueError):
            by_name(bad)


def test_tilde_closed_forms():
    assert tilde(F_WY)(4.0) == pytest.approx(2.0, rel=1e-14)
    generic_wy = tilde(F_WY, analytic=False)
    np.testing.assert_allclose(generic_wy(GRID), np.sqrt(GRID), rtol=1e-10, atol=1e-10)
    generic_sld = tilde(F_SLD, analytic=False)
    np.testing.assert_allclose(generic_sld(GRID), 2 * GRID / (1 + GRID), rtol=1e-10, atol=1e-10)
    # ½(5 - 9·0.25/2.25) from the raw formula
    assert generic_wy(4.0) == pytest.approx(0.5 * (5 - 9 * 0.25 / 2.25), rel=1e-14)


def test_tilde_requires_regular():
    with pytest.raises(ValueError):
        tilde(F_RLD)


@pytest.mark.parametrize("f", regular_catalog(), ids=lambda f: f.name)
def test_tilde_fixes_one(f):
    assert tilde(f)(1.0) == pytest.approx(1.0, abs=1e-15)
    assert f_zero(tilde(f)) == 0.0


@given(st.floats(min_value=1 - 1e-6, max_value=1 + 1e-6))
def test_tilde_continuous_near_one(x):
    ft = tilde(mean_family(0.3), analytic=False)
    assert abs(float(ft(x)) - 1) <= 2e-6


@pytest.mark.parametrize("f", regular_catalog(), ids=lambda f: f.name)
def test_derivatives_at_one(f):
    assert tilde_second_derivative(f) == pytest.approx(-f_zero(f), abs=1e-6)
    assert derivative_at_one(f) == pytest.approx(0.5, abs=1e-8)


def test_tilde_second_derivative_examples():
    assert tilde_second_derivative(F_WY) == pytest.approx(-0.25, abs=1e-6)
    assert tilde_second_derivative(F_SLD) == pytest.approx(-0.5, abs=1e-6)
    assert tilde_second_derivative(mean_family(0.5)) == pytest.approx(-0.25, abs=1e-6)


def test_log_grid_has_one():
    g = log_grid(1e-3, 1e3, 40)
    assert 1.0 in g and np.all(np.diff(g) > 0)


def test_loewner_affine_constant():
    L = loewner_matrix(F_SLD, [0.1, 1.0, 3.0, 7.0])
    np.testing.assert_allclose(L, 0.5, atol=1e-12)


@pytest.mark.parametrize("f", catalog(), ids=lambda f: f.name)
def test_membership_catalog(f):
    assert check_membership(f).passed


@pytest.mark.parametrize("f", regular_catalog(), ids=lambda f: f.name)
def test_membership_tilde(f):
    assert check_membership(tilde(f)).passed


def test_membership_sld_loewner():
    rep = check_membership(F_SLD)
    assert rep.details["loewner"]["value"] >= -1e-12


def test_membership_rejects_square():
    rep = check_membership(MonotoneFunction("sq", lambda x: x**2))
    assert not rep.passed
    assert not rep.details["monotone_pairs"]["pass"]
    assert not rep.details["loewner"]["pass"]
