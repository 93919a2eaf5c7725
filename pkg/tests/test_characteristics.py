"""Characteristic number, series fitting, and comparison exponents."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanlab import characteristics as ch
from meanlab import core, families
from meanlab.core import A, G, H, I, L, S, dual, series_coefficients
from meanlab.families import holder, k_mean, power_transform, stolarsky


def test_sigma_identric():
    res = ch.sigma(I)
    assert res.converged
    assert res.method == "direct_limit"
    assert res.value == pytest.approx(2 / math.e, abs=1e-6)


def test_sigma_arithmetic_is_exact():
    res = ch.sigma(A)
    assert res.converged
    assert res.value == pytest.approx(1.0, abs=1e-9)


def test_sigma_gini():
    res = ch.sigma(S)
    assert res.converged
    assert res.value == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("m", [H, G, L], ids=["H", "G", "L"])
def test_logarithmic_rate_means_are_flagged(m):
    # phi -> 0 like 1/log(1/eps); Aitken must refuse to call that converged
    res = ch.sigma(m)
    assert not res.converged
    assert res.value < 0.05


def test_sigma_tail_is_recorded():
    res = ch.sigma(L)
    assert len(res.tail) == len(ch.SIGMA_EPSILONS)
    eps, phis = zip(*res.tail)
    assert eps == ch.SIGMA_EPSILONS
    assert all(p > q for p, q in zip(phis, phis[1:]))  # monotone decay


def test_sigma_rejects_asymmetric_evaluators():
    with pytest.raises(TypeError):
        ch.sigma(families.weighted_holder(0.25, 2))


def test_sigma_closed_registry():
    assert ch.sigma_closed("holder", (2.0,)) == pytest.approx(math.sqrt(2))
    assert ch.sigma_closed("holder", (1.0,)) == 1.0
    assert ch.sigma_closed("stolarsky", (3.0, 3.0)) == pytest.approx(2 * math.exp(-1 / 3))
    assert ch.sigma_closed("kfamily", (0.5,)) == 2.0
    assert ch.sigma_closed("power_transform", (2.0, 1.0)) == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize(
    "family_id,params",
    [
        ("holder", (-1.0,)),
        ("holder", (0.0,)),
        ("stolarsky", (1.0, 2.0)),
        ("stolarsky", (-3.0, -3.0)),
        ("kfamily", (-2.0,)),
        ("power_transform", (-1.0, 1.5)),
    ],
)
def test_sigma_closed_out_of_range(family_id, params):
    with pytest.raises(ch.UnsupportedSigmaError):
        ch.sigma_closed(family_id, params)


def test_sigma_closed_unknown_family():
    with pytest.raises(ch.UnsupportedSigmaError):
        ch.sigma_closed("lehmer", (2.0,))


def test_closed_sigma_walker():
    assert ch.closed_sigma(holder(2)) == pytest.approx(math.sqrt(2))
    assert ch.closed_sigma(stolarsky(3, 3)) == pytest.approx(2 * math.exp(-1 / 3))
    assert ch.closed_sigma(k_mean(2)) == 2.0
    assert ch.closed_sigma(L) is None
    assert ch.closed_sigma(holder(-2)) is None
    assert ch.closed_sigma(stolarsky(1, 2)) is None


def test_closed_sigma_composes_through_power_transform():
    m = power_transform(families.lehmer(2), 3.0)  # no closed base form
    assert ch.closed_sigma(m) is None
    n = power_transform(stolarsky(2, 2), 3.0)
    want = 2.0 ** (2 / 3) * (2 * math.exp(-0.5)) ** (1 / 3)
    assert ch.closed_sigma(n) == pytest.approx(want, rel=1e-12)


def test_closed_sigma_matches_numeric_limit():
    for m in (holder(3), stolarsky(2, 2), k_mean(1.5)):
        numeric = ch.sigma(m)
        assert numeric.converged
        assert ch.closed_sigma(m) == pytest.approx(numeric.value, abs=1e-6)


def test_best_sigma_prefers_closed_form():
    res = ch.best_sigma(holder(2))
    assert res is not None and res.method == "closed_form"
    assert res.value == pytest.approx(math.sqrt(2))
    assert res.tail == ()


def test_best_sigma_numeric_fallback():
    res = ch.best_sigma(I)
    assert res is not None and res.method == "direct_limit"
    assert res.value == pytest.approx(2 / math.e, abs=1e-6)


def test_best_sigma_gives_up_honestly():
    assert ch.best_sigma(L) is None
    assert ch.best_sigma(power_transform(I, 3)) is None or ch.best_sigma(
        power_transform(I, 3)
    ).converged


@settings(max_examples=40, deadline=None)
@given(p=st.integers(-24, 32).map(lambda k: k / 4.0))
def test_sigma_stays_in_range(p):
    res = ch.sigma(stolarsky(p, p + 0.5))
    assert 0.0 <= res.value <= 2.0


def test_phi_series_recovers_exact_coefficients():
    # order-4 fits push the truncation leakage from the next even term
    # below 1e-9 on a1 for every family probed here
    for m in (L, I, S, stolarsky(2, 5), families.lambda_mean(3)):
        fit = ch.phi_series(m, order=4)
        assert fit.ok, (str(m), fit.fit_residual)
        a1, a2 = series_coefficients(m)
        assert fit.coefficients[0] == 1.0
        assert fit.coefficients[1] == pytest.approx(a1, abs=1e-9)
        assert fit.coefficients[2] == pytest.approx(a2, abs=1e-6)


def test_phi_series_evaluate_matches_phi():
    fit = ch.phi_series(L, order=4)
    for t in (0.01, 0.05, 0.1):
        assert fit.evaluate(t) == pytest.approx(core.phi(L, t), abs=1e-10)


def test_phi_series_flags_underfit_window():
    # order-1 fit over a wide window cannot track the quartic term
    fit = ch.phi_series(S, order=1, window=0.5)
    assert not fit.ok
    assert fit.fit_residual > ch.SERIES_RESIDUAL_LIMIT


def test_phi_series_rejects_bad_order():
    with pytest.raises(ValueError):
        ch.phi_series(L, order=0)


def test_phi_series_window_is_recorded():
    fit = ch.phi_series(A, order=2, window=0.25)
    assert fit.fit_window == (-0.25, 0.25)
    assert fit.a1 == pytest.approx(0.0, abs=1e-12)


def test_comparison_exponent_elementary_pairs():
    # the limit is a1(m) - a1(n)
    assert ch.comparison_exponent(L, A) == pytest.approx(-1 / 3, abs=1e-7)
    assert ch.comparison_exponent(I, G) == pytest.approx(1 / 3, abs=1e-7)
    assert ch.comparison_exponent(S, A) == pytest.approx(0.5, abs=1e-7)


def test_comparison_exponent_report_shape():
    rep = ch.comparison_exponent_report(families.gen_log(2), A)
    assert rep.converged
    assert rep.value == pytest.approx((2 - 3) / 6, abs=1e-5)
    assert len(rep.samples) == 7
    ts = [t for t, _ in rep.samples]
    assert ts == sorted(ts, reverse=True)


@settings(max_examples=30, deadline=None)
@given(
    p=st.integers(-20, 20).map(lambda k: k / 4.0),
    q=st.integers(-20, 20).map(lambda k: k / 4.0),
)
def test_comparison_exponent_is_coefficient_difference(p, q):
    m, n = families.lehmer(p), families.lehmer(q)
    want = series_coefficients(m)[0] - series_coefficients(n)[0]
    rep = ch.comparison_exponent_report(m, n)
    assert rep.value == pytest.approx(want, abs=1e-6)


def test_comparison_exponent_of_identical_means_is_zero():
    assert ch.comparison_exponent(A, A) == pytest.approx(0.0, abs=1e-12)


def test_dual_shifts_comparison_exponent():
    # a1(dual m) = -1 - a1(m), so (dual L, dual A) flips around -1
    got = ch.comparison_exponent(dual(L), dual(A))
    assert got == pytest.approx(1 / 3, abs=1e-6)
