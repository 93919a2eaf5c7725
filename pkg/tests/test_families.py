"""Property-based tests for the parametric families.

These lean on identities that hold exactly in real arithmetic (dualities,
parameter symmetries, sandwich inequalities) and check them in floating
point with small explicit slack.

Parameters for the order properties are drawn from a quarter-integer grid:
inside the narrow bands around removable singularities (within ~1e-4 of
s = 0 for Hölder, say) the kernels trade relative accuracy for the limit
value, so ulp-level comparisons there would test conditioning, not order.
The continuity of that routing is pinned by its own explicit tests below.
"""

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from meanlab import core, families
from meanlab.core import DomainError, MeanDescriptor, dual, phi, value
from meanlab.families import (
    ParameterError, gen_log, holder, k_mean, lambda_mean, lehmer,
    power_transform, stolarsky, weighted_holder,
)

# strictly inside the open interval, away from neither endpoint
ts = st.floats(min_value=1e-6, max_value=1.0 - 1e-9)


def quarters(lo: float, hi: float):
    return st.integers(int(lo * 4), int(hi * 4)).map(lambda k: k / 4.0)


qparams = quarters(-8, 8)
qsteps = quarters(0.25, 4)  # strictly positive increments

# the extreme point t = 1 - 1e-7 is deliberately absent: homogeneity
# compares evaluations at independently rounded pairs, and d(phi)/du blows
# up like 1/(1-u^2), so no kernel can hold 1e-12 there
AXIOM_GRID = (1e-5, 0.01, 0.3, 0.9)


def _rel_close(x, y, rtol):
    return abs(x - y) <= rtol * max(abs(x), abs(y))


@settings(max_examples=40)
@given(p=qparams)
@pytest.mark.parametrize(
    "make", [holder, lehmer, gen_log, lambda_mean], ids=["holder", "lehmer", "genlog", "lambda"]
)
def test_one_parameter_members_are_means(make, p):
    report = core.validate_mean(make(p), AXIOM_GRID)
    assert report.passed, report


@settings(max_examples=60)
@given(r=qparams, s=qparams)
def test_stolarsky_members_are_means(r, s):
    report = core.validate_mean(stolarsky(r, s), AXIOM_GRID)
    assert report.passed, report


@settings(max_examples=40)
@given(r=quarters(-0.75, 8))
def test_k_members_are_means(r):
    report = core.validate_mean(k_mean(r), AXIOM_GRID)
    assert report.passed, report


@settings(max_examples=40)
@given(s=quarters(0.25, 6))
def test_power_transforms_are_means(s):
    report = core.validate_mean(power_transform(core.I, s), AXIOM_GRID)
    assert report.passed, report


@given(t=ts, p=qparams)
def test_raw_double_dual_is_identity(t, p):
    m = stolarsky(p, 2.0)
    # build the nested descriptor by hand so dual() cannot collapse it
    dd = MeanDescriptor("dual", base=MeanDescriptor("dual", base=m))
    assert _rel_close(phi(dd, t), phi(m, t), 1e-14)


@given(r=st.floats(-8, 8), s=st.floats(-8, 8))
def test_stolarsky_is_symmetric_in_parameters(r, s):
    assert stolarsky(r, s) == stolarsky(s, r)


@given(t=ts, s=st.floats(min_value=0.01, max_value=8.0))
def test_stolarsky_diagonal_dual_product(t, s):
    # I_{s,s} * I_{-s,-s} = a*b, i.e. phi_s * phi_{-s} = (1-t)(1+t)
    prod = phi(stolarsky(s, s), t) * phi(stolarsky(-s, -s), t)
    assert _rel_close(prod, (1.0 - t) * (1.0 + t), 1e-10)


@given(t=ts)
def test_antisymmetric_stolarsky_is_geometric(t):
    assert _rel_close(phi(stolarsky(-2.5, 2.5), t), phi(core.G, t), 1e-12)


@given(t=ts)
def test_power_minus_one_is_dual(t):
    for base in (core.I, core.S, lehmer(2)):
        assert _rel_close(phi(power_transform(base, -1.0), t), phi(dual(base), t), 1e-12)


def test_power_transform_collapses():
    assert power_transform(core.A, 2.0) == holder(2.0)
    assert power_transform(core.G, 7.0) is core.G
    assert power_transform(core.I, 1e-12) is core.G
    assert holder(0.0) is core.G
    assert gen_log(0.0) is core.G
    assert k_mean(0.0) is core.S
    assert k_mean(-1.0) is core.A


LADDERS = {
    "holder": holder,
    "lehmer": lehmer,
    "genlog": gen_log,
    "lambda": lambda_mean,
    "stolarsky_diag": lambda s: stolarsky(s, s),
}


@settings(max_examples=100)
@given(t=ts, p=qparams, q=qparams, name=st.sampled_from(sorted(LADDERS)))
def test_families_increase_with_parameter(t, p, q, name):
    assume(p != q)
    lo, hi = sorted((p, q))
    make = LADDERS[name]
    assert phi(make(lo), t) <= phi(make(hi), t) * (1.0 + 1e-12)


@given(t=ts, r=quarters(-0.75, 8), d=qsteps)
def test_k_increases_with_parameter(t, r, d):
    assert phi(k_mean(r), t) <= phi(k_mean(r + d), t) * (1.0 + 1e-12)


@given(t=ts, r=qparams, s=qparams, d=qsteps)
def test_stolarsky_increases_in_each_argument(t, r, s, d):
    assert phi(stolarsky(r, s), t) <= phi(stolarsky(r, s + d), t) * (1.0 + 1e-12)


@given(
    t=st.floats(min_value=0.05, max_value=0.99),
    s1=st.floats(min_value=0.1, max_value=6.0),
    s2=st.floats(min_value=0.1, max_value=6.0),
)
def test_diagonal_is_log_concave_for_positive_parameter(t, s1, s2):
    assume(abs(s1 - s2) > 1e-3)
    mid = 0.5 * (s1 + s2)
    f = lambda s: math.log(phi(stolarsky(s, s), t))
    assert f(mid) >= 0.5 * (f(s1) + f(s2)) - 1e-10


@given(
    t=st.floats(min_value=0.05, max_value=0.99),
    s1=st.floats(min_value=-6.0, max_value=-0.1),
    s2=st.floats(min_value=-6.0, max_value=-0.1),
)
def test_diagonal_is_log_convex_for_negative_parameter(t, s1, s2):
    assume(abs(s1 - s2) > 1e-3)
    mid = 0.5 * (s1 + s2)
    f = lambda s: math.log(phi(stolarsky(s, s), t))
    assert f(mid) <= 0.5 * (f(s1) + f(s2)) + 1e-10


@given(t=ts, r=quarters(-2, 2))
def test_holder_sandwich(t, r):
    slack = 1.0 + 1e-12
    lo = phi(dual(core.S), t)
    m2lo = phi(holder(-2), t)
    mid = phi(holder(r), t)
    m2hi = phi(holder(2), t)
    hi = phi(core.S, t)
    assert lo <= m2lo * slack
    assert m2lo <= mid * slack
    assert mid <= m2hi * slack
    assert m2hi <= hi * slack


@given(t=ts, r=quarters(-3, 3), s=quarters(-3, 3))
def test_stolarsky_sandwich(t, r, s):
    slack = 1.0 + 1e-12
    mid = phi(stolarsky(r, s), t)
    assert phi(dual(core.S), t) <= mid * slack
    assert mid <= phi(core.S, t) * slack


_BOUNDARIES = {
    "holder": (0.0,),
    "lehmer": (),
    "genlog": (0.0,),
    "lambda": (-1.0, 0.0, 1.0),
    "stolarsky_diag": (0.0,),
}


@settings(max_examples=120)
@given(
    t=st.floats(min_value=1e-5, max_value=1e-3),
    p=st.floats(min_value=-8.0, max_value=8.0),
    name=st.sampled_from(sorted(_BOUNDARIES)),
)
def test_series_and_direct_forms_agree_near_threshold(t, p, name):
    assume(all(abs(p - b) >= 0.5 for b in _BOUNDARIES[name]))
    m = LADDERS[name](p)
    d = core.phi_direct(m, t)
    s = core.phi_series(m, t)
    assert _rel_close(d, s, 1e-9)


def test_routing_is_continuous_across_diagonal_band():
    # parameters straddling the near-diagonal split must agree to O(width)
    just_outside = stolarsky(2.0, 2.0 + 2e-8)
    just_inside = stolarsky(2.0, 2.0 + 5e-9)
    for t in (0.1, 0.5, 0.99):
        assert _rel_close(phi(just_outside, t), phi(just_inside, t), 1e-7)


def test_lambda_routing_is_continuous_at_limit_points():
    for s0 in (-1.0, 0.0, 1.0):
        limit = lambda_mean(s0 + 5e-9)
        generic = lambda_mean(s0 + 2e-8)
        for t in (0.1, 0.5, 0.9):
            assert _rel_close(phi(limit, t), phi(generic, t), 1e-6)


def test_stolarsky_zero_edges_match_genlog():
    for p in (0.5, 3.0, -2.0):
        for t in (0.01, 0.3, 0.9):
            assert phi(stolarsky(0.0, p), t) == phi(gen_log(p), t)


@given(t=ts, p=st.floats(min_value=0.05, max_value=0.95), r=quarters(-6, 6), d=qsteps)
def test_weighted_holder_increases_with_exponent(t, p, r, d):
    a, b = 1.0 - t, 1.0 + t
    assert weighted_holder(p, r)(a, b) <= weighted_holder(p, r + d)(a, b) * (1 + 1e-12)


@given(p=st.floats(min_value=0.05, max_value=0.95), r=st.floats(min_value=-6.0, max_value=6.0))
def test_weighted_holder_betweenness_and_scaling(p, r):
    wh = weighted_holder(p, r)
    v = wh(2.0, 5.0)
    assert 2.0 <= v <= 5.0
    assert _rel_close(wh(6.0, 15.0), 3.0 * v, 1e-13)


def test_weighted_holder_zero_exponent():
    assert weighted_holder(0.5, 0.0)(1.0, 4.0) == pytest.approx(2.0, rel=1e-14)


def test_parameter_validation():
    with pytest.raises(ParameterError):
        holder(65.0)
    with pytest.raises(ParameterError):
        lehmer(float("inf"))
    with pytest.raises(ParameterError):
        stolarsky(1.0, float("nan"))
    with pytest.raises(ParameterError):
        weighted_holder(0.0, 2.0)
    with pytest.raises(ParameterError):
        weighted_holder(1.0, 2.0)
    with pytest.raises(ParameterError):
        weighted_holder(0.5, 100.0)


def test_weighted_holder_rejects_bad_pairs():
    with pytest.raises(DomainError):
        weighted_holder(0.5, 2.0)(-1.0, 2.0)


def test_large_parameters_stay_finite():
    # exponents at the cap would overflow pow() at extreme t without the
    # log-space forms
    t = 1 - 1e-12
    for m in (holder(64), lehmer(64), gen_log(64), k_mean(64), stolarsky(60, 64)):
        v = phi(m, t)
        assert math.isfinite(v) and 0.0 < v <= 2.0
    for m in (holder(-64), gen_log(-64), lehmer(-64), stolarsky(-64, -60)):
        v = phi(m, t)
        assert math.isfinite(v) and v > 0.0
