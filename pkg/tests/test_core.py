"""Core descriptor, evaluation, and axiom-validation behaviour."""

import math

import pytest

from meanlab import core, families, oracle
from meanlab.core import (
    A, DomainError, G, H, I, L, MeanDescriptor, P, S, Stabilization, T,
    canonical, custom_mean, dual, eval_elementary, phi, series_coefficients,
    validate_mean, value,
)

ALL_ELEMENTARY = [H, G, L, I, A, S, P, T]


def test_canonical_coordinates():
    pt = canonical(1.0, 3.0)
    assert pt.t == 0.5
    assert pt.scale == 2.0
    assert pt.pair() == (1.0, 3.0)


def test_canonical_keeps_sign():
    assert canonical(3.0, 1.0).t == -0.5


def test_canonical_rejects_nonpositive():
    with pytest.raises(DomainError):
        canonical(0.0, 1.0)
    with pytest.raises(DomainError):
        canonical(1.0, -2.0)


@pytest.mark.parametrize(
    "m,expected",
    [
        (H, "H"),
        (dual(S), "dual(S)"),
        (families.holder(2), "holder(2)"),
        (families.stolarsky(1, 3), "stolarsky(1, 3)"),
        (families.k_mean(2), "k(2)"),
        (families.power_transform(I, 3), "pow(I, 3)"),
        (families.power_transform(dual(S), 0.5), "pow(dual(S), 0.5)"),
        (custom_mean(max), "custom"),
    ],
)
def test_descriptor_str(m, expected):
    assert str(m) == expected


def test_value_is_scale_times_phi():
    for m in (L, S, families.gen_log(3)):
        a, b = 2.0, 5.0
        pt = canonical(a, b)
        assert value(m, a, b) == pytest.approx(pt.scale * phi(m, pt.t), rel=1e-15)


def test_phi_is_even():
    for m in (L, I, T, families.lehmer(2)):
        assert phi(m, 0.3) == phi(m, -0.3)


def test_reflexivity_is_exact():
    for m in ALL_ELEMENTARY + [families.stolarsky(2, 5)]:
        for x in (0.1, 1.0, 3.7, 1e6):
            assert value(m, x, x) == x


def test_phi_at_zero_is_one():
    for m in ALL_ELEMENTARY:
        assert phi(m, 0.0) == 1.0


@pytest.mark.parametrize("bad", [(0.0, 1.0), (-1.0, 2.0), (1.0, float("inf")), (float("nan"), 1.0)])
def test_value_domain_errors(bad):
    with pytest.raises(DomainError):
        value(A, *bad)


@pytest.mark.parametrize("t", [1.0, -1.0, 1.5, float("nan")])
def test_phi_domain_errors(t):
    with pytest.raises(DomainError):
        phi(L, t)


def test_eval_elementary():
    assert eval_elementary("H", 1, 3) == pytest.approx(1.5, rel=1e-15)
    assert eval_elementary("G", 1, 4) == pytest.approx(2.0, rel=1e-15)
    assert eval_elementary("A", 1, 3) == 2.0
    with pytest.raises(DomainError):
        eval_elementary("Q", 1, 3)


def test_value_accepts_ints():
    assert value(A, 1, 3) == 2.0


def test_dual_collapses():
    d = dual(S)
    assert dual(d) is S
    assert d.family_id == "dual" and d.base is S


def test_dual_product_identity():
    for m in (L, I, families.holder(3)):
        assert value(m, 2, 5) * value(dual(m), 2, 5) == pytest.approx(10.0, rel=1e-14)


def test_dual_of_custom_homogeneous_mean():
    m = custom_mean(lambda a, b: (a + b) / 2)
    d = dual(m)
    assert value(d, 1, 3) == pytest.approx(1.5, rel=1e-14)  # ab/A = H


def test_custom_mean_bypasses_reduction():
    # deliberately asymmetric: must be evaluated as given, not canonicalized
    m = custom_mean(lambda a, b: a)
    assert value(m, 2.0, 5.0) == 2.0
    assert value(m, 5.0, 2.0) == 5.0
    assert phi(m, 0.5) == 0.5


ELEMENTARY_SERIES = {
    "H": (-1.0, 0.0),
    "G": (-0.5, -0.125),
    "L": (-1 / 3, -4 / 45),
    "I": (-1 / 6, -13 / 360),
    "A": (0.0, 0.0),
    "S": (0.5, 5 / 24),
    "P": (-1 / 6, -17 / 360),
    "T": (1 / 3, -4 / 45),
}


@pytest.mark.parametrize("kind", sorted(ELEMENTARY_SERIES))
def test_elementary_series_coefficients(kind):
    a1, a2 = series_coefficients(core.ELEMENTARY[kind])
    want1, want2 = ELEMENTARY_SERIES[kind]
    assert a1 == pytest.approx(want1, abs=1e-15)
    assert a2 == pytest.approx(want2, abs=1e-15)


def test_dual_series_transform():
    # dual(A) = H and dual(G) = G, so the transform is pinned exactly
    assert series_coefficients(dual(A)) == pytest.approx((-1.0, 0.0), abs=1e-15)
    assert series_coefficients(dual(G)) == pytest.approx((-0.5, -0.125), abs=1e-15)
    assert series_coefficients(dual(H)) == pytest.approx((0.0, 0.0), abs=1e-15)


def test_series_switchover_is_seamless():
    # both evaluation paths agree near the handoff threshold
    for m in ALL_ELEMENTARY:
        for t in (5e-5, 1e-4, 2e-4):
            d = core.phi_direct(m, t)
            s = core.phi_series(m, t)
            assert abs(d - s) <= 1e-12 * abs(d)


def test_series_order_one_drops_quartic():
    m = MeanDescriptor("L", stabilization=Stabilization(series_order=1))
    t = 1e-5
    assert phi(m, t) == 1.0 + (-1 / 3) * t * t


def test_custom_threshold_widens_series_region():
    m = MeanDescriptor("L", stabilization=Stabilization(threshold=1e-2))
    t = 5e-3  # below the custom threshold, above the default one
    assert phi(m, t) == core.phi_series(m, t)
    assert phi(core.L, t) == core.phi_direct(core.L, t)


def test_unknown_family_raises():
    with pytest.raises(DomainError):
        phi(MeanDescriptor("nope"), 0.5)
    with pytest.raises(DomainError):
        series_coefficients(MeanDescriptor("custom", value_fn=max))


@pytest.mark.parametrize("m", ALL_ELEMENTARY, ids=[str(m) for m in ALL_ELEMENTARY])
def test_elementary_satisfy_axioms(m):
    report = validate_mean(m, [1e-6, 1e-3, 0.1, 0.5, 0.9, 1 - 1e-8])
    assert report.passed, report


def test_validate_mean_accepts_gridspec():
    from meanlab.orderlab import GridSpec

    grid = GridSpec.from_values([0.1, 0.5])
    report = validate_mean(A, grid)
    assert report.passed


def test_asymmetric_mean_fails_symmetry():
    wh = families.weighted_holder(0.25, 2)
    report = validate_mean(custom_mean(wh), [0.1, 0.5])
    assert not report.passed
    assert report.symmetry_max_violation > 1e-3
    assert report.symmetry_violations  # witnesses recorded
    assert report.betweenness_max_violation <= report.tolerance


def test_non_mean_fails_betweenness():
    report = validate_mean(custom_mean(lambda a, b: a + b), [0.1, 0.5])
    assert not report.passed
    assert report.betweenness_violations


def test_phi_matches_oracle_spot_checks():
    for m in ALL_ELEMENTARY:
        for t in (0.12, 0.5, 0.97):
            assert phi(m, t) == pytest.approx(float(oracle.phi(m, t)), rel=1e-13)


def test_extreme_t_stays_finite_and_ordered():
    t = 1 - 1e-12
    values = [phi(m, t) for m in (H, G, L, I, A)]
    assert all(map(math.isfinite, values))
    assert values == sorted(values)
    assert phi(S, t) > 1.0
