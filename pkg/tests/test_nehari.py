import math

import numpy as np
import pytest

from multhankel.bohr_lift import label
from multhankel.hankel import build_matrix
from multhankel.integrals import grid_mean_abs_pow
from multhankel.nehari import (
    RatioReport,
    amplify,
    counterexample_scan,
    p_zero,
    ratio,
    verify_linear_bound,
    verify_uniform_linear,
)
from multhankel.spectra import schatten_norm, singular_values
from multhankel.symbols import Symbol, inner, linear, normalized_linear

TWO_SQRT2_OVER_PI = 2 * math.sqrt(2) / math.pi


def test_p_zero_value_and_identity():
    p0 = p_zero()
    assert abs(p0 - 5.738817179) < 1e-8
    assert abs(2 ** (1 / p0) * math.sqrt(math.pi) / 2 - 1) < 1e-12
    assert p0 > 2


def test_ratio_uniform_pair_grid_values():
    f = normalized_linear(2)
    r2 = ratio(f, f, 2, "grid", tol=1e-8)
    assert r2.ratio == pytest.approx(math.pi / 4, abs=1e-6)
    assert not r2.exceeded_one
    rinf = ratio(f, f, math.inf, "grid", tol=1e-8)
    assert rinf.ratio == pytest.approx(math.pi / (2 * math.sqrt(2)), abs=1e-6)
    assert rinf.exceeded_one
    r8 = ratio(f, f, 8, "grid", tol=1e-8)
    assert r8.ratio == pytest.approx(1 / (2 ** (1 / 8) * TWO_SQRT2_OVER_PI), abs=1e-6)
    assert r8.ratio == pytest.approx(1.018534, abs=1e-4)
    assert r8.exceeded_one


def test_ratio_mc_guard():
    f = normalized_linear(2)
    rep = ratio(f, f, 8, "mc", samples=200_000, seed=4)
    assert rep.exceeded_one and "guard" in rep.note
    rep2 = ratio(f, f, 2, "mc", samples=50_000, seed=4)
    assert not rep2.exceeded_one


def test_ratio_validates_inputs():
    f = normalized_linear(2)
    with pytest.raises(ValueError):
        ratio(Symbol({}), f, 2)
    with pytest.raises(ValueError):
        ratio(f, f, 2, "bogus")


def test_ratio_report_record_fields():
    rep = ratio(normalized_linear(2), normalized_linear(2), 4, "grid", tol=1e-6)
    rec = rep.to_record()
    assert set(rec) == {"d", "p", "inner_abs", "schatten", "l1", "l1_stderr", "ratio", "exceeded_one"}
    assert rec["d"] == 2 and rec["l1_stderr"] == 0.0


def test_amplify_single_copy_is_identity():
    f = normalized_linear(2)
    big_f, big_phi = amplify(f, f, 1)
    assert big_f == f and big_phi == f


def test_amplify_two_copies_of_uniform_pair():
    f = normalized_linear(2)
    big_f, big_phi = amplify(f, f, 2)
    labels = sorted(label(k) for k in big_phi.support())
    assert labels == [2 * 5, 2 * 7, 3 * 5, 3 * 7]
    assert all(abs(c - 0.5) < 1e-15 for c in big_phi.terms.values())
    assert inner(big_f, big_phi) == pytest.approx(1.0, abs=1e-14)


def test_amplify_inner_product_powers():
    rng = np.random.default_rng(21)
    f = linear(rng.normal(size=2) + 1j * rng.normal(size=2))
    phi = linear(rng.normal(size=2) + 1j * rng.normal(size=2))
    base = inner(f, phi)
    for m in (2, 3, 4):
        big_f, big_phi = amplify(f, phi, m)
        assert inner(big_f, big_phi) == pytest.approx(base**m, rel=1e-12)
        assert big_f.width == 2 * m


@pytest.mark.parametrize(
    "coeffs,m,nodes",
    [
        ([0.6 - 0.8j], 3, 64),
        ([0.7, 0.5j], 2, 64),
        ([0.7, 0.5j], 3, 16),
    ],
)
def test_amplified_ratio_factorizes(coeffs, m, nodes):
    # the full pipeline on the amplified pair, with the L^1 factor from an
    # honest enumeration of the product-domain grid at a matched level,
    # must reproduce the base ratio to the m-th power
    p = 4.0
    f = linear(coeffs)
    big_f, big_phi = amplify(f, f, m)
    s_base = schatten_norm(singular_values(build_matrix(f)), p)
    s_amp = schatten_norm(singular_values(build_matrix(big_phi)), p)
    l1_base = grid_mean_abs_pow(f, 1.0, nodes)
    l1_amp = grid_mean_abs_pow(big_f, 1.0, nodes)
    r_base = abs(inner(f, f)) / (s_base * l1_base)
    r_amp = abs(inner(big_f, big_phi)) / (s_amp * l1_amp)
    assert r_amp == pytest.approx(r_base**m, rel=1e-6)


def test_amplified_ratio_via_adaptive_grid():
    # total width 4 keeps the amplified pair inside the grid quadrature cap
    f = normalized_linear(2)
    base = ratio(f, f, 6, "grid", tol=1e-7)
    big_f, big_phi = amplify(f, f, 2)
    amp = ratio(big_f, big_phi, 6, "grid", tol=1e-4)
    assert amp.ratio == pytest.approx(base.ratio**2, rel=5e-4)


def test_ratio_scale_invariance():
    rng = np.random.default_rng(22)
    f = linear(rng.normal(size=2) + 1j * rng.normal(size=2))
    phi = linear(rng.normal(size=2) + 1j * rng.normal(size=2))
    base = ratio(f, phi, 3, "grid", tol=1e-7)
    scaled = ratio((1.7 - 0.3j) * f, (-2.2 + 1j) * phi, 3, "grid", tol=1e-7)
    assert scaled.ratio == pytest.approx(base.ratio, rel=1e-9)


def test_ratio_monotone_in_p():
    f = normalized_linear(3)
    ps = [1, 2, 4, 8, math.inf]
    values = [ratio(f, f, p, "grid", tol=1e-7).ratio for p in ps]
    for lo, hi in zip(values, values[1:]):
        assert hi >= lo - 1e-12


def test_verify_uniform_linear_reports():
    # width 10 is beyond the grid cap, so the ratio factor uses Monte Carlo
    rep = verify_uniform_linear(10, 6, "mc", samples=200_000, seed=17)
    assert rep.spectrum_ok and rep.schatten_ok
    assert rep.schatten == pytest.approx(2 ** (1 / 6), abs=1e-10)
    assert not rep.exceeded_one  # d = 10 is not wide enough at p = 6
    rep2 = verify_uniform_linear(2, 8, "grid", tol=1e-7)
    assert rep2.exceeded_one and rep2.ratio_report.ratio == pytest.approx(1.018534, abs=1e-4)
    rep3 = verify_uniform_linear(1, 5, "grid", tol=1e-7)
    assert rep3.ratio_report.ratio == pytest.approx(2 ** (-1 / 5), abs=1e-9)
    assert not rep3.exceeded_one


def test_scan_finds_minimal_width_at_p8():
    result = counterexample_scan(8, 4, "grid", tol=1e-7)
    assert result.minimal_d == 2
    assert len(result.reports) == 2
    assert [r.d for r in result.reports] == [1, 2]


def test_scan_returns_none_at_critical_exponent():
    grid = counterexample_scan(p_zero(), 4, "grid", tol=1e-5)
    assert grid.minimal_d is None and len(grid.reports) == 4
    mc = counterexample_scan(p_zero(), 8, "mc", samples=200_000, seed=5)
    assert mc.minimal_d is None


def test_threshold_crossing_just_above_p_zero():
    result = counterexample_scan(p_zero() + 0.5, 64, "mc", samples=400_000, seed=6)
    assert result.minimal_d is not None and result.minimal_d <= 64


def test_no_crossing_at_p_zero_for_wide_symbols():
    for d in (16, 32, 64):
        phi = normalized_linear(d)
        rep = ratio(phi, phi, p_zero(), "mc", samples=200_000, seed=derived(d))
        assert not rep.exceeded_one


def derived(d):
    return 1000 + d


def test_verify_linear_bound_simple_cases():
    rep = verify_linear_bound([1, 0], [1, 0], 2, tol=1e-7)
    assert rep.holds and rep.bound_schatten_l1 == pytest.approx(math.sqrt(2), abs=1e-6)
    assert rep.inner_abs == pytest.approx(1.0)
    u = [1 / math.sqrt(2), 1 / math.sqrt(2)]
    rep2 = verify_linear_bound(u, u, p_zero(), tol=1e-8)
    assert rep2.holds and rep2.khintchine_ok and rep2.exponent_ok and rep2.cauchy_schwarz_ok
    assert rep2.bound_schatten_l1 == pytest.approx(1.015898, abs=1e-5)
    assert rep2.bound_khintchine == pytest.approx(1.0, abs=1e-12)


def test_verify_linear_bound_rejections():
    with pytest.raises(ValueError):
        verify_linear_bound([1], [1], p_zero() + 0.1)
    with pytest.raises(ValueError):
        verify_linear_bound([1, 1, 1, 1], [1], 2)
    with pytest.raises(ValueError):
        verify_linear_bound([0, 0], [1], 2)


def test_verify_linear_bound_random_pairs():
    rng = np.random.default_rng(23)
    for _ in range(25):
        d = int(rng.integers(1, 4))
        a = rng.normal(size=d) + 1j * rng.normal(size=d)
        b = rng.normal(size=d) + 1j * rng.normal(size=d)
        for p in (2.0, 4.0, p_zero()):
            rep = verify_linear_bound(a, b, p, tol=1e-6)
            assert rep.holds, (a, b, p)
            assert rep.inner_abs <= rep.bound_schatten_l1 + 1e-6
