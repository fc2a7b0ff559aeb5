import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaylab.channel import DomainError, Geometry, Regime, SnrTriple, snr_from_geometry
from relaylab.gaps import (g_ub, gap_report, gbar_ub, h_of_s, high_snr_limit_g_ub, lemma5_bound,
                           log_variables, low_snr_limit_gbar_ub)
from relaylab.oracles import cdf_rate_oracle, pdf_rate_oracle, pdf_ub_oracle
from relaylab.rates import solve_cdf, solve_pdf, solve_pdf_ub

from conftest import random_relay_channels

REF = SnrTriple(62000, 230, 1e5)
S10 = SnrTriple(10, 1, 10)


def test_log_variables_powers_of_two():
    # (1 + sqrt(l12))**2 = 3
    s = SnrTriple(3, 1, (math.sqrt(3) - 1) ** 2)
    lv = log_variables(s)
    assert (lv.w, lv.u, lv.v, lv.t) == pytest.approx((2, 1, 0, 0.5), abs=1e-15)
    assert lv.q == pytest.approx(2, abs=1e-15)


def test_log_variables_equal_links():
    lv = log_variables(SnrTriple(5, 5, 1))
    assert lv.w == lv.u and lv.t == 0


def test_log_variables_reference_channel():
    lv = log_variables(REF)
    ln2 = math.log(2)
    w = math.log(62001) / ln2
    u = math.log(231) / ln2
    q = math.log(1 + 230 + 1e5 + 2 * math.sqrt(230e5)) / ln2
    assert (lv.w, lv.u, lv.q) == pytest.approx((w, u, q), rel=1e-14)
    assert lv.v == pytest.approx(w - 2 * u, rel=1e-13)
    assert lv.t == pytest.approx(u * (w - u) / w, rel=1e-14)


def test_gbar_ub_reference_channel_brackets_reported_gap():
    value = gbar_ub(REF)
    assert 0.122 <= value <= 0.125


def test_gbar_ub_vanishes_when_q_equals_u():
    # q -> u is the lambda12 -> 0 boundary; emulate by direct algebra on log variables
    lv = log_variables(SnrTriple(10, 1, 1e-300))
    assert lv.t * (lv.q - lv.u) / (lv.q * (lv.q + lv.v)) == pytest.approx(0, abs=1e-12)


def test_gbar_ub_equals_rate_identity():
    cdf, ub = solve_cdf(S10).rate, solve_pdf_ub(S10).rate
    assert gbar_ub(S10) == pytest.approx((ub - cdf) / cdf, rel=1e-9)
    # and from the brute-force oracles
    assert gbar_ub(S10) == pytest.approx(
        (pdf_ub_oracle(S10) - cdf_rate_oracle(S10)) / cdf_rate_oracle(S10), rel=1e-8)


@pytest.mark.parametrize("fn", [gbar_ub, lemma5_bound, g_ub])
def test_bounds_reject_non_relay_regime(fn):
    for s in (SnrTriple(1, 1, 3), SnrTriple(0.5, 1, 3)):
        with pytest.raises(DomainError):
            fn(s)


def test_one_eighth_bound_at_s_two_is_one_eighth():
    # w = 2u  <=>  1 + l01 = (1 + l02)**2
    s = SnrTriple(8, 2, 1)
    assert lemma5_bound(s) == pytest.approx(0.125, rel=1e-14)


def test_one_eighth_bound_vanishes_as_w_approaches_u():
    assert lemma5_bound(SnrTriple(1 + 1e-9, 1, 5)) < 1e-4


def test_one_eighth_bound_dominates_gbar_ub_over_relay_power():
    rng = np.random.default_rng(5)
    for l12 in 10 ** rng.uniform(-2, 6, 100):
        s = SnrTriple(10, 1, l12)
        assert gbar_ub(s) <= lemma5_bound(s) + 1e-12


def test_h_values():
    assert h_of_s(2.0) == 8.0
    assert h_of_s(5.0) > 8 and h_of_s(1.2) > 8
    assert h_of_s(1 + 1e-12) > 1e11
    with pytest.raises(DomainError):
        h_of_s(1.0)


@given(st.floats(1e-2, 1e6), st.floats(1e-2, 1e6), st.floats(1e-2, 1e6))
def test_one_eighth_bound_is_reciprocal_of_h(a, b, c):
    if not a > b * (1 + 1e-6):
        return
    s = SnrTriple(a, b, c)
    lv = log_variables(s)
    assert lemma5_bound(s) * h_of_s(lv.w / lv.u) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(1e-2, 1e6), st.floats(1e-2, 1e6), st.floats(1e-2, 1e6))
def test_normalized_quantities_base_invariant(a, b, c):
    if not a > b * (1 + 1e-6):
        return
    s = SnrTriple(a, b, c)
    assert gbar_ub(s, base=math.e) == pytest.approx(gbar_ub(s), rel=1e-12, abs=1e-15)
    assert lemma5_bound(s, base=math.e) == pytest.approx(lemma5_bound(s), rel=1e-12, abs=1e-15)


def test_normalized_gap_base_invariant_via_natural_log_oracle():
    g2 = gap_report(S10).g_bar
    cdf = cdf_rate_oracle(S10, log=np.log)
    pdf = pdf_rate_oracle(S10, log=np.log)
    assert (pdf - cdf) / cdf == pytest.approx(g2, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-2, 1e6), st.floats(1e-2, 1e6), st.floats(1e-2, 1e6))
def test_g_ub_identity_and_dominance(a, b, c):
    if not a > b * (1 + 1e-6):
        return
    s = SnrTriple(a, b, c)
    ub, cdf, pdf = solve_pdf_ub(s).rate, solve_cdf(s).rate, solve_pdf(s).rate
    assert g_ub(s) == pytest.approx(ub - cdf, abs=1e-9)
    assert pdf - cdf <= g_ub(s) + 1e-12


def test_g_ub_vanishes_as_links_equalize():
    assert g_ub(SnrTriple(1 + 1e-9, 1, 10)) < 1e-8


def test_h_grid_minimum():
    s = np.linspace(1, 100, 400_001)[1:]
    h = s * (1 + 2 / np.sqrt(s - 1) + 1 / (s - 1))
    assert h.min() >= 8 - 1e-9
    assert abs(s[h.argmin()] - 2) <= s[1] - s[0]


# -- asymptotic constants ---------------------------------------------------

def test_high_snr_limit_equal_logs():
    # C1 = C2 = 4: lambda01 = 4 lambda02 and (1 + sqrt(l12/l02))**2 = 4 -> l12 = l02
    g = Geometry((0, 0), (0, 0.5), (0, 1), p0=1, p1=0.25)
    assert high_snr_limit_g_ub(g) == pytest.approx(0.5, rel=1e-14)


def test_high_snr_limit_grows_with_c1():
    # move the relay toward the source along a circle around the destination
    vals = [high_snr_limit_g_ub(Geometry(relay=(0.5 * math.sin(t), 1 - 0.5 * math.cos(t))))
            for t in (1.2, 0.8, 0.4)]
    assert vals[0] < vals[1] < vals[2]


def test_high_snr_limit_rejects_direct_regime():
    with pytest.raises(DomainError):
        high_snr_limit_g_ub(Geometry(relay=(0.0, 2.0)))


def test_high_snr_limit_approached_at_large_power():
    g = Geometry(relay=(0.6, 0.6), p0=100, p1=0.1)
    value = g_ub(snr_from_geometry(g.scaled(1e6)))
    assert value == pytest.approx(high_snr_limit_g_ub(g), rel=0.05)


def test_low_snr_factors_in_unit_interval_and_match_distance_forms():
    g = Geometry(relay=(0.3, 0.4), p0=2.0, p1=3.0)
    lim = low_snr_limit_gbar_ub(g)
    for c in (lim.c3, lim.c4, lim.c5):
        assert 0 < c < 1
    d01, d02, d12 = g.distances()
    k0, k1 = g.p0, g.p1
    a = (d01 ** -2 - d02 ** -2) * k0
    mix = (math.sqrt(k0) / d02 + math.sqrt(k1) / d12) ** 2
    assert lim.c3 == pytest.approx((d01 / d02) ** 2, rel=1e-13)
    assert lim.c4 == pytest.approx(a / (a + 2 * math.sqrt(k0 * k1) / (d02 * d12) + k1 / d12**2),
                                   rel=1e-13)
    assert lim.c5 == pytest.approx((mix - k0 / d02**2) / mix, rel=1e-13)


def test_low_snr_limit_vanishes_near_source():
    assert low_snr_limit_gbar_ub(Geometry(relay=(0.0, 1e-4))).value < 1e-7


def test_low_snr_limit_rejects_far_relay():
    with pytest.raises(DomainError):
        low_snr_limit_gbar_ub(Geometry(relay=(1.0, 0.5)))


def test_low_snr_limit_approached_at_small_power():
    g = Geometry(relay=(0.3, 0.4))
    value = gbar_ub(snr_from_geometry(g.scaled(1e-6)))
    assert value == pytest.approx(low_snr_limit_gbar_ub(g).value, rel=0.05)


# -- reports ------------------------------------------------------------------

def test_gap_report_reference_channel():
    r = gap_report(REF)
    assert r.g_bar == pytest.approx(0.122, abs=0.002)
    assert r.regime is Regime.RELAY_ADVANTAGED
    assert r.g_bar <= r.g_bar_ub <= r.lemma5_bound <= 0.125


def test_gap_report_direct_regime_convention():
    r = gap_report(SnrTriple(0.5, 1, 5))
    assert (r.g, r.g_bar) == (0.0, 0.0)
    assert r.regime is Regime.DIRECT_ADVANTAGED
    assert r.g_bar_ub is None and r.g_ub is None and r.lemma5_bound is None
    assert r.to_dict()["g_bar_ub"] is None


def test_gap_report_equal_regime_has_no_bounds():
    r = gap_report(SnrTriple(2, 2, 5))
    assert r.regime is Regime.EQUAL
    assert abs(r.g) <= 1e-12 and r.r_pdf_ub is None


def test_gap_report_chain_on_s10():
    r = gap_report(S10)
    assert 0 <= r.g_bar <= r.g_bar_ub <= r.lemma5_bound <= 0.125
    assert r.g <= r.g_ub + 1e-12


def test_tiny_cdf_rate_rejected():
    with pytest.raises(DomainError, match="too small"):
        gap_report(SnrTriple(1e-300, 1e-301, 1e-301))


@pytest.mark.parametrize("s", random_relay_channels(11, 200))
def test_report_chain_random(s):
    r = gap_report(s)
    assert r.g >= -1e-12 and r.g_bar >= -1e-12
    assert r.g_bar <= r.g_bar_ub + 1e-9
    assert r.g_bar_ub <= r.lemma5_bound + 1e-9
    assert r.lemma5_bound <= 0.125 + 1e-12
    assert r.g <= r.g_ub + 1e-12
