"""
Tests for the class number lemma, the discriminant diagnostic and the family bound chains.
"""

import math

import mpmath
import pytest

from config.config import LINK_ASYMPTOTIC, LINK_FAILS, LINK_FLAGGED, LINK_HOLDS
from services.bounds import (
    BoundsConfig, brauer_siegel_class_bound, class_number_bound, friedman_regulator_lower,
    ideal_count_upper, lemma_chain, link_holds, maximal_chain, minimal_chain, odlyzko_check,
    odlyzko_survey, vigneras_chain,
)
from services.covolume import covolume_gamma1, minimal_covolume_lower
from services.numfield import count_ideals, dedekind_zeta
from services.quatalg import validate_algebra
from utils.interval import BoundedValue
from utils.verification import ArithmeticVerificationError


def _assert_integrity(report):
    for link in report.links:
        assert link_holds(link.lhs, link.rhs, link.relation, link.slack) == link.holds, link.name
        if link.status not in (LINK_FLAGGED, LINK_ASYMPTOTIC):
            assert link.holds, link.name


@pytest.fixture(scope="module")
def zetas(starter):
    return {alg.label: dedekind_zeta(alg.field, 2, 2000) for alg in starter.algebras}


def test_config_derives_C1():
    config = BoundsConfig()
    assert config.C == 4.5
    assert config.C1 == pytest.approx(math.exp(4.5))
    with pytest.raises(ArithmeticVerificationError):
        BoundsConfig(C=4.5, C1=90.0)
    with pytest.raises(ArithmeticVerificationError):
        BoundsConfig(epsilon=0)


def test_brauer_siegel_for_gaussian_field(qi):
    zeta = dedekind_zeta(qi, 1.5, 2000)
    bound = brauer_siegel_class_bound(qi, 1.5, zeta)
    with mpmath.workdps(30):
        zeta_exact = mpmath.zeta(1.5) * mpmath.dirichlet(1.5, [0, 1, 0, -1])
        exact = float(4 * 0.75 * mpmath.gamma(1.5) * zeta_exact * mpmath.mpf(4) ** 0.75
                      / (mpmath.mpf(2) ** 1.5 * mpmath.pi ** 1.5))
    assert exact == pytest.approx(1.078, abs=1e-3)
    assert bound.contains(exact)
    assert qi.h_k <= bound.hi
    with pytest.raises(ArithmeticVerificationError):
        brauer_siegel_class_bound(qi, 1.0, zeta)


def test_friedman_regulator_bound(starter):
    assert friedman_regulator_lower(starter.field("Qi")) == pytest.approx(0.02008, rel=1e-3)
    assert friedman_regulator_lower(starter.field("Qsqrt5")) == pytest.approx(0.02713, rel=1e-3)
    assert friedman_regulator_lower(starter.field("Q")) == pytest.approx(0.01297, rel=1e-3)


def test_class_number_bound_values(starter):
    assert class_number_bound(starter.field("Qsqrt5")) == pytest.approx(300.85, rel=1e-4)
    assert class_number_bound(starter.field("Qi")) == pytest.approx(684.48, rel=1e-4)
    assert class_number_bound(starter.field("Q")) == pytest.approx(242 / 1.64)


def test_lemma_holds_for_every_starter_field(starter, config):
    for field in starter.fields:
        assert field.h_k <= class_number_bound(field)
        report = lemma_chain(field, config)
        _assert_integrity(report)
        assert report.verdict, [l.name for l in report.links if not l.holds]
        assert report.link("B1: h_k <= Brauer-Siegel(s)").holds


def test_lemma_chain_flags_other_s(qi):
    report = lemma_chain(qi, BoundsConfig(prime_bound=500, brauer_siegel_s=2.0))
    assert report.link("Z2: zeta(1.5) <= 2.62").status == LINK_FLAGGED
    assert report.link("B1: h_k <= Brauer-Siegel(s)").holds


def test_odlyzko_minimal_constants(starter, config):
    gaussian = odlyzko_check(starter.field("Qi"), config)
    assert gaussian.minimal_C == pytest.approx(4.83019, abs=1e-4)
    assert not gaussian.holds
    golden = odlyzko_check(starter.field("Qsqrt5"), config)
    assert golden.minimal_C == pytest.approx(6.60707, abs=1e-4)
    assert not golden.holds
    assert odlyzko_check(starter.field("Qi"), BoundsConfig(C=4.84)).holds


def test_odlyzko_survey_reports_least_valid_constant(starter, config):
    survey = odlyzko_survey(starter.fields, config)
    assert {"Qi", "Qsqrt5"} <= set(survey["failing"])
    least = survey["corpus_minimal_C"]
    assert least == max(check["minimal_C"] for check in survey["checks"])
    assert least >= 6.60707
    rerun = odlyzko_survey(starter.fields, BoundsConfig(C=least + 1e-9))
    assert rerun["failing"] == []


def test_ideal_count_upper():
    assert ideal_count_upper(2, 10) == pytest.approx(270.58, rel=1e-4)
    assert ideal_count_upper(1, 0) == 0
    with pytest.raises(ArithmeticVerificationError):
        ideal_count_upper(1, -1)


@pytest.mark.parametrize("bound", [1, 10, 100, 1000])
def test_exact_ideal_counts_within_upper_bound(starter, bound):
    for field in starter.fields:
        assert count_ideals(field, bound) <= ideal_count_upper(field.degree, bound)


def test_vigneras_chain_for_gaussian_algebra(qi, qi_b23, zetas, config):
    volume = covolume_gamma1(qi_b23, zetas["Qi-B23"]).value.hi
    report = vigneras_chain(qi, qi_b23, volume, config)
    _assert_integrity(report)

    l4 = report.link("L4: V C1 >= d^(1/2)")
    assert l4.lhs == pytest.approx(219.9, rel=1e-3)
    assert l4.holds
    l5 = report.link("L5: 242 d_k <= 242 C1^2 V^2")
    assert l5.lhs == 968
    assert l5.rhs == pytest.approx(1.17e7, rel=1e-2)

    l6 = report.link("L6: 242 C1^2 V^2 <= V^(2+eps)")
    assert l6.status == LINK_ASYMPTOTIC
    assert l6.note == "asymptotic, not yet in range"
    assert report.data["threshold_V"] == pytest.approx(3.845e12, rel=1e-3)

    # C = 4.5 is below Q(i)'s minimal C, so the Odlyzko-dependent links are flagged
    assert report.link("L2: log d_k >= 4 r1 - C").status == LINK_FLAGGED
    assert report.link("L3: 242 (1.22)^r1 d^(3/4) <= 242 d_k").status == LINK_FLAGGED
    assert report.link("L1: 2^r1 h_k <= 242 (1.22)^r1 d^(3/4)").status == LINK_HOLDS
    assert not report.verdict


def test_vigneras_chain_in_odlyzko_range(starter, zetas):
    alg = starter.algebra("Q-B6")
    volume = covolume_gamma1(alg, zetas["Q-B6"]).value.hi
    report = vigneras_chain(alg.field, alg, volume, BoundsConfig(prime_bound=2000))
    _assert_integrity(report)
    assert report.link("L2: log d_k >= 4 r1 - C").status == LINK_HOLDS
    assert report.link("L4: V C1 >= d^(1/2)").status == LINK_HOLDS
    l3 = report.link("L3: 242 (1.22)^r1 d^(3/4) <= 242 d_k")
    assert l3.status == LINK_FLAGGED
    assert "r1 > 1" in l3.note


def test_vigneras_chain_notes_definite_algebra(starter, zetas, config):
    alg = starter.algebra("Q5-definite")
    volume = covolume_gamma1(alg, zetas["Q5-definite"]).value.hi
    report = vigneras_chain(alg.field, alg, volume, config)
    _assert_integrity(report)
    assert any("outside Vignéras' construction" in note for note in report.notes)
    assert report.link("F: (1.22)^r1 <= f(r1)^(1/4)").status == LINK_HOLDS


def test_chains_at_covolume_upper_endpoint(starter, zetas, config):
    for alg in starter.algebras:
        zeta = zetas[alg.label]
        volume = covolume_gamma1(alg, zeta).value.hi
        _assert_integrity(vigneras_chain(alg.field, alg, volume, config))
        _assert_integrity(minimal_chain(alg.field, alg, volume, config, zeta=zeta))


def test_minimal_chain_for_gaussian_algebra(qi, qi_b23, zetas, config):
    zeta = zetas["Qi-B23"]
    volume = covolume_gamma1(qi_b23, zeta).value.hi
    report = minimal_chain(qi, qi_b23, volume, config, zeta=zeta)
    _assert_integrity(report)
    assert report.verdict

    m3 = report.link("M3: n <= 3 log V")
    assert m3.lhs == 2
    assert m3.rhs == pytest.approx(3 * math.log(volume))
    assert 2.678 < m3.rhs < 2.683
    m6 = report.link("M6: 242 (1.22)^r1 d^(3/4) <= 242 V^18")
    assert m6.lhs == pytest.approx(684.48, rel=1e-4)
    assert m6.rhs == pytest.approx(2.3e9, rel=3e-2)


def test_minimal_chain_below_one_is_flagged(qi, qi_b23, zetas, config):
    zeta = zetas["Qi-B23"]
    volume = minimal_covolume_lower(qi_b23, zeta).exact_form.lo
    report = minimal_chain(qi, qi_b23, volume, config, zeta=zeta)
    _assert_integrity(report)
    m3 = report.link("M3: n <= 3 log V")
    assert m3.status == LINK_FLAGGED
    assert m3.note == "chain requires V > 1"
    for name in ("M4: d_k <= V^22", "M6: 242 (1.22)^r1 d^(3/4) <= 242 V^18"):
        assert report.link(name).status == LINK_FLAGGED

    at_one = minimal_chain(qi, qi_b23, 1.0, config, zeta=zeta)
    assert at_one.link("M3: n <= 3 log V").status == LINK_FLAGGED


def test_minimal_chain_genuine_failure(starter, config):
    cubic = starter.field("cubic23")
    alg = validate_algebra(cubic, [0], [[5, 0]], label="cubic-B5")
    report = minimal_chain(cubic, alg, 2.0, config)
    m3 = report.link("M3: n <= 3 log V")
    assert m3.status == LINK_FAILS
    assert report.link("M4: d_k <= V^22").status == LINK_FLAGGED
    assert not report.verdict


def test_maximal_chain_enumeration_instance(qi, qi_b23, zetas, config):
    report = maximal_chain(qi, qi_b23, 2.2946, config, zeta=zetas["Qi-B23"])
    _assert_integrity(report)
    assert report.data["X"] == pytest.approx(10.0, abs=1e-2)
    assert report.data["s_count"] == 3
    k1 = report.link("K1: #S <= (pi^2/6)^n X^2")
    assert k1.holds and k1.lhs == 3
    assert report.data["ratio"] <= 3 / 270.6
    assert report.link("K5a[upper]: V' <= V").status == LINK_FLAGGED
    assert report.link("K0[lower]: V' >= d^(1/22)").status == LINK_FLAGGED
    assert report.link("K0[upper]: V' >= d^(1/22)").status == LINK_HOLDS


def test_maximal_chain_degenerate_volume(qi, qi_b23, zetas, config):
    report = maximal_chain(qi, qi_b23, 0.5, config, zeta=zetas["Qi-B23"])
    _assert_integrity(report)
    assert report.data["s_count"] == 0
    assert any("degenerate X" in note for note in report.notes)


def test_chain_inputs_are_validated(qi, qi_b23, config):
    with pytest.raises(ArithmeticVerificationError):
        vigneras_chain(qi, qi_b23, 0.0, config)
    with pytest.raises(ArithmeticVerificationError):
        minimal_chain(qi, qi_b23, -1.0, config)


def test_chain_report_record(qi, qi_b23, zetas, config):
    record = minimal_chain(qi, qi_b23, 3.0, config, zeta=zetas["Qi-B23"]).to_record()
    assert record["chain"] == "minimal"
    assert record["counts"][LINK_HOLDS] == len(record["links"])
    assert all({"lhs", "rhs", "relation", "holds", "slack"} <= set(link) for link in record["links"])


def test_zeta_link_compares_the_upper_endpoint(starter):
    rational = starter.field("Q")
    enclosure = dedekind_zeta(rational, 1.5, 100)
    z1 = lemma_chain(rational, BoundsConfig(prime_bound=100)).link("Z1: zeta_k(s) <= zeta(s)^n")
    assert z1.lhs == enclosure.hi
    assert z1.lhs > z1.rhs
    assert z1.slack >= enclosure.hi - enclosure.lo
    assert z1.status == LINK_HOLDS


def test_zeta_link_fails_on_an_oversized_euler_product(starter):
    rational = starter.field("Q")
    report = lemma_chain(rational, BoundsConfig(prime_bound=100), zeta_s=BoundedValue(3.0, 3.1))
    assert report.link("Z1: zeta_k(s) <= zeta(s)^n").status == LINK_FAILS
    assert not report.verdict


def test_huge_volumes_saturate_instead_of_overflowing(qi, qi_b23, zetas, config):
    vigneras = vigneras_chain(qi, qi_b23, 1e200, config)
    l5 = vigneras.link("L5: 242 d_k <= 242 C1^2 V^2")
    assert math.isinf(l5.rhs)
    assert l5.holds

    minimal = minimal_chain(qi, qi_b23, 1e200, config, zeta=zetas["Qi-B23"])
    assert math.isinf(minimal.link("M6: 242 (1.22)^r1 d^(3/4) <= 242 V^18").rhs)
    for link in vigneras.links + minimal.links:
        assert link_holds(link.lhs, link.rhs, link.relation, link.slack) == link.holds, link.name


def test_maximal_chain_rejects_norm_bounds_past_the_ceiling(qi, qi_b23, zetas, config):
    with pytest.raises(ArithmeticVerificationError, match="enumeration ceiling"):
        maximal_chain(qi, qi_b23, 1e120, config, zeta=zetas["Qi-B23"])


def test_listed_s_sets_dominate_the_cube_root_product(starter, config):
    alg = starter.algebra("Q-B6")
    report = maximal_chain(alg.field, alg, 4.0, config)
    k6 = report.link("K6: prod N(p)^(1/3) <= prod (N(p)+1)/2 over listed S")
    assert 0 < k6.lhs <= 1.0
    assert k6.status == LINK_HOLDS
