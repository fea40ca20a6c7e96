"""
Tests for covolumes, the minimal covolume bound and S-level enumeration.
"""

import math
from fractions import Fraction

import mpmath
import pytest

from config.config import MAX_NORM_BOUND
from services.bounds import ideal_count_upper
from services.covolume import (
    covolume_gamma1, enumerate_S_sets, gamma_S_index_interval, index_bound_gamma,
    make_s_level_set, minimal_covolume_lower, s_level_volume_ratio, volume_floor,
)
from services.numfield import dedekind_zeta, prime_ideals_up_to, split_prime
from services.quatalg import validate_algebra
from utils.verification import ArithmeticVerificationError

PRIME_BOUND = 10_000


@pytest.fixture(scope="module")
def qi_zeta(qi):
    return dedekind_zeta(qi, 2, PRIME_BOUND)


def test_gaussian_covolume(qi_b23, qi_zeta):
    result = covolume_gamma1(qi_b23, qi_zeta)
    with mpmath.workdps(30):
        exact = float(16 / mpmath.pi ** 2 * mpmath.zeta(2) * mpmath.catalan)
    assert result.value.contains(exact)
    assert 2.4425 <= result.value.lo <= result.value.hi <= 2.4431
    assert result.formula_inputs["phi"] == "8"


def test_rational_covolume(starter):
    alg = starter.algebra("Q-B6")
    zeta = dedekind_zeta(alg.field, 2, PRIME_BOUND)
    result = covolume_gamma1(alg, zeta)
    # 2 · 4π · Φ · ζ(2) / (4π²) with Φ = 2
    assert result.value.contains(2 * math.pi / 3)


def test_covolume_above_volume_floor(starter):
    for alg in starter.algebras:
        zeta = dedekind_zeta(alg.field, 2, 1000)
        assert covolume_gamma1(alg, zeta).value.lo >= volume_floor(alg.field).lo


def test_volume_floor(qi):
    assert volume_floor(qi).contains(8 / (8 * math.pi ** 2))


def test_index_bound(qi_b23, starter):
    assert index_bound_gamma(qi_b23) == 16
    assert index_bound_gamma(starter.algebra("Q5-definite")) == 4


def test_minimal_covolume_lower(qi_b23, qi_zeta):
    minimal = minimal_covolume_lower(qi_b23, qi_zeta)
    assert minimal.index_bound == 16
    assert minimal.exact_form.lo == pytest.approx(0.15266, rel=1e-4)
    assert minimal.simplified == pytest.approx(4 ** 0.75 / 75 ** 2)
    assert minimal.exact_form.lo >= minimal.intermediate >= minimal.simplified


def test_minimal_covolume_dominates_simplified_form(starter):
    for alg in starter.algebras:
        zeta = dedekind_zeta(alg.field, 2, 1000)
        minimal = minimal_covolume_lower(alg, zeta)
        assert minimal.exact_form.lo >= minimal.simplified


def test_zeta_refinement_over_norm_two_primes(starter):
    for alg in starter.algebras:
        zeta = dedekind_zeta(alg.field, 2, 100)
        norm_two = sum(1 for q in alg.ram_f if q.norm == 2)
        assert zeta.lo >= float(Fraction(4, 3) ** norm_two)


def test_gamma_S_index_interval(qi, qi_b23):
    above_five = split_prime(qi, 5)
    above_seven = split_prime(qi, 7)
    S = make_s_level_set(qi_b23, [above_seven[0], above_five[0]])
    assert [q.norm for q in S.primes] == [5, 49]
    lo, hi = gamma_S_index_interval(S)
    assert (lo, hi) == (Fraction(75), Fraction(300))
    assert S.m_range == (0, 2)

    ratio, cube_roots = s_level_volume_ratio(S)
    assert ratio == 75
    assert ratio >= cube_roots


def test_s_level_set_must_avoid_ramification(qi, qi_b23):
    with pytest.raises(ArithmeticVerificationError, match="disjoint"):
        make_s_level_set(qi_b23, [qi_b23.ram_f[0]])
    five = split_prime(qi, 5)[0]
    with pytest.raises(ArithmeticVerificationError, match="repeated"):
        make_s_level_set(qi_b23, [five, five])


def test_enumerate_S_sets_at_ten(qi, qi_b23):
    enumeration = enumerate_S_sets(qi_b23, 10)
    above_five = split_prime(qi, 5)
    assert enumeration.count == 3
    assert enumeration.free_norm2 == 0
    assert not enumeration.truncated
    assert [s.primes for s in enumeration.sets] == [(), (above_five[0],), (above_five[1],)]


def test_enumerate_S_sets_counts_free_norm_two_primes(starter):
    # (2) is unramified in Q(√-7), and both primes above it have norm 2
    sqrt_minus7 = starter.field("Qsqrt-7")
    alg = validate_algebra(sqrt_minus7, [], [[11, 0], [11, 1]], label="B11")
    enumeration = enumerate_S_sets(alg, 10)
    assert enumeration.free_norm2 == 2
    # constrained primes of norm <= 10 are the ramified 7 and the inert 3
    assert enumeration.count == 3 * 4


def test_enumerate_S_sets_rational_algebra(starter):
    enumeration = enumerate_S_sets(starter.algebra("Q-B6"), 30)
    assert enumeration.count == 9


def test_enumeration_limit_keeps_exact_count(qi_b23):
    full = enumerate_S_sets(qi_b23, 200)
    capped = enumerate_S_sets(qi_b23, 200, limit=5)
    assert capped.count == full.count
    assert len(capped.sets) == 5
    assert capped.truncated


def test_degenerate_bound(qi_b23):
    enumeration = enumerate_S_sets(qi_b23, 0.5)
    assert enumeration.count == 0
    assert enumeration.sets == ()


def test_enumeration_stores_nothing_past_the_limit(qi_b23):
    counted = enumerate_S_sets(qi_b23, 500, limit=0)
    assert counted.sets == ()
    assert counted.count == enumerate_S_sets(qi_b23, 500).count
    assert counted.truncated


def test_enumeration_ceiling(qi_b23):
    with pytest.raises(ArithmeticVerificationError, match="enumeration ceiling"):
        enumerate_S_sets(qi_b23, MAX_NORM_BOUND * 2)


def test_gamma_S_index_is_multiplicative_over_disjoint_sets(qi, qi_b23):
    candidates = [q for q in prime_ideals_up_to(qi, 60) if q not in qi_b23.ram_f]
    halves = [candidates[0::2], candidates[1::2]]
    for k in range(1, 4):
        first = make_s_level_set(qi_b23, halves[0][:k])
        second = make_s_level_set(qi_b23, halves[1][:k])
        union = make_s_level_set(qi_b23, halves[0][:k] + halves[1][:k])
        lo1, hi1 = gamma_S_index_interval(first)
        lo2, hi2 = gamma_S_index_interval(second)
        assert gamma_S_index_interval(union) == (lo1 * lo2, hi1 * hi2)


@pytest.mark.parametrize("bound", [1, 10, 50, 200])
def test_S_count_within_ideal_count_bound(starter, bound):
    sqrt_minus7 = starter.field("Qsqrt-7")
    algebras = list(starter.algebras) + [validate_algebra(sqrt_minus7, [], [[11, 0], [11, 1]], label="B11")]
    for alg in algebras:
        enumeration = enumerate_S_sets(alg, bound, limit=0)
        upper = ideal_count_upper(alg.field.degree, bound) * 2 ** enumeration.free_norm2
        assert enumeration.count <= upper, alg.label
