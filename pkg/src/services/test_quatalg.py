"""
Tests for ramification validation, Φ(𝔇) and the type number bounds.
"""

from fractions import Fraction

import pytest

from services.quatalg import omega2, phi_discriminant, type_number_bound, validate_algebra
from utils.verification import AlgebraValidationError


def test_gaussian_algebra_ramification(qi, qi_b23):
    assert [q.norm for q in qi_b23.ram_f] == [2, 9]
    assert qi_b23.discriminant_norm == 18
    assert qi_b23.is_cocompact
    assert not qi_b23.is_totally_definite
    assert (qi_b23.r, qi_b23.s, qi_b23.b) == (0, 0, 1)


def test_phi_is_exact(qi_b23, starter):
    assert phi_discriminant(qi_b23) == Fraction(8)
    assert phi_discriminant(starter.algebra("Q-B6")) == Fraction(2)
    assert phi_discriminant(starter.algebra("Q5-definite")) == Fraction(1)


def test_phi_lower_bound_over_norm_two_primes(starter):
    for alg in starter.algebras:
        ratio = phi_discriminant(alg) / 2 ** len(alg.ram_f)
        assert ratio >= Fraction(1, 2) ** omega2(alg)


def test_norm_two_ramified_primes(qi_b23, starter):
    assert omega2(qi_b23) == 1
    assert omega2(starter.algebra("Q-B6")) == 1
    assert omega2(starter.algebra("Q5-definite")) == 0


def test_parity_violation(qi):
    with pytest.raises(AlgebraValidationError, match="parity violation"):
        validate_algebra(qi, [], [[2, 0]], label="odd")


def test_bad_place_and_prime_indices(starter):
    sqrt5 = starter.field("Qsqrt5")
    with pytest.raises(AlgebraValidationError, match="real place out of range"):
        validate_algebra(sqrt5, [0, 2], [])
    with pytest.raises(AlgebraValidationError, match="unresolvable prime"):
        validate_algebra(sqrt5, [0], [[11, 5]])
    with pytest.raises(AlgebraValidationError, match="duplicate primes"):
        validate_algebra(starter.field("Qi"), [], [[5, 1], [5, 1]])


def test_totally_definite_algebra(starter):
    definite = starter.algebra("Q5-definite")
    assert definite.is_totally_definite
    assert definite.s == 0 and definite.r == 2
    assert definite.to_record() == {"label": "Q5-definite", "field": "Qsqrt5", "ram_inf": [0, 1], "ram_f": []}


def test_ram_f_round_trips_through_split_positions(qi_b23):
    assert qi_b23.to_record()["ram_f"] == [[2, 0], [3, 0]]


def test_type_number_bounds(qi_b23, starter):
    bound = type_number_bound(qi_b23)
    assert bound.coarse == 1
    assert bound.refined == pytest.approx(684.48, rel=1e-4)
    assert bound.coarse_le_refined

    definite = type_number_bound(starter.algebra("Q5-definite"))
    assert definite.coarse == 4
    assert definite.refined == pytest.approx(1204.38, rel=1e-4)

    rational = type_number_bound(starter.algebra("Q-B6"))
    assert rational.refined == pytest.approx(295.24, rel=1e-4)
    assert rational.discriminant_hypothesis


def test_coarse_below_refined_when_discriminant_hypothesis_holds(starter):
    for alg in starter.algebras:
        bound = type_number_bound(alg)
        if bound.discriminant_hypothesis:
            assert bound.coarse_le_refined


def test_malformed_ramification_is_collected(qi, starter):
    with pytest.raises(AlgebraValidationError, match=r"ram_f entry \[2\] is not a \[p, index\] pair"):
        validate_algebra(qi, [], [[2]])
    with pytest.raises(AlgebraValidationError, match="p=2.5 is not an integer"):
        validate_algebra(qi, [], [[2.5, 0], [3, 0]])
    with pytest.raises(AlgebraValidationError, match="must be lists"):
        validate_algebra(qi, None, [])
    with pytest.raises(AlgebraValidationError, match="real place=True"):
        validate_algebra(starter.field("Qsqrt5"), [True, 1], [])


def test_phi_is_multiplicative_over_disjoint_ramification(qi):
    pieces = [[[2, 0], [3, 0]], [[5, 0], [5, 1]], [[13, 0], [17, 1]]]
    for i, first in enumerate(pieces):
        for second in pieces[i + 1:]:
            union = validate_algebra(qi, [], first + second)
            expected = phi_discriminant(validate_algebra(qi, [], first)) * phi_discriminant(
                validate_algebra(qi, [], second))
            assert phi_discriminant(union) == expected
    assert phi_discriminant(validate_algebra(qi, [], pieces[0] + pieces[1])) == Fraction(128)
