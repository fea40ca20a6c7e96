"""
Covolume module: volume of H/Γ¹_𝒪, the index bound and minimal covolume
lower bound for Γ_𝒪, Maclachlan–Reid index intervals for Γ_{S,𝒪}, and
exact enumeration of admissible S-sets.
"""

import logging
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Sequence, Tuple

from config.config import (
    DEFAULT_S_SET_LIMIT, MAX_NORM_BOUND, MINIMAL_COVOLUME_BASE, MINIMAL_DEGREE_BASE, MINIMAL_REAL_BASE,
)
from services.numfield import NumberField, PrimeIdeal, prime_ideals_up_to, split_prime
from services.quatalg import QuaternionAlgebra, phi_discriminant
from utils.interval import BoundedValue
from utils.verification import ArithmeticVerificationError, BoundContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CovolumeResult:
    value: BoundedValue
    formula_inputs: Dict[str, Any] = dc_field(hash=False, compare=False)

    def __post_init__(self):
        if self.value.lo <= 0:
            raise BoundContractError(f"covolume must be positive, got {self.value!r}")

    def to_record(self) -> Dict[str, Any]:
        return {"value": self.value.to_pair(), "formula_inputs": dict(self.formula_inputs)}


@dataclass(frozen=True)
class MinimalCovolume:
    exact_form: BoundedValue
    simplified: float
    intermediate: float  # d_k^{3/4} / (25^{r1} (8π²)^{r2} 3^n)
    index_bound: int

    def to_record(self) -> Dict[str, Any]:
        return {
            "exact_form": self.exact_form.to_pair(),
            "intermediate": self.intermediate,
            "simplified": self.simplified,
            "index_bound": self.index_bound,
        }


@dataclass(frozen=True)
class SLevelSet:
    """Finite set S of primes disjoint from Ram_f(B)."""

    primes: Tuple[PrimeIdeal, ...] = ()

    @property
    def m_range(self) -> Tuple[int, int]:
        return 0, len(self.primes)

    def to_record(self) -> List[str]:
        return [q.label for q in self.primes]


@dataclass(frozen=True)
class SEnumeration:
    count: int
    sets: Tuple[SLevelSet, ...]
    truncated: bool
    free_norm2: int  # norm-2 primes outside Ram_f, unconstrained by the product bound

    def to_record(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "truncated": self.truncated,
            "free_norm2_primes": self.free_norm2,
            "sets": [s.to_record() for s in self.sets],
        }


# -- Γ¹_𝒪 ---------------------------------------------------------------------

def _archimedean_factor(field: NumberField) -> BoundedValue:
    """(4π²)^{r1} (8π²)^{r2}."""
    pi_sq = BoundedValue.pi() ** 2
    return (4 * pi_sq) ** field.r1 * (8 * pi_sq) ** field.r2


def volume_floor(field: NumberField) -> BoundedValue:
    """d_k^{3/2} / ((4π²)^{r1} (8π²)^{r2}), the covolume floor with ζ_k(2), Φ, (4π)^s at 1."""
    d = BoundedValue.from_int(field.d_k)
    return d * d.sqrt() / _archimedean_factor(field)


def covolume_gamma1(alg: QuaternionAlgebra, zeta: BoundedValue) -> CovolumeResult:
    """2 (4π)^s d_k^{3/2} ζ_k(2) Φ(𝔇) / ((4π²)^{r1} (8π²)^{r2}) over the zeta enclosure."""
    field = alg.field
    phi = phi_discriminant(alg)
    # exact part first: 2 · 4^s · Φ(𝔇)
    rational = BoundedValue.from_fraction(2 * Fraction(4) ** alg.s * phi)
    pi_part = BoundedValue.pi() ** alg.s
    value = rational * pi_part * volume_floor(field) * zeta
    inputs = {
        "d_k": field.d_k,
        "s": alg.s,
        "r1": field.r1,
        "r2": field.r2,
        "phi": str(phi),
        "zeta_k_2": zeta.to_pair(),
    }
    return CovolumeResult(value=value, formula_inputs=inputs)


# -- Γ_𝒪 ----------------------------------------------------------------------

def index_bound_gamma(alg: QuaternionAlgebra) -> int:
    """[Γ_𝒪 : Γ¹_𝒪] <= 2^{n + |Ram_f|} h_k."""
    return 2 ** (alg.field.degree + len(alg.ram_f)) * alg.field.h_k


def minimal_covolume_lower(alg: QuaternionAlgebra, zeta: BoundedValue) -> MinimalCovolume:
    """Lower bound for vol(H/Γ_𝒪) and its simplified form d_k^{3/4}/75^n."""
    field = alg.field
    index = index_bound_gamma(alg)
    exact_form = covolume_gamma1(alg, zeta).value / index
    simplified = field.d_k ** 0.75 / MINIMAL_COVOLUME_BASE ** field.degree
    pi_sq = math.pi ** 2
    intermediate = field.d_k ** 0.75 / (
        MINIMAL_REAL_BASE ** field.r1 * (8 * pi_sq) ** field.r2 * MINIMAL_DEGREE_BASE ** field.degree
    )
    if exact_form.lo < simplified:
        raise BoundContractError(
            f"{alg.label}: covolume lower bound {exact_form.lo:.12g} is below "
            f"d_k^(3/4)/75^n = {simplified:.12g}; certified field data is inconsistent"
        )
    return MinimalCovolume(
        exact_form=exact_form, simplified=simplified, intermediate=intermediate, index_bound=index
    )


# -- Γ_{S,𝒪} ------------------------------------------------------------------

def make_s_level_set(alg: QuaternionAlgebra, primes: Sequence[PrimeIdeal]) -> SLevelSet:
    ordered = tuple(sorted(primes, key=PrimeIdeal.sort_key))
    if len(set(ordered)) != len(ordered):
        raise ArithmeticVerificationError(f"S contains repeated primes: {[q.label for q in ordered]}")
    clash = [q.label for q in ordered if q in alg.ram_f]
    if clash:
        raise ArithmeticVerificationError(f"S must be disjoint from Ram_f(B); shared: {clash}")
    return SLevelSet(primes=ordered)


def gamma_S_index_interval(S: SLevelSet) -> Tuple[Fraction, Fraction]:
    """[Γ_𝒪 : Γ_{S,𝒪}] = 2^{-m} ∏ (N(𝔭)+1) for an unknown 0 <= m <= |S|."""
    hi = Fraction(math.prod(q.norm + 1 for q in S.primes))
    lo = hi / 2 ** len(S.primes)
    return lo, hi


def s_level_volume_ratio(S: SLevelSet) -> Tuple[Fraction, float]:
    """
    (∏ (N(𝔭)+1)/2, ∏_{N(𝔭)≠2} N(𝔭)^{1/3}): the smallest possible covolume
    ratio vol(Γ_{S,𝒪})/vol(Γ_𝒪) and the power of the norm product it dominates.
    """
    ratio, _ = gamma_S_index_interval(S)
    cube_root_product = math.prod(q.norm for q in S.primes if q.norm != 2) ** (1 / 3)
    return ratio, cube_root_product


def enumerate_S_sets(
    alg: QuaternionAlgebra, bound: float, limit: int = DEFAULT_S_SET_LIMIT
) -> SEnumeration:
    """
    All S disjoint from Ram_f with ∏_{𝔭∈S, N(𝔭)≠2} N(𝔭) <= bound.

    Norm-2 primes outside Ram_f are free: each admissible set of constrained
    primes combines with every subset of them. The count is exact; at most
    `limit` sets are kept.
    """
    if bound < 1:
        return SEnumeration(count=0, sets=(), truncated=False, free_norm2=0)
    if bound > MAX_NORM_BOUND:
        raise ArithmeticVerificationError(
            f"norm bound X={bound:.6g} exceeds the enumeration ceiling {MAX_NORM_BOUND} (ARITH_MAX_NORM_BOUND)"
        )

    free = tuple(q for q in split_prime(alg.field, 2) if q.norm == 2 and q not in alg.ram_f)
    eligible = [q for q in prime_ideals_up_to(alg.field, bound) if q.norm != 2 and q not in alg.ram_f]
    limit_norm = math.floor(bound)
    free_subsets = [c for k in range(len(free) + 1) for c in combinations(free, k)]

    sets: List[SLevelSet] = []
    cores = 0

    def extend(start: int, product: int, chosen: Tuple[PrimeIdeal, ...]) -> None:
        nonlocal cores
        cores += 1
        for extra in free_subsets:
            if len(sets) >= limit:
                break
            sets.append(make_s_level_set(alg, chosen + extra))
        for i in range(start, len(eligible)):
            q = eligible[i]
            if product * q.norm > limit_norm:
                break
            extend(i + 1, product * q.norm, chosen + (q,))

    extend(0, 1, ())
    count = cores * len(free_subsets)

    logger.debug(f"{alg.label}: {count} S-sets with constrained norm product <= {bound}")
    return SEnumeration(count=count, sets=tuple(sets), truncated=count > len(sets), free_norm2=len(free))
