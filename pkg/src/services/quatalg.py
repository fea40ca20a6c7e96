"""
Quaternion algebra module: ramification data, the discriminant factor Φ(𝔇),
norm-2 ramified primes and type number upper bounds.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

from config.config import DEFAULT_CONSTANT_C, LEMMA_CONSTANT, STRICT_CLASS_BASE
from services.numfield import NumberField, PrimeIdeal, split_prime
from utils.verification import (
    AlgebraValidationError, ArithmeticVerificationError, InvariantCollector, whole_number,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuaternionAlgebra:
    """Quaternion algebra B over k, given by its ramified places."""

    label: str
    field: NumberField
    ram_inf: Tuple[int, ...]
    ram_f: Tuple[PrimeIdeal, ...]

    @property
    def r(self) -> int:
        """Ramified real places."""
        return len(self.ram_inf)

    @property
    def s(self) -> int:
        """Split real places."""
        return self.field.r1 - self.r

    @property
    def a(self) -> int:
        return self.s

    @property
    def b(self) -> int:
        return self.field.r2

    @property
    def is_cocompact(self) -> bool:
        return bool(self.ram_inf or self.ram_f)

    @property
    def is_totally_definite(self) -> bool:
        return self.s == 0 and self.field.r2 == 0

    @property
    def discriminant_norm(self) -> int:
        return math.prod(q.norm for q in self.ram_f)

    def to_record(self) -> Dict[str, Any]:
        ram_f = []
        for q in self.ram_f:
            position = split_prime(self.field, q.p).index(q)
            ram_f.append([q.p, position])
        return {
            "label": self.label,
            "field": self.field.label,
            "ram_inf": list(self.ram_inf),
            "ram_f": ram_f,
        }


@dataclass(frozen=True)
class TypeNumberBound:
    coarse: int
    refined: float
    coarse_le_refined: bool
    discriminant_hypothesis: bool  # d_k >= f(r1) = e^{4 r1} / e^{C}

    def to_record(self) -> Dict[str, Any]:
        return {
            "coarse": self.coarse,
            "refined": self.refined,
            "coarse_le_refined": self.coarse_le_refined,
            "discriminant_hypothesis": self.discriminant_hypothesis,
        }


def validate_algebra(
    field: NumberField,
    ram_inf: Sequence[int],
    ram_f_spec: Sequence[Sequence[int]],
    label: str = "",
) -> QuaternionAlgebra:
    """Resolve (p, index) ramification specs and enforce the ramification invariants."""
    label = label or f"{field.label}-algebra"
    check = InvariantCollector(label)

    if not isinstance(ram_inf, (list, tuple)) or not isinstance(ram_f_spec, (list, tuple)):
        check.add("malformed ramification", "ram_inf and ram_f must be lists")
        check.raise_if_failed(AlgebraValidationError)

    places = []
    for v in ram_inf:
        try:
            places.append(whole_number(v, "real place"))
        except ValueError as e:
            check.add("malformed ramification", str(e))
    places = tuple(places)
    check.require(len(set(places)) == len(places), "duplicate real places", f"{list(places)}")
    for v in places:
        check.require(0 <= v < field.r1, "real place out of range",
                      f"index {v} with r1={field.r1}")

    ram_f = []
    for spec in ram_f_spec:
        if not isinstance(spec, (list, tuple)) or len(spec) != 2:
            check.add("malformed ramification", f"ram_f entry {spec!r} is not a [p, index] pair")
            continue
        try:
            p, position = whole_number(spec[0], "p"), whole_number(spec[1], "index")
        except ValueError as e:
            check.add("malformed ramification", str(e))
            continue
        try:
            above = split_prime(field, p)
        except ArithmeticVerificationError as e:
            check.add("unresolvable prime", str(e))
            continue
        if check.require(0 <= position < len(above), "unresolvable prime",
                         f"p={p} has {len(above)} primes above it, index {position} requested"):
            ram_f.append(above[position])

    check.require(len(set(ram_f)) == len(ram_f), "duplicate primes",
                  ", ".join(q.label for q in ram_f))
    total = len(places) + len(ram_f)
    check.require(total % 2 == 0, "parity violation", f"|Ram(B)| = {total} is odd")
    check.raise_if_failed(AlgebraValidationError)

    algebra = QuaternionAlgebra(
        label=label,
        field=field,
        ram_inf=tuple(sorted(places)),
        ram_f=tuple(sorted(ram_f, key=PrimeIdeal.sort_key)),
    )
    logger.debug(
        f"Validated algebra {label}: Ram_inf={list(algebra.ram_inf)}, "
        f"Ram_f={[q.label for q in algebra.ram_f]}, cocompact={algebra.is_cocompact}"
    )
    return algebra


def phi_discriminant(alg: QuaternionAlgebra) -> Fraction:
    """Φ(𝔇) = N(𝔇) ∏_{𝔭|𝔇} (1 - 1/N(𝔭)), exactly."""
    value = Fraction(alg.discriminant_norm)
    for q in alg.ram_f:
        value *= 1 - Fraction(1, q.norm)
    return value


def omega2(alg: QuaternionAlgebra) -> int:
    """Number of ramified finite primes of norm 2."""
    return sum(1 for q in alg.ram_f if q.norm == 2)


def type_number_bound(alg: QuaternionAlgebra, constant_c: float = DEFAULT_CONSTANT_C) -> TypeNumberBound:
    """2^{r1} h_k (strict class field degree) and 242 (1.22)^{r1} d_k^{3/4}."""
    field = alg.field
    coarse = 2 ** field.r1 * field.h_k
    refined = LEMMA_CONSTANT * STRICT_CLASS_BASE ** field.r1 * field.d_k ** 0.75
    hypothesis = math.log(field.d_k) >= 4 * field.r1 - constant_c
    return TypeNumberBound(
        coarse=coarse,
        refined=refined,
        coarse_le_refined=coarse <= refined,
        discriminant_hypothesis=hypothesis,
    )
