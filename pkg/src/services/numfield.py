"""
Number field module: polynomial invariants, prime splitting, Dedekind zeta
enclosures, ideal counting and the imaginary quadratic class number oracle.

Polynomials are integer coefficient sequences with the constant term first.
All polynomial and ideal arithmetic is exact; only zeta values are intervals.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy import Poly, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

from config.config import FIELD_REQUIRED_KEYS
from utils.interval import BoundedValue
from utils.verification import (
    ArithmeticVerificationError, FieldValidationError, InvalidPolynomialError,
    InvariantCollector, UnsplittablePrimeError, whole_number,
)

logger = logging.getLogger(__name__)

_x = symbols("x")


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of k above the rational prime p."""

    p: int
    e: int
    f: int
    norm: int
    # Factor of the defining polynomial mod p (constant term first, coefficients in [0, p)).
    # Empty for certified splittings, which are told apart by `tag`.
    residue: Tuple[int, ...] = ()
    tag: int = 0

    def sort_key(self) -> Tuple:
        return (self.norm, self.p, self.residue, self.tag)

    @property
    def label(self) -> str:
        if not self.residue:
            return f"({self.p})[{self.tag}]"
        return f"({self.p}, {_format_residue(self.residue)})"

    def to_record(self) -> Dict[str, Any]:
        return {"p": self.p, "e": self.e, "f": self.f, "norm": self.norm, "label": self.label}


def _format_residue(coeffs: Tuple[int, ...]) -> str:
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
        else:
            mono = "θ" if power == 1 else f"θ^{power}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class NumberField:
    """Certified field record with its computed cross-checks already applied."""

    label: str
    poly: Tuple[int, ...]
    degree: int
    r1: int
    r2: int
    d_k: int
    h_k: int
    reg_k: float
    omega_k: int
    index_sq: int
    bad_prime_splittings: Tuple[Tuple[int, Tuple[PrimeIdeal, ...]], ...] = ()

    @property
    def index(self) -> int:
        return math.isqrt(self.index_sq)

    @property
    def unit_rank(self) -> int:
        return self.r1 + self.r2 - 1

    def certified_splitting(self, p: int) -> Optional[Tuple[PrimeIdeal, ...]]:
        for prime, ideals in self.bad_prime_splittings:
            if prime == p:
                return ideals
        return None

    def to_record(self) -> Dict[str, Any]:
        record = {
            "label": self.label,
            "poly": list(self.poly),
            "r1": self.r1,
            "r2": self.r2,
            "d_k": self.d_k,
            "h_k": self.h_k,
            "reg_k": self.reg_k,
            "omega_k": self.omega_k,
            "index_sq": self.index_sq,
        }
        if self.bad_prime_splittings:
            record["bad_prime_splittings"] = {
                str(p): [[q.e, q.f] for q in ideals] for p, ideals in self.bad_prime_splittings
            }
        return record


# -- polynomial invariants --------------------------------------------------

def _as_poly(poly: Sequence[int], require_squarefree: bool) -> Poly:
    coeffs = [int(c) for c in poly]
    if len(coeffs) < 2:
        raise InvalidPolynomialError(f"degree 0 polynomial {coeffs} has no roots")
    if coeffs[-1] != 1:
        raise InvalidPolynomialError(f"polynomial {coeffs} is not monic (leading coefficient {coeffs[-1]})")
    f = Poly(list(reversed(coeffs)), _x, domain="ZZ")
    if require_squarefree and not f.is_sqf:
        raise InvalidPolynomialError(f"polynomial {coeffs} is not squarefree over the rationals")
    return f


def _sign(value) -> int:
    return int(sympy.sign(value))


def _sign_changes(signs: List[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def signature(poly: Sequence[int]) -> Tuple[int, int]:
    """(r1, r2) from a Sturm sequence evaluated at -inf and +inf."""
    f = _as_poly(poly, require_squarefree=True)
    chain = sympy.sturm(f.set_domain("QQ"))
    at_plus = [_sign(g.LC()) for g in chain]
    at_minus = [_sign(g.LC()) * (-1) ** g.degree() for g in chain]
    r1 = _sign_changes(at_minus) - _sign_changes(at_plus)
    n = f.degree()
    return r1, (n - r1) // 2


def poly_discriminant(poly: Sequence[int]) -> int:
    """Discriminant (-1)^{n(n-1)/2} Res(f, f') of a monic integer polynomial."""
    f = _as_poly(poly, require_squarefree=False)
    n = f.degree()
    if n == 1:
        return 1
    resultant = int(f.resultant(f.diff(_x)))
    return (-1) ** (n * (n - 1) // 2) * resultant


def is_fundamental_discriminant(d: int) -> bool:
    if d % 4 == 1:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(m)
    return False


def _is_squarefree(m: int) -> bool:
    return all(e == 1 for p, e in sympy.factorint(abs(m)).items())


# -- validation -------------------------------------------------------------

def _parse_splittings(
    raw: Mapping[Any, Any], n: int, index: int, check: InvariantCollector
) -> Tuple[Tuple[int, Tuple[PrimeIdeal, ...]], ...]:
    if not isinstance(raw, Mapping):
        check.add("certified splitting", f"expected an object keyed by prime, got {type(raw).__name__}")
        return ()
    keys = []
    for key in raw:
        try:
            keys.append((whole_number(key, "bad_prime_splittings key"), key))
        except ValueError as e:
            check.add("certified splitting", str(e))
    parsed = []
    for p, key in sorted(keys):
        if not check.require(bool(sympy.isprime(p)), "certified splitting", f"{p} is not prime"):
            continue
        check.require(index % p == 0, "certified splitting",
                      f"p={p} does not divide the index {index}; Dedekind's criterion applies")
        pairs = raw[key]
        if not isinstance(pairs, list) or not all(isinstance(pair, list) and len(pair) == 2 for pair in pairs):
            check.add("certified splitting", f"p={p}: expected a list of [e, f] pairs")
            continue
        ideals = []
        for tag, pair in enumerate(pairs):
            try:
                e, f = whole_number(pair[0], "e"), whole_number(pair[1], "f")
            except ValueError as err:
                check.add("certified splitting", f"p={p}: {err}")
                break
            check.require(e >= 1 and f >= 1, "certified splitting", f"p={p}: e={e}, f={f}")
            ideals.append(PrimeIdeal(p=p, e=e, f=f, norm=p ** f, tag=tag))
        total = sum(q.e * q.f for q in ideals)
        check.require(total == n, "certified splitting", f"p={p}: sum of e*f is {total}, degree is {n}")
        ideals.sort(key=PrimeIdeal.sort_key)
        parsed.append((p, tuple(ideals)))
    return tuple(parsed)


def validate_field(record: Mapping[str, Any]) -> NumberField:
    """Check every NumberField invariant; raise FieldValidationError naming all violations."""
    label = str(record.get("label", "<unlabelled>"))
    check = InvariantCollector(label)

    missing = FIELD_REQUIRED_KEYS - set(record)
    if missing:
        check.add("missing fields", ", ".join(sorted(missing)))
        check.raise_if_failed()

    try:
        if not isinstance(record["poly"], list):
            raise ValueError(f"poly={record['poly']!r} is not a coefficient list")
        coeffs = tuple(whole_number(c, "poly coefficient") for c in record["poly"])
        r1, r2 = whole_number(record["r1"], "r1"), whole_number(record["r2"], "r2")
        d_k, h_k = whole_number(record["d_k"], "d_k"), whole_number(record["h_k"], "h_k")
        omega_k = whole_number(record["omega_k"], "omega_k")
        if isinstance(record["reg_k"], bool):
            raise ValueError(f"reg_k={record['reg_k']!r} is not a number")
        reg_k = float(record["reg_k"])
        claimed_index_sq = whole_number(record["index_sq"], "index_sq") if "index_sq" in record else None
    except (TypeError, ValueError) as e:
        check.add("malformed value", str(e))
        check.raise_if_failed()

    try:
        sturm_r1, sturm_r2 = signature(coeffs)
        disc = poly_discriminant(coeffs)
    except InvalidPolynomialError as e:
        check.add("invalid polynomial", str(e))
        check.raise_if_failed()

    n = len(coeffs) - 1
    check.require(n == r1 + 2 * r2, "degree mismatch", f"n={n}, r1+2r2={r1 + 2 * r2}")
    check.require((r1, r2) == (sturm_r1, sturm_r2), "signature mismatch",
                  f"certified ({r1}, {r2}), Sturm count ({sturm_r1}, {sturm_r2})")
    check.require(_sign(disc) == (-1) ** r2, "discriminant sign mismatch",
                  f"disc(f)={disc}, r2={r2}")

    index_sq = 0
    if check.require(d_k >= 1, "discriminant mismatch", f"d_k={d_k} is not positive"):
        quotient, rest = divmod(abs(disc), d_k)
        if check.require(rest == 0, "discriminant mismatch",
                         f"|disc(f)|={abs(disc)} is not a multiple of d_k={d_k}"):
            index_sq = quotient
            if claimed_index_sq is not None:
                check.require(claimed_index_sq == quotient, "discriminant mismatch",
                              f"|disc(f)|={abs(disc)} != index_sq*d_k={claimed_index_sq * d_k}")
            check.require(math.isqrt(quotient) ** 2 == quotient, "non-square index",
                          f"index_sq={quotient}")
        check.require(((-1) ** r2 * d_k) % 4 in (0, 1), "Stickelberger congruence",
                      f"signed discriminant {(-1) ** r2 * d_k} is not 0 or 1 mod 4")

    check.require(h_k >= 1, "class number", f"h_k={h_k}")
    check.require(omega_k >= 2 and omega_k % 2 == 0, "roots of unity", f"omega_k={omega_k}")
    check.require(math.isfinite(reg_k) and reg_k > 0, "regulator", f"reg_k={reg_k}")

    splittings = ()
    if record.get("bad_prime_splittings"):
        splittings = _parse_splittings(record["bad_prime_splittings"], n, math.isqrt(index_sq), check)

    check.raise_if_failed()

    field = NumberField(
        label=label, poly=coeffs, degree=n, r1=r1, r2=r2, d_k=d_k, h_k=h_k,
        reg_k=reg_k, omega_k=omega_k, index_sq=index_sq, bad_prime_splittings=splittings,
    )

    if is_imaginary_quadratic(field):
        try:
            oracle = class_number_oracle(-d_k)
            check.require(oracle == h_k, "class number oracle mismatch",
                          f"certified h_k={h_k}, reduced forms give {oracle}")
        except ArithmeticVerificationError as e:
            check.add("class number oracle mismatch", str(e))
        check.raise_if_failed()

    logger.debug(f"Validated field {label}: n={n}, signature=({r1}, {r2}), d_k={d_k}")
    return field


def is_imaginary_quadratic(field: NumberField) -> bool:
    return field.degree == 2 and field.r2 == 1


# -- prime splitting --------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _dedekind_factors(poly: Tuple[int, ...], p: int) -> Tuple[PrimeIdeal, ...]:
    dense = gf_from_int_poly(list(reversed(poly)), p)
    _, factors = gf_factor(dense, p, ZZ)
    primes = []
    for g, e in factors:
        f = len(g) - 1
        residue = tuple(int(c) % p for c in reversed(g))
        primes.append(PrimeIdeal(p=p, e=int(e), f=f, norm=p ** f, residue=residue))
    primes.sort(key=PrimeIdeal.sort_key)
    total = sum(q.e * q.f for q in primes)
    if total != len(poly) - 1:
        raise ArithmeticVerificationError(f"splitting of {p} is incomplete: sum e*f = {total}")
    return tuple(primes)


def split_prime(field: NumberField, p: int) -> List[PrimeIdeal]:
    """Primes of k above p, ascending norm then canonical factor order."""
    if not sympy.isprime(p):
        raise ArithmeticVerificationError(f"{p} is not a rational prime")
    certified = field.certified_splitting(p)
    if certified is not None:
        return list(certified)
    if field.index % p == 0:
        raise UnsplittablePrimeError(field.label, p)
    return list(_dedekind_factors(field.poly, p))


@lru_cache(maxsize=256)
def primes_over(field: NumberField, bound: int) -> Tuple[PrimeIdeal, ...]:
    """Every prime ideal above a rational prime p <= bound."""
    ideals: List[PrimeIdeal] = []
    for p in sympy.primerange(2, bound + 1):
        ideals.extend(split_prime(field, int(p)))
    return tuple(ideals)


def prime_ideals_up_to(field: NumberField, bound: float) -> Tuple[PrimeIdeal, ...]:
    """Every prime ideal of norm <= bound, in canonical order."""
    if bound < 2:
        return ()
    limit = math.floor(bound)
    ideals = [q for q in primes_over(field, limit) if q.norm <= limit]
    return tuple(sorted(ideals, key=PrimeIdeal.sort_key))


# -- Dedekind zeta ------------------------------------------------------------

def zeta_tail_majorant(prime_bound: int, s: float) -> BoundedValue:
    """
    Enclosure of T(P, s), a bound on the per-degree log-contribution of all
    Euler factors above rational primes p > P.

    At s = 2 this is sum_{m>P} 1/(m(m-1)) = 1/P; otherwise the integral bound
    P^{1-s} / ((s-1)(1-2^{-s})).
    """
    P = BoundedValue.from_int(prime_bound)
    if s == 2:
        return 1 / P
    denom = BoundedValue.point(s - 1) * (1 - BoundedValue.point(2.0).pow_real(-s))
    return P.pow_real(1 - s) / denom


def dedekind_zeta(field: NumberField, s: float, prime_bound: int) -> BoundedValue:
    """Enclosure [Π, Π·exp(n·T(P, s))] of ζ_k(s) from the Euler product over p <= P."""
    if prime_bound < 2:
        raise ArithmeticVerificationError(f"prime bound must be at least 2, got {prime_bound}")
    if s <= 1:
        raise ArithmeticVerificationError(f"zeta enclosure needs s > 1, got {s}")

    product = BoundedValue.point(1.0)
    for q in primes_over(field, prime_bound):
        inverse_power = BoundedValue.from_int(q.norm).pow_real(-s)
        product = product / (1 - inverse_power)

    tail = (field.degree * zeta_tail_majorant(prime_bound, s)).exp()
    upper = (BoundedValue.point(product.hi) * tail).hi
    # every Euler factor is >= 1
    lower = max(product.lo, 1.0)
    logger.debug(f"zeta_{field.label}({s}) with P={prime_bound}: [{lower}, {upper}]")
    return BoundedValue(lower, upper)


# -- ideal counting -----------------------------------------------------------

def count_ideals(field: NumberField, bound: float) -> int:
    """Exact number of integral ideals of norm <= bound (the unit ideal included)."""
    if bound < 1:
        return 0
    limit = math.floor(bound)
    norms = [q.norm for q in prime_ideals_up_to(field, limit)]

    def extend(start: int, current: int) -> int:
        total = 0
        for i in range(start, len(norms)):
            m = current * norms[i]
            if m > limit:
                break
            while m <= limit:
                total += 1 + extend(i + 1, m)
                m *= norms[i]
        return total

    return 1 + extend(0, 1)


# -- class number oracle ------------------------------------------------------

def class_number_oracle(d: int) -> int:
    """h(d) by counting reduced forms (a, b, c), b^2 - 4ac = d, |b| <= a <= c."""
    if d >= 0:
        raise ArithmeticVerificationError(f"class number oracle needs d < 0, got {d}")
    if not is_fundamental_discriminant(d):
        raise ArithmeticVerificationError(f"{d} is not a fundamental discriminant")

    count = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            numerator = b * b - d
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            count += 1
        a += 1
    return count
