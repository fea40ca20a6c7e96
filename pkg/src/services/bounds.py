"""
Bounds module: the class number lemma and its proof chain, discriminant
lower bound diagnostics, the ideal count bound, and link-by-link verifiers
for the three isospectral family bounds (Vignéras orbifolds, minimal
covolume lattices, maximal lattices).

Every verifier returns a ChainReport whose links carry their numeric lhs,
rhs and slack, so each holds flag can be recomputed from the report alone.
"""

import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, Iterable, Optional, Tuple

import mpmath

from config.config import (
    BOREL_PRASAD_CONSTANT, BRAUER_SIEGEL_ZETA_BASE, CHAIN_SLACK, DEFAULT_BRAUER_SIEGEL_S,
    DEFAULT_CONSTANT_C, DEFAULT_EPSILON, DEFAULT_PRIME_BOUND, DEFAULT_S_SET_LIMIT,
    FRIEDMAN_CONSTANT, FRIEDMAN_DEGREE_RATE, FRIEDMAN_REAL_RATE, GAMMA_EULER,
    LEMMA_CONSTANT, LEMMA_REAL_BASE, LINK_ASYMPTOTIC, LINK_FAILS, LINK_FLAGGED, LINK_HOLDS,
    MAXIMAL_FAMILY_EXPONENT, MAXIMAL_VOLUME_EXPONENT, MINIMAL_DISCRIMINANT_EXPONENT,
    MINIMAL_FAMILY_EXPONENT, STRICT_CLASS_BASE,
)
from services.covolume import (
    covolume_gamma1, enumerate_S_sets, minimal_covolume_lower, s_level_volume_ratio, volume_floor,
)
from services.numfield import NumberField, dedekind_zeta
from services.quatalg import QuaternionAlgebra, type_number_bound
from utils.interval import BoundedValue
from utils.verification import ArithmeticVerificationError

logger = logging.getLogger(__name__)

_ZETA_2 = math.pi ** 2 / 6


@dataclass(frozen=True)
class BoundsConfig:
    """Constants of the discriminant bound and the chain verifiers."""

    C: float = DEFAULT_CONSTANT_C
    C1: Optional[float] = None
    gamma_euler: float = GAMMA_EULER
    epsilon: float = DEFAULT_EPSILON
    brauer_siegel_s: float = DEFAULT_BRAUER_SIEGEL_S
    prime_bound: int = DEFAULT_PRIME_BOUND
    s_set_limit: int = DEFAULT_S_SET_LIMIT
    slack: float = CHAIN_SLACK

    def __post_init__(self):
        if not self.C > 0:
            raise ArithmeticVerificationError(f"Odlyzko constant C must be positive, got {self.C}")
        if not self.epsilon > 0:
            raise ArithmeticVerificationError(f"epsilon must be positive, got {self.epsilon}")
        if not self.brauer_siegel_s > 1:
            raise ArithmeticVerificationError(f"Brauer-Siegel s must exceed 1, got {self.brauer_siegel_s}")
        if self.prime_bound < 2:
            raise ArithmeticVerificationError(f"prime bound must be at least 2, got {self.prime_bound}")
        if self.C1 is None:
            object.__setattr__(self, "C1", math.exp(self.C))
        elif not math.isclose(self.C1, math.exp(self.C), rel_tol=1e-9):
            raise ArithmeticVerificationError(f"C1={self.C1} is not e^C for C={self.C}")

    def to_record(self) -> Dict[str, Any]:
        return {
            "C": self.C,
            "C1": self.C1,
            "gamma_euler": self.gamma_euler,
            "epsilon": self.epsilon,
            "brauer_siegel_s": self.brauer_siegel_s,
            "prime_bound": self.prime_bound,
            "slack": self.slack,
        }


@dataclass(frozen=True)
class ChainLink:
    name: str
    lhs: float
    rhs: float
    relation: str
    holds: bool
    status: str
    slack: float
    note: str = ""

    def to_record(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "holds": self.holds,
            "status": self.status,
            "slack": self.slack,
            "note": self.note,
        }


@dataclass(frozen=True)
class ChainReport:
    name: str
    links: Tuple[ChainLink, ...]
    inputs: Dict[str, Any] = dc_field(default_factory=dict, compare=False)
    notes: Tuple[str, ...] = ()
    data: Dict[str, Any] = dc_field(default_factory=dict, compare=False)

    @property
    def verdict(self) -> bool:
        return all(link.holds for link in self.links)

    def link(self, name: str) -> ChainLink:
        for candidate in self.links:
            if candidate.name == name:
                return candidate
        raise KeyError(name)

    def status_counts(self) -> Dict[str, int]:
        counts = {LINK_HOLDS: 0, LINK_FAILS: 0, LINK_FLAGGED: 0, LINK_ASYMPTOTIC: 0}
        for link in self.links:
            counts[link.status] += 1
        return counts

    def to_record(self) -> Dict[str, Any]:
        return {
            "chain": self.name,
            "verdict": self.verdict,
            "inputs": dict(self.inputs),
            "links": [link.to_record() for link in self.links],
            "notes": list(self.notes),
            "data": dict(self.data),
            "counts": self.status_counts(),
        }


@dataclass(frozen=True)
class OdlyzkoCheck:
    label: str
    holds: bool
    minimal_C: float
    log_d: float
    rhs: float

    def to_record(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "holds": self.holds,
            "minimal_C": self.minimal_C,
            "log_d": self.log_d,
            "rhs": self.rhs,
        }


# -- link evaluation ------------------------------------------------------------

def comparison_slack(lhs: float, rhs: float, slack: float = CHAIN_SLACK) -> float:
    magnitude = max(1.0, abs(lhs), abs(rhs))
    return slack * magnitude if math.isfinite(magnitude) else 0.0


def link_holds(lhs: float, rhs: float, relation: str, slack: float) -> bool:
    """The holds flag recomputed from emitted numbers."""
    if relation == "<=":
        return lhs <= rhs + slack
    if relation == ">=":
        return lhs + slack >= rhs
    raise ValueError(f"unknown relation {relation!r}")


def _link(
    name: str,
    lhs: float,
    rhs: float,
    relation: str,
    config: "BoundsConfig",
    hypothesis: bool = True,
    note: str = "",
    asymptotic: bool = False,
    flag_on_failure: bool = False,
    tolerance: float = 0.0,
) -> ChainLink:
    lhs, rhs = float(lhs), float(rhs)
    slack = comparison_slack(lhs, rhs, config.slack) + tolerance
    holds = link_holds(lhs, rhs, relation, slack)
    if not hypothesis or (flag_on_failure and not holds):
        status = LINK_FLAGGED
    elif holds:
        status = LINK_HOLDS
        note = ""
    elif asymptotic:
        status = LINK_ASYMPTOTIC
    else:
        status = LINK_FAILS
    if status == LINK_FLAGGED and note:
        logger.warning(f"{name}: {note}")
    return ChainLink(name=name, lhs=lhs, rhs=rhs, relation=relation, holds=holds,
                     status=status, slack=slack, note=note)


def _pow(base: float, exponent: float) -> float:
    try:
        return math.pow(base, exponent)
    except OverflowError:
        return math.inf


def _require_volume(volume: float) -> None:
    if not (volume > 0 and math.isfinite(volume)):
        raise ArithmeticVerificationError(f"volume V must be positive and finite, got {volume}")


# -- class number lemma ----------------------------------------------------------

def _brauer_siegel(field: NumberField, s: float, zeta_s: BoundedValue) -> BoundedValue:
    n, r1, r2 = field.degree, field.r1, field.r2
    with mpmath.workdps(30):
        gamma_s = BoundedValue.from_mpf(mpmath.gamma(s))
        gamma_half = BoundedValue.from_mpf(mpmath.gamma(mpmath.mpf(s) / 2))
        d_power = BoundedValue.from_mpf(mpmath.mpf(field.d_k) ** (mpmath.mpf(s) / 2))
        two_power = BoundedValue.from_mpf(mpmath.mpf(2) ** (r2 * mpmath.mpf(s)))
        pi_power = BoundedValue.from_mpf(mpmath.pi ** (n * mpmath.mpf(s) / 2))
    s_factor = BoundedValue.point(s) * (BoundedValue.point(s) - 1)
    numerator = field.omega_k * s_factor * gamma_s ** r2 * gamma_half ** r1 * zeta_s * d_power
    denominator = 2 ** r1 * BoundedValue.point(field.reg_k) * two_power * pi_power
    return numerator / denominator


def brauer_siegel_class_bound(field: NumberField, s: float, zeta_s: BoundedValue) -> BoundedValue:
    """
    ω_k s(s-1) Γ(s)^{r2} Γ(s/2)^{r1} ζ_k(s) d_k^{s/2} / (2^{r1} Reg_k 2^{r2 s} π^{ns/2}).

    Γ values come from mpmath at 30 digits and are enclosed one ulp outward.
    """
    if s <= 1:
        raise ArithmeticVerificationError(f"Brauer-Siegel bound needs s > 1 for the zeta tail, got {s}")
    return _brauer_siegel(field, s, zeta_s)


def rational_zeta_power(s: float, n: int) -> BoundedValue:
    """ζ(s)^n, the comparison majorant for ζ_k(s)."""
    with mpmath.workdps(30):
        return BoundedValue.from_mpf(mpmath.zeta(s) ** n)


def friedman_regulator_lower(field: NumberField) -> float:
    """0.0031 ω_k exp(0.241 n + 0.497 r1)."""
    value = FRIEDMAN_CONSTANT * field.omega_k * math.exp(
        FRIEDMAN_DEGREE_RATE * field.degree + FRIEDMAN_REAL_RATE * field.r1
    )
    if field.reg_k < value:
        logger.warning(f"{field.label}: certified Reg_k={field.reg_k} is below Friedman's bound {value:.6g}")
    return value


def class_number_bound(field: NumberField) -> float:
    """242 d_k^{3/4} / 1.64^{r1}."""
    value = LEMMA_CONSTANT * field.d_k ** 0.75 / LEMMA_REAL_BASE ** field.r1
    if field.h_k > value:
        logger.warning(f"{field.label}: certified h_k={field.h_k} exceeds the lemma bound {value:.6g}")
    return value


def lemma_simplified_bound(field: NumberField) -> float:
    """3 ω_k (2.62)^n d_k^{3/4} / (4 Reg_k 2^{3 r2/2} π^{3n/4}), the s = 1.5 form."""
    n = field.degree
    return (3 * field.omega_k * BRAUER_SIEGEL_ZETA_BASE ** n * field.d_k ** 0.75) / (
        4 * field.reg_k * 2 ** (1.5 * field.r2) * math.pi ** (0.75 * n)
    )


def lemma_sharp_bound(field: NumberField) -> float:
    """242 d_k^{3/4} / (1.64^{r1} 2^{3 r2/2})."""
    return LEMMA_CONSTANT * field.d_k ** 0.75 / (LEMMA_REAL_BASE ** field.r1 * 2 ** (1.5 * field.r2))


def borel_prasad_bound(field: NumberField) -> float:
    """100 (π/12)^n d_k."""
    return BOREL_PRASAD_CONSTANT * (math.pi / 12) ** field.degree * field.d_k


def lemma_chain(
    field: NumberField, config: BoundsConfig, zeta_s: Optional[BoundedValue] = None
) -> ChainReport:
    """Every step from the Brauer–Siegel expression down to h_k <= 242 d_k^{3/4}/1.64^{r1}."""
    s = config.brauer_siegel_s
    if zeta_s is None:
        zeta_s = dedekind_zeta(field, s, config.prime_bound)
    h = field.h_k
    brauer_siegel = brauer_siegel_class_bound(field, s, zeta_s)
    zeta_power = rational_zeta_power(s, field.degree)
    with mpmath.workdps(30):
        zeta_rational = float(mpmath.zeta(s))
    friedman = friedman_regulator_lower(field)
    lemma = class_number_bound(field)

    links = [
        _link("B1: h_k <= Brauer-Siegel(s)", h, brauer_siegel.hi, "<=", config),
        # the enclosure is wider than ζ_k(s) by at most its Euler product tail
        _link("Z1: zeta_k(s) <= zeta(s)^n", zeta_s.hi, zeta_power.hi, "<=", config,
              tolerance=zeta_s.hi - zeta_s.lo),
        _link("Z2: zeta(1.5) <= 2.62", zeta_rational, BRAUER_SIEGEL_ZETA_BASE, "<=", config,
              hypothesis=s == 1.5, note=f"the 2.62 estimate is stated for s = 1.5, not s = {s}"),
        _link("B2: h_k < simplified s=1.5 form", h, lemma_simplified_bound(field), "<=", config),
        _link("R1: Reg_k >= Friedman bound", field.reg_k, friedman, ">=", config),
        _link("B3: h_k <= 242 d^(3/4)/(1.64^r1 2^(3r2/2))", h, lemma_sharp_bound(field), "<=", config),
        _link("B4: h_k <= 242 d^(3/4)/1.64^r1", h, lemma, "<=", config),
        _link("B5: lemma bound <= 242 d^(3/4)", lemma, LEMMA_CONSTANT * field.d_k ** 0.75, "<=", config),
        _link("BP: h_k <= 100 (pi/12)^n d_k", h, borel_prasad_bound(field), "<=", config),
    ]
    return ChainReport(
        name="lemma31",
        links=tuple(links),
        inputs={"field": field.label, "config": config.to_record()},
        data={
            "brauer_siegel": brauer_siegel.to_pair(),
            "zeta_k_s": zeta_s.to_pair(),
            "friedman_lower": friedman,
            "class_number_bound": lemma,
        },
    )


# -- discriminant bounds and ideal counts ----------------------------------------

def odlyzko_check(field: NumberField, config: BoundsConfig) -> OdlyzkoCheck:
    """log d_k >= r1 + n(γ + log 4π) - C, and the smallest C making it true."""
    base = field.r1 + field.degree * (config.gamma_euler + math.log(4 * math.pi))
    log_d = math.log(field.d_k)
    minimal_c = base - log_d
    rhs = base - config.C
    return OdlyzkoCheck(label=field.label, holds=log_d >= rhs, minimal_C=minimal_c, log_d=log_d, rhs=rhs)


def odlyzko_survey(fields: Iterable[NumberField], config: BoundsConfig) -> Dict[str, Any]:
    """Per-field checks plus the least C valid for every field at once."""
    checks = sorted((odlyzko_check(f, config) for f in fields), key=lambda c: c.label)
    failing = [c.label for c in checks if not c.holds]
    for label in failing:
        logger.warning(f"{label}: Odlyzko bound fails with C={config.C}")
    return {
        "C": config.C,
        "checks": [c.to_record() for c in checks],
        "failing": failing,
        "corpus_minimal_C": max((c.minimal_C for c in checks), default=None),
    }


def ideal_count_upper(n: int, bound: float) -> float:
    """(π²/6)^n X², bounding the number of integral ideals of norm at most X."""
    if n < 1:
        raise ArithmeticVerificationError(f"degree must be positive, got {n}")
    if bound < 0:
        raise ArithmeticVerificationError(f"norm bound must be non-negative, got {bound}")
    return _ZETA_2 ** n * _pow(bound, 2)


# -- family bound chains -----------------------------------------------------------

def _odlyzko_note(check: OdlyzkoCheck, config: BoundsConfig) -> str:
    return (f"depends on the Odlyzko constant: C={config.C} is below this field's "
            f"minimal C={check.minimal_C:.6g}")


def vigneras_chain(
    field: NumberField, alg: QuaternionAlgebra, volume: float, config: BoundsConfig
) -> ChainReport:
    """Links of the bound V^{2+ε} for orbifolds from Vignéras' construction."""
    _require_volume(volume)
    n, r1, r2, d = field.degree, field.r1, field.r2, field.d_k
    odlyzko = odlyzko_check(field, config)
    odlyzko_note = "" if odlyzko.holds else _odlyzko_note(odlyzko, config)
    types = type_number_bound(alg, config.C)
    f_r1 = math.exp(4 * r1 - config.C)
    threshold = _pow(LEMMA_CONSTANT * config.C1 ** 2, 1 / config.epsilon)
    real_rank_note = f"outside the r1 > 1 hypothesis (r1 = {r1})"

    links = [
        _link("L1: 2^r1 h_k <= 242 (1.22)^r1 d^(3/4)", types.coarse, types.refined, "<=", config),
        _link("L2: log d_k >= 4 r1 - C", math.log(d), 4 * r1 - config.C, ">=", config,
              hypothesis=odlyzko.holds, note=odlyzko_note),
        _link("L2b: log d_k >= 4 r1 + 6 r2 - C", math.log(d), 4 * r1 + 6 * r2 - config.C, ">=", config,
              hypothesis=odlyzko.holds, note=odlyzko_note),
        _link("E33: V >= d^(3/2)/((4pi^2)^r1 (8pi^2)^r2)", volume, volume_floor(field).hi, ">=", config),
        _link("F: (1.22)^r1 <= f(r1)^(1/4)", STRICT_CLASS_BASE ** r1, f_r1 ** 0.25, "<=", config,
              hypothesis=r1 > 1, note=real_rank_note),
        _link("L3: 242 (1.22)^r1 d^(3/4) <= 242 d_k", types.refined, LEMMA_CONSTANT * d, "<=", config,
              hypothesis=r1 > 1 and odlyzko.holds,
              note=real_rank_note if r1 <= 1 else odlyzko_note),
        _link("L4: V C1 >= d^(1/2)", volume * config.C1, math.sqrt(d), ">=", config,
              hypothesis=odlyzko.holds, note=odlyzko_note),
        _link("L5: 242 d_k <= 242 C1^2 V^2", LEMMA_CONSTANT * d,
              LEMMA_CONSTANT * config.C1 ** 2 * _pow(volume, 2), "<=", config,
              hypothesis=odlyzko.holds, note=odlyzko_note),
        _link("L6: 242 C1^2 V^2 <= V^(2+eps)", volume, threshold, ">=", config,
              asymptotic=True, note="asymptotic, not yet in range"),
    ]

    notes = []
    if alg.is_totally_definite:
        notes.append("B is ramified at every archimedean place: no symmetric space, "
                     "outside Vignéras' construction")
    if not alg.ram_f:
        notes.append("Ram_f(B) is empty: isospectrality of the family is not guaranteed")
    return ChainReport(
        name="vigneras",
        links=tuple(links),
        inputs={"field": field.label, "algebra": alg.label, "V": volume, "config": config.to_record()},
        notes=tuple(notes),
        data={"threshold_V": threshold, "f_r1": f_r1, "minimal_C": odlyzko.minimal_C, "n": n},
    )


def minimal_chain(
    field: NumberField,
    alg: QuaternionAlgebra,
    volume: float,
    config: BoundsConfig,
    zeta: Optional[BoundedValue] = None,
) -> ChainReport:
    """Links of the bound 242 V^18 for minimal covolume orbifolds."""
    _require_volume(volume)
    if zeta is None:
        zeta = dedekind_zeta(field, 2, config.prime_bound)
    n, r1, d = field.degree, field.r1, field.d_k
    lower = minimal_covolume_lower(alg, zeta)
    refined = type_number_bound(alg, config.C).refined
    above_one = volume > 1
    log_v = math.log(volume)

    m3 = _link("M3: n <= 3 log V", n, 3 * log_v, "<=", config, hypothesis=above_one,
               note="chain requires V > 1")
    downstream = above_one and m3.holds
    downstream_note = ("requires V > 1" if not above_one
                       else "depends on M3 (3 log V >= n), which fails here")

    links = [
        _link("M1: V >= covolume lower bound", volume, lower.exact_form.lo, ">=", config),
        _link("M1b: lower bound >= d^(3/4)/(25^r1 (8pi^2)^r2 3^n)",
              lower.exact_form.lo, lower.intermediate, ">=", config),
        _link("M2: V >= d^(3/4)/75^n", volume, lower.simplified, ">=", config),
        m3,
        _link("M4: d_k <= V^22", d, _pow(volume, MINIMAL_DISCRIMINANT_EXPONENT), "<=", config,
              hypothesis=downstream, note=downstream_note),
        _link("M5: 242 (1.22)^r1 <= 242 V^(3/4)", LEMMA_CONSTANT * STRICT_CLASS_BASE ** r1,
              LEMMA_CONSTANT * _pow(volume, 0.75), "<=", config,
              hypothesis=downstream, note=downstream_note),
        _link("M6: 242 (1.22)^r1 d^(3/4) <= 242 V^18", refined,
              LEMMA_CONSTANT * _pow(volume, MINIMAL_FAMILY_EXPONENT), "<=", config,
              hypothesis=downstream, note=downstream_note),
    ]
    return ChainReport(
        name="minimal",
        links=tuple(links),
        inputs={"field": field.label, "algebra": alg.label, "V": volume, "config": config.to_record()},
        data={"minimal_covolume": lower.to_record(), "family_bound": refined},
    )


def maximal_chain(
    field: NumberField,
    alg: QuaternionAlgebra,
    volume: float,
    config: BoundsConfig,
    zeta: Optional[BoundedValue] = None,
) -> ChainReport:
    """Links of the bound 242 V^20 on maximal lattices of covolume at most V."""
    _require_volume(volume)
    if zeta is None:
        zeta = dedekind_zeta(field, 2, config.prime_bound)
    n, r1, d = field.degree, field.r1, field.d_k

    # vol(H/Γ_𝒪) is only known to lie between these endpoints
    v_prime = {
        "lower": minimal_covolume_lower(alg, zeta).exact_form.lo,
        "upper": covolume_gamma1(alg, zeta).value.hi,
    }
    bound = _pow(volume, 3) / d ** (3 / 22)
    enumeration = enumerate_S_sets(alg, bound, config.s_set_limit)
    count_upper = ideal_count_upper(n, bound)
    refined = type_number_bound(alg, config.C).refined
    combined = (LEMMA_CONSTANT * STRICT_CLASS_BASE ** r1 * _ZETA_2 ** n * d ** (21 / 44)
                * _pow(volume, MAXIMAL_VOLUME_EXPONENT))
    # worst listed S for vol(Γ_S)/vol(Γ) >= ∏_{N(𝔭)≠2} N(𝔭)^{1/3}
    worst_ratio = 0.0
    for S in enumeration.sets:
        ratio_lo, cube_roots = s_level_volume_ratio(S)
        worst_ratio = max(worst_ratio, cube_roots / float(ratio_lo))

    links = [
        _link("K1: #S <= (pi^2/6)^n X^2", enumeration.count, count_upper, "<=", config),
        _link("K1n2: #S <= 2^(free norm-2) (pi^2/6)^n X^2", enumeration.count,
              count_upper * 2 ** enumeration.free_norm2, "<=", config),
        _link("K2: #S * type bound <= 242 (1.22)^r1 (pi^2/6)^n d^(21/44) V^6",
              enumeration.count * refined, combined, "<=", config),
        _link("K6: prod N(p)^(1/3) <= prod (N(p)+1)/2 over listed S", worst_ratio, 1.0, "<=", config),
    ]
    for end, vp in v_prime.items():
        small_note = f"V' {end} endpoint {vp:.6g} <= 1"
        links += [
            _link(f"K0[{end}]: V' >= d^(1/22)", vp, d ** (1 / 22), ">=", config,
                  hypothesis=vp > 1, note=small_note),
            _link(f"K3[{end}]: e^n <= V'^3", math.exp(n), _pow(vp, 3), "<=", config,
                  hypothesis=vp > 1, note=small_note),
            _link(f"K3b[{end}]: (1.22)^r1 (pi^2/6)^n <= V'^3", STRICT_CLASS_BASE ** r1 * _ZETA_2 ** n,
                  _pow(vp, 3), "<=", config, hypothesis=vp > 1, note=small_note),
            _link(f"K4[{end}]: d^(21/44) <= V'^(21/2)", d ** (21 / 44), _pow(vp, 10.5), "<=", config,
                  hypothesis=vp > 1, note=small_note),
            _link(f"K5a[{end}]: V' <= V", vp, volume, "<=", config, flag_on_failure=True,
                  note=f"V is below this endpoint of vol(H/Gamma_O)"),
            _link(f"K5[{end}]: 242 V'^(27/2) V^6 <= 242 V^20",
                  LEMMA_CONSTANT * _pow(vp, 13.5) * _pow(volume, MAXIMAL_VOLUME_EXPONENT),
                  LEMMA_CONSTANT * _pow(volume, MAXIMAL_FAMILY_EXPONENT), "<=", config,
                  hypothesis=volume >= 1 and vp <= volume,
                  note="requires V >= 1 and V' <= V"),
        ]

    notes = []
    if bound < 1:
        notes.append(f"degenerate X = {bound:.6g} < 1: no admissible S")
    ratio = enumeration.count / count_upper if count_upper > 0 else None
    return ChainReport(
        name="maximal",
        links=tuple(links),
        inputs={"field": field.label, "algebra": alg.label, "V": volume, "config": config.to_record()},
        notes=tuple(notes),
        data={
            "X": bound,
            "s_count": enumeration.count,
            "ideal_count_upper": count_upper,
            "ratio": ratio,
            "free_norm2_primes": enumeration.free_norm2,
            "v_prime": dict(v_prime),
            "sets_preview": [s.to_record() for s in enumeration.sets[:20]],
            "family_bound": combined,
        },
    )
