"""
Command handlers module for the verifier CLI.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Tuple, TypeVar

from config.config import DEFAULT_JOBS
from services.bounds import (
    BoundsConfig, class_number_bound, friedman_regulator_lower, ideal_count_upper, lemma_chain,
    maximal_chain, minimal_chain, odlyzko_survey, vigneras_chain,
)
from services.corpus import CorpusFile, write_normalized
from services.covolume import covolume_gamma1, index_bound_gamma, minimal_covolume_lower
from services.numfield import (
    NumberField, class_number_oracle, count_ideals, dedekind_zeta, is_imaginary_quadratic, poly_discriminant,
    signature,
)
from services.quatalg import QuaternionAlgebra, omega2, phi_discriminant, type_number_bound
from services.report import Report

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class CommandContext:
    """Everything a handler needs: the validated corpus, bound constants and the report."""

    corpus: CorpusFile
    config: BoundsConfig
    report: Report
    jobs: int = DEFAULT_JOBS


def fan_out(fn: Callable[[Any], T], entries: Iterable[Any], jobs: int) -> List[T]:
    """Run `fn` over independent corpus entries; results keep the input order."""
    entries = list(entries)
    if jobs <= 1 or len(entries) <= 1:
        return [fn(e) for e in entries]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, entries))


def _selected_fields(args, context: CommandContext) -> Tuple[NumberField, ...]:
    if getattr(args, "label", None):
        return (context.corpus.field(args.label),)
    return context.corpus.fields


def _volume(args, alg: QuaternionAlgebra, zeta) -> float:
    """--volume, or the upper endpoint of vol(H/Γ¹_𝒪)."""
    if args.volume is not None:
        return args.volume
    return covolume_gamma1(alg, zeta).value.hi


class FieldHandlers:
    """Handles field commands."""

    @staticmethod
    def info(args, context: CommandContext) -> None:
        """Invariant table with the cross-checks each field passed."""

        def describe(field: NumberField) -> Tuple[str, dict]:
            checks = {
                "signature": signature(field.poly) == (field.r1, field.r2),
                "discriminant": abs(poly_discriminant(field.poly)) == field.index_sq * field.d_k,
                "stickelberger": ((-1) ** field.r2 * field.d_k) % 4 in (0, 1),
            }
            if is_imaginary_quadratic(field):
                checks["class_number_oracle"] = class_number_oracle(-field.d_k) == field.h_k
            data = {
                **field.to_record(),
                "degree": field.degree,
                "index": field.index,
                "unit_rank": field.unit_rank,
                "checks": checks,
                "friedman_lower": friedman_regulator_lower(field),
                "class_number_bound": class_number_bound(field),
            }
            return field.label, data

        for label, data in fan_out(describe, _selected_fields(args, context), context.jobs):
            context.report.add_item(label, "field", data)

    @staticmethod
    def zeta(args, context: CommandContext) -> None:
        field = context.corpus.field(args.label)
        enclosure = dedekind_zeta(field, args.s, context.config.prime_bound)
        context.report.add_item(field.label, "zeta", {
            "s": args.s,
            "prime_bound": context.config.prime_bound,
            "enclosure": enclosure.to_pair(),
            "width": enclosure.width,
        })


class IdealHandlers:
    """Handles ideal counting commands."""

    @staticmethod
    def count(args, context: CommandContext) -> None:
        field = context.corpus.field(args.label)
        exact = count_ideals(field, args.norm_bound)
        upper = ideal_count_upper(field.degree, args.norm_bound)
        context.report.add_item(field.label, "ideal_count", {
            "norm_bound": args.norm_bound,
            "count": exact,
            "upper_bound": upper,
            "within_bound": exact <= upper,
        })


class AlgebraHandlers:
    """Handles algebra commands."""

    @staticmethod
    def covolume(args, context: CommandContext) -> None:
        alg = context.corpus.algebra(args.algebra)
        zeta = dedekind_zeta(alg.field, 2, context.config.prime_bound)
        result = covolume_gamma1(alg, zeta)
        minimal = minimal_covolume_lower(alg, zeta)
        norm2 = omega2(alg)
        phi = phi_discriminant(alg)
        context.report.add_item(alg.label, "covolume", {
            "field": alg.field.label,
            "cocompact": alg.is_cocompact,
            "totally_definite": alg.is_totally_definite,
            "covolume_gamma1": result.to_record(),
            "index_bound": index_bound_gamma(alg),
            "minimal_covolume": minimal.to_record(),
            "phi": phi,
            "omega2": norm2,
            # both are consumed by the minimal covolume bound
            "phi_lower_check": phi / 2 ** len(alg.ram_f) >= Fraction(1, 2) ** norm2,
            "zeta_lower_check": zeta.lo >= float(Fraction(4, 3) ** norm2),
        })

    @staticmethod
    def typebound(args, context: CommandContext) -> None:
        alg = context.corpus.algebra(args.algebra)
        bound = type_number_bound(alg, context.config.C)
        context.report.add_item(alg.label, "typebound", bound.to_record())


class BoundsHandlers:
    """Handles the bound and chain commands."""

    @staticmethod
    def lemma31(args, context: CommandContext) -> None:
        config = context.config
        chains = fan_out(lambda f: lemma_chain(f, config), _selected_fields(args, context), context.jobs)
        for chain in chains:
            context.report.add_chain(chain.inputs["field"], chain)

    @staticmethod
    def odlyzko(args, context: CommandContext) -> None:
        survey = odlyzko_survey(_selected_fields(args, context), context.config)
        if survey["failing"]:
            logger.warning(
                f"C={context.config.C} fails for {len(survey['failing'])} fields; "
                f"least valid C is {survey['corpus_minimal_C']:.6g}"
            )
        context.report.add_item(args.label or "corpus", "odlyzko", survey)

    @staticmethod
    def _chain_inputs(args, context: CommandContext):
        alg = context.corpus.algebra(args.algebra)
        zeta = dedekind_zeta(alg.field, 2, context.config.prime_bound)
        return alg, zeta, _volume(args, alg, zeta)

    @staticmethod
    def vigneras(args, context: CommandContext) -> None:
        alg, _, volume = BoundsHandlers._chain_inputs(args, context)
        context.report.add_chain(alg.label, vigneras_chain(alg.field, alg, volume, context.config))

    @staticmethod
    def minimal(args, context: CommandContext) -> None:
        alg, zeta, volume = BoundsHandlers._chain_inputs(args, context)
        chain = minimal_chain(alg.field, alg, volume, context.config, zeta=zeta)
        context.report.add_chain(alg.label, chain)

    @staticmethod
    def maximal(args, context: CommandContext) -> None:
        alg, zeta, volume = BoundsHandlers._chain_inputs(args, context)
        chain = maximal_chain(alg.field, alg, volume, context.config, zeta=zeta)
        context.report.add_chain(alg.label, chain)


class CorpusHandlers:
    """Handles corpus maintenance commands."""

    @staticmethod
    def verify(args, context: CommandContext) -> None:
        corpus = context.corpus
        output: Optional[str] = getattr(args, "output", None)
        if output:
            write_normalized(corpus, Path(output))
            logger.info(f"Normalized corpus written to {output}")
        context.report.add_item("corpus", "corpus", {
            "source": corpus.source,
            "fields": len(corpus.fields),
            "algebras": len(corpus.algebras),
            "normalized": corpus.to_record(),
        })
