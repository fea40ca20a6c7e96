import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config.config import (
    DEFAULT_BRAUER_SIEGEL_S, DEFAULT_CONSTANT_C, DEFAULT_EPSILON, DEFAULT_JOBS, DEFAULT_PRIME_BOUND,
    DEFAULT_S_SET_LIMIT, EXIT_HARD_ERROR, EXIT_VALIDATION_FAILURE, HELP_TEXT, LOG_LEVEL,
    OUTPUT_FORMATS,
)
from handlers.handlers import (
    AlgebraHandlers, BoundsHandlers, CommandContext, CorpusHandlers, FieldHandlers, IdealHandlers,
)
from services.bounds import BoundsConfig
from services.corpus import ingest_corpus
from services.report import Report, emit
from utils.verification import (
    AlgebraValidationError, ArithmeticVerificationError, CorpusError, FieldValidationError,
)

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, CommandContext], None]


class CommandRegistry:
    """Two-level command table: group -> command -> (handler, argument spec)."""

    def __init__(self):
        self.commands: Dict[str, Dict[str, Tuple[Handler, str, Tuple[str, ...]]]] = {}

    def add_handler(self, group: str, name: str, handler: Handler, help: str, *arguments: str) -> None:
        self.commands.setdefault(group, {})[name] = (handler, help, arguments)

    def handler(self, group: str, name: str) -> Handler:
        return self.commands[group][name][0]


registry = CommandRegistry()

# Field commands
registry.add_handler("field", "info", FieldHandlers.info, "invariant table", "label?")
registry.add_handler("field", "zeta", FieldHandlers.zeta, "Dedekind zeta enclosure", "label", "s")
registry.add_handler("ideals", "count", IdealHandlers.count, "exact ideal count", "label", "norm_bound")

# Algebra commands
registry.add_handler("algebra", "covolume", AlgebraHandlers.covolume, "covolume interval", "algebra")
registry.add_handler("algebra", "typebound", AlgebraHandlers.typebound, "type number bounds", "algebra")

# Bound commands
registry.add_handler("bounds", "lemma31", BoundsHandlers.lemma31, "class number bound chain", "label?")
registry.add_handler("bounds", "odlyzko", BoundsHandlers.odlyzko, "discriminant bound diagnostic", "label?")
registry.add_handler("bounds", "vigneras", BoundsHandlers.vigneras, "Vignéras family chain", "algebra", "volume")
registry.add_handler("bounds", "minimal", BoundsHandlers.minimal, "minimal covolume chain", "algebra", "volume")
registry.add_handler("bounds", "maximal", BoundsHandlers.maximal, "maximal lattice chain", "algebra", "volume")

# Corpus commands
registry.add_handler("corpus", "verify", CorpusHandlers.verify, "validate and normalize the corpus", "output")


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def _add_argument(parser: argparse.ArgumentParser, spec: str) -> None:
    if spec in ("label", "label?"):
        parser.add_argument("--label", required=spec == "label", help="field label")
    elif spec == "algebra":
        parser.add_argument("--algebra", required=True, help="algebra label")
    elif spec == "s":
        parser.add_argument("--s", type=float, default=2.0, help="zeta argument s > 1 (default 2)")
    elif spec == "norm_bound":
        parser.add_argument("--norm-bound", dest="norm_bound", type=float, required=True)
    elif spec == "volume":
        parser.add_argument("--volume", type=float, default=None,
                            help="V (default: upper endpoint of the Γ¹ covolume)")
    elif spec == "output":
        parser.add_argument("--output", default=None, help="write the normalized corpus here")
    else:
        raise ValueError(f"unknown argument spec {spec!r}")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", default=None, help="corpus JSON (default: bundled starter corpus)")
    common.add_argument("--prime-bound", dest="prime_bound", type=_positive_int, default=DEFAULT_PRIME_BOUND)
    common.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    common.add_argument("--constant-C", dest="constant_C", type=float, default=DEFAULT_CONSTANT_C)
    common.add_argument("--strict", action="store_true",
                        help="reject unknown corpus keys; exit 3 on failed or flagged links")
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default="json")
    common.add_argument("--jobs", type=_positive_int, default=DEFAULT_JOBS)
    common.add_argument("--log-level", dest="log_level", type=str.upper, default=LOG_LEVEL,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli.py", description=HELP_TEXT, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    common = _common_flags()
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in registry.commands.items():
        group_parser = groups.add_parser(group)
        sub = group_parser.add_subparsers(dest="command", required=True)
        for name, (_, help_text, arguments) in commands.items():
            command_parser = sub.add_parser(name, parents=[common], help=help_text)
            for spec in arguments:
                _add_argument(command_parser, spec)
    return parser


def run_command(argv: Sequence[str]) -> Tuple[Report, str]:
    """Parse, ingest the corpus, dispatch; returns the report and the requested format."""
    args = build_parser().parse_args(list(argv))
    logging.getLogger().setLevel(args.log_level)
    report = Report(command=list(argv), strict=args.strict)

    try:
        config = BoundsConfig(
            C=args.constant_C,
            epsilon=args.epsilon,
            brauer_siegel_s=DEFAULT_BRAUER_SIEGEL_S,
            prime_bound=args.prime_bound,
            s_set_limit=DEFAULT_S_SET_LIMIT,
        )
        corpus = ingest_corpus(args.corpus, strict=args.strict)
        context = CommandContext(corpus=corpus, config=config, report=report, jobs=args.jobs)
        registry.handler(args.group, args.command)(args, context)
    except (CorpusError, FieldValidationError, AlgebraValidationError) as e:
        report.fail(str(e), EXIT_VALIDATION_FAILURE)
    except (ArithmeticVerificationError, OverflowError, OSError) as e:
        report.fail(str(e), EXIT_HARD_ERROR)

    return report, args.output_format


def main(argv: Optional[List[str]] = None) -> int:
    # Configure logging; stdout is reserved for the report
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=LOG_LEVEL,
        stream=sys.stderr,
    )
    # Reduce verbose logging from the numeric libraries
    logging.getLogger("sympy").setLevel(logging.WARNING)
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)

    report, output_format = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(emit(report, output_format))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
