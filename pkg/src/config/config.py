"""
Configuration module for the arithmetic covolume verifier.
Contains all constants and configuration values.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()


def _env_number(name: str, default, cast=float):
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise ValueError(f"{name} environment variable is not a valid {cast.__name__}: {raw!r}")


# Defaults overridable from the environment (command-line flags override these)
DEFAULT_PRIME_BOUND = _env_number("ARITH_PRIME_BOUND", 10_000, int)
DEFAULT_CONSTANT_C = _env_number("ARITH_CONSTANT_C", 4.5)
DEFAULT_EPSILON = _env_number("ARITH_EPSILON", 0.5)
DEFAULT_BRAUER_SIEGEL_S = _env_number("ARITH_BRAUER_SIEGEL_S", 1.5)
DEFAULT_S_SET_LIMIT = _env_number("ARITH_S_SET_LIMIT", 10_000, int)
MAX_NORM_BOUND = _env_number("ARITH_MAX_NORM_BOUND", 1_000_000, int)
DEFAULT_JOBS = _env_number("ARITH_JOBS", 4, int)
LOG_LEVEL = os.getenv("ARITH_LOG_LEVEL", "WARNING").upper()

STARTER_CORPUS_PATH = Path(
    os.getenv("ARITH_CORPUS", str(Path(__file__).resolve().parent / "starter_corpus.json"))
)

# Corpus format
CORPUS_VERSION = "1.0"
FIELD_KEYS = {
    "label", "poly", "r1", "r2", "d_k", "h_k", "reg_k", "omega_k",
    "index_sq", "bad_prime_splittings",
}
FIELD_REQUIRED_KEYS = {"label", "poly", "r1", "r2", "d_k", "h_k", "reg_k", "omega_k"}
ALGEBRA_KEYS = {"label", "field", "ram_inf", "ram_f"}
CORPUS_KEYS = {"version", "fields", "algebras"}

# Euler–Mascheroni constant
GAMMA_EULER = 0.5772156649015329

# Class number bound constants
LEMMA_CONSTANT = 242
LEMMA_REAL_BASE = 1.64          # h_k <= 242 d_k^{3/4} / 1.64^{r1}
STRICT_CLASS_BASE = 1.22        # 2^{r1} / 1.64^{r1} <= 1.22^{r1}
MINIMAL_COVOLUME_BASE = 75      # V >= d_k^{3/4} / 75^n
MINIMAL_REAL_BASE = 25          # intermediate form 25^{r1} (8π²)^{r2} 3^n
MINIMAL_DEGREE_BASE = 3
BRAUER_SIEGEL_ZETA_BASE = 2.62  # ζ(1.5) < 2.62
FRIEDMAN_CONSTANT = 0.0031
FRIEDMAN_DEGREE_RATE = 0.241
FRIEDMAN_REAL_RATE = 0.497
BOREL_PRASAD_CONSTANT = 100     # h_k <= 100 (π/12)^n d_k

# Chain exponents
MINIMAL_DISCRIMINANT_EXPONENT = 22   # d_k <= V^22
MINIMAL_FAMILY_EXPONENT = 18         # 242 V^18
MAXIMAL_FAMILY_EXPONENT = 20         # 242 V^20
MAXIMAL_VOLUME_EXPONENT = 6          # (π²/6)^n V^6 / d_k^{3/11}

# Comparison slack, relative to the magnitude of the compared numbers
CHAIN_SLACK = 1e-12

# Report emission
SIGNIFICANT_DIGITS = 12
OUTPUT_FORMATS = ("json", "csv", "text")

# Exit codes
EXIT_OK = 0
EXIT_HARD_ERROR = 1
EXIT_VALIDATION_FAILURE = 2
EXIT_CHAIN_FAILURE = 3

# Link statuses
LINK_HOLDS = "holds"
LINK_FAILS = "fails"
LINK_FLAGGED = "flagged"
LINK_ASYMPTOTIC = "asymptotic"

# Text-format markers
STATUS_MARKERS = {
    LINK_HOLDS: "✅",
    LINK_FAILS: "❌",
    LINK_FLAGGED: "⚠️",
    LINK_ASYMPTOTIC: "⏳",
}

HELP_TEXT = """
Arithmetic covolume verifier

Field commands:
  field info      [--label ID]          invariant table (all fields without --label)
  field zeta      --label ID [--s S]    Dedekind zeta enclosure
  ideals count    --label ID --norm-bound X

Algebra commands:
  algebra covolume  --algebra ID        covolume interval, index bound, minimal covolume
  algebra typebound --algebra ID        type number upper bounds

Bound commands:
  bounds lemma31  [--label ID]          class number bound chain
  bounds odlyzko  [--label ID]          discriminant bound diagnostic
  bounds vigneras --algebra ID [--volume V]
  bounds minimal  --algebra ID [--volume V]
  bounds maximal  --algebra ID [--volume V]

Corpus commands:
  corpus verify   [--output PATH]       validate and emit the normalized corpus

Common flags: --corpus PATH, --prime-bound P, --epsilon E, --constant-C X,
              --strict, --format json|csv|text, --jobs N
"""

