"""
Invariant verification module: error types and violation collection.
"""

from typing import Any, List, Optional


class ArithmeticVerificationError(ValueError):
    """Base class for every error raised by the verification services."""


class InvalidPolynomialError(ArithmeticVerificationError):
    """Polynomial is not monic, not squarefree, or has degree 0."""


class UnsplittablePrimeError(ArithmeticVerificationError):
    """Prime divides the index [O_k : Z[θ]] and no certified splitting was supplied."""

    def __init__(self, label: str, p: int):
        self.label = label
        self.p = p
        super().__init__(
            f"index-divisor prime without certified splitting: p={p} in field '{label}'"
        )


class BoundContractError(ArithmeticVerificationError):
    """A bound that follows from proven results was violated by the inputs."""


class _ViolationsError(ArithmeticVerificationError):
    """Error carrying every violated invariant, not only the first one."""

    kind = "validation"

    def __init__(self, label: str, violations: List[str]):
        self.label = label
        self.violations = list(violations)
        super().__init__(f"{self.kind} failed for '{label}': " + "; ".join(self.violations))


class FieldValidationError(_ViolationsError):
    kind = "field validation"


class AlgebraValidationError(_ViolationsError):
    kind = "algebra validation"


class CorpusError(ArithmeticVerificationError):
    """Corpus file cannot be ingested; `location` points at the offending entry."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InvariantCollector:
    """Collects named invariant violations for one record."""

    def __init__(self, label: str):
        self.label = label
        self.violations: List[str] = []

    def require(self, condition: bool, name: str, detail: str = "") -> bool:
        """Record `name` as violated unless `condition` holds."""
        if not condition:
            self.violations.append(f"{name} ({detail})" if detail else name)
        return condition

    def add(self, name: str, detail: str = "") -> None:
        self.require(False, name, detail)

    def raise_if_failed(self, error_cls=FieldValidationError) -> None:
        if self.violations:
            raise error_cls(self.label, self.violations)


def whole_number(value: Any, name: str) -> int:
    """Integer value of a corpus entry; floats must be whole and booleans are rejected."""
    if isinstance(value, bool):
        raise ValueError(f"{name}={value!r} is not an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise ValueError(f"{name}={value!r} is not an integer")
