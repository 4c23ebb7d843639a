"""
Error hierarchy for FluteType.

The CLI maps these onto exit codes:
- DomainError (and subclasses) -> 2
- PrecisionExhaustedError -> 3
- HypothesisRefusal -> 4
"""

from dataclasses import dataclass
from typing import List, Optional


class FluteTypeError(Exception):
    """Base class for every error raised by FluteType."""


class DomainError(FluteTypeError, ValueError):
    """An input lies outside the domain of an operation.

    Attributes:
        index: 1-based sequence index at fault, when there is one.
        path: Document path of the offending field, when parsing.
    """

    def __init__(self, message: str, index: Optional[int] = None, path: Optional[str] = None):
        super().__init__(message)
        self.index = index
        self.path = path


@dataclass
class Violation:
    """A single failed check on a descriptor."""
    index: Optional[int]
    code: str
    message: str

    def to_dict(self) -> dict:
        return {"index": self.index, "code": self.code, "message": self.message}


class ValidationFailure(DomainError):
    """One or more descriptor checks failed."""

    def __init__(self, violations: List[Violation]):
        first = violations[0]
        summary = "; ".join(v.message for v in violations)
        super().__init__(f"Descriptor invalid: {summary}", index=first.index)
        self.violations = violations


class SchemaError(DomainError):
    """A surface document does not match the input schema."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}", path=path)


class PrecisionExhaustedError(FluteTypeError, ArithmeticError):
    """Consecutive chain endpoints became indistinguishable at working precision."""

    def __init__(self, step: int, gap, precision_bits: int):
        self.step = step
        self.gap = gap
        self.precision_bits = precision_bits
        self.advice = f"raise --precision-bits above {precision_bits}"
        super().__init__(
            f"Endpoints indistinguishable at current precision at step {step} "
            f"(gap {gap}); {self.advice}"
        )


class HypothesisRefusal(FluteTypeError):
    """A hypothesis required by the requested classification does not hold.

    Attributes:
        index: 1-based index of the offending entry, when there is one.
        hypothesis: Short name of the failed hypothesis.
    """

    def __init__(self, message: str, hypothesis: str, index: Optional[int] = None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.index = index
