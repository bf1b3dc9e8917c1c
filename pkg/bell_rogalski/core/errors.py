"""
core/errors.py

Exception hierarchy shared by every module.

Mathematical failures that are part of a check (an axiom that does not hold,
a relation that fails on a module table) are report entries, not exceptions.
Exceptions are reserved for malformed input, violated preconditions and
internal consistency failures.
"""
from __future__ import annotations

from typing import Optional


class BellRogalskiError(Exception):
    """Base class; `witness` carries the offending object in text form."""

    def __init__(self, message: str, witness: Optional[str] = None) -> None:
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        d: dict = {"error": str(self), "kind": type(self).__name__}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


class RingError(BellRogalskiError):
    """Malformed ring specification or polynomial."""


class RingMismatchError(BellRogalskiError):
    """Operands live over different rings."""


class ParseError(BellRogalskiError):
    """Unreadable datum file or polynomial text."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        if line is not None:
            message = f"line {line}, column {column or 0}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        d = super().to_dict()
        if self.line is not None:
            d["line"] = self.line
            d["column"] = self.column
        return d


class PointError(BellRogalskiError):
    """Rational point invalid for the ring (arity, zero on an invertible variable)."""


class AutomorphismError(BellRogalskiError):
    """Variable images outside the scaled affine-monomial class."""


class InexactDivisionError(BellRogalskiError):
    """Exact division left a nonzero remainder."""


class DatumError(BellRogalskiError):
    """Structurally malformed datum (shapes, ring references)."""


class MembershipError(BellRogalskiError):
    """A graded coefficient left its canonical ideal."""


class PreconditionError(BellRogalskiError):
    """An operation was called outside its domain."""


class SearchBoundError(BellRogalskiError):
    """A bounded search ran out of budget (not a proof of nonexistence)."""


class ConversionError(BellRogalskiError):
    """A datum could not be converted (non-principal ideal, non-scalar unit...)."""


class HypothesisError(BellRogalskiError):
    """A construction hypothesis failed; `witness` names the failing object."""


class UnsupportedError(BellRogalskiError):
    """Input outside the implemented class (reason in the message)."""


class PositiveDimensionalError(UnsupportedError):
    """A variety expected to be finite has positive dimension."""


class NonRationalLocusError(UnsupportedError):
    """A finite variety has points outside Q^N."""
