"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EDCError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EDCError):
    """Raised for malformed or inconsistent input (CLI exit code 2)."""


class NotAPartialOrder(InputError):
    pass


class NotALattice(InputError):
    def __init__(self, message: str, pair: tuple[int, int]):
        super().__init__(message)
        self.pair = pair


class NotDistributive(InputError):
    def __init__(self, message: str, witness: tuple[int, int, int]):
        super().__init__(message)
        self.witness = witness


class NoBounds(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class KindMismatch(InputError):
    pass


class NotDisjoint(InputError):
    pass


class NotPrime(InputError):
    pass


class NotAClan(InputError):
    pass


class NotASubstructure(InputError):
    pass


class NotReflexiveSymmetric(InputError):
    pass


class FamilyNotClosed(InputError):
    def __init__(self, message: str, missing: int):
        super().__init__(message)
        self.missing = missing


class InvalidTopology(InputError):
    pass


class UnknownAxiom(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class TooLarge(EDCError):
    """A guardrail refused an exhaustive search; pass ``force=True`` to override."""


class GuardrailExceeded(TooLarge):
    pass


class EmptyPointClass(EDCError):
    pass


class ZeroRegion(EDCError):
    pass


class NoRelationMatched(EDCError):
    pass


class AxiomPrecheckFailed(EDCError):
    pass


class ConstructionMismatch(EDCError):
    """Two independent enumerations of the same point class disagree."""
