"""Exception taxonomy shared across the library.

Command-line mapping: PrsmError and subclasses exit with code 2 (bad input
or unsupported scale), verification failures exit with code 1.
"""


class PrsmError(Exception):
    """Base class for all library errors."""


class PolyParseError(PrsmError):
    """Malformed polynomial text; the message names the offending token."""


class DomainError(PrsmError):
    """An argument violates a documented precondition."""


class CapabilityError(PrsmError):
    """The request exceeds a documented size or range cap."""


class DegenerateSeedError(DomainError):
    """An all-zero register seed was supplied where a maximal-length
    sequence was requested; the zero state only emits zeros."""


class PeriodMismatchError(PrsmError):
    """The generated sequence does not have the full period 2^m - 1,
    which happens exactly when the feedback polynomial is not primitive."""


class ShiftAddViolation(PrsmError):
    """A sum of shifted copies of the sequence was neither zero nor a
    cyclic shift of the sequence itself; the input is not an m-sequence."""


class ConvergenceError(PrsmError):
    """An iterative eigenvalue sweep exceeded its iteration cap; the
    message carries a hash of the offending matrix for reproduction."""


class VerificationError(PrsmError):
    """A structural identity that the library promises to uphold failed
    on concrete data; the message carries the counterexample."""
