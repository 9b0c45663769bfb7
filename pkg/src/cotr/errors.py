"""Exception taxonomy.

Every failure mode that callers are expected to branch on gets its own
class. Anything raised as InternalInvariantViolation (or its subclass
LiftingFailed) indicates that a construction the theory guarantees did
not verify numerically; the CLI maps those to exit code 3.
"""

from __future__ import annotations


class CotrError(Exception):
    """Base class for all package errors."""


class InputError(CotrError):
    """Malformed user input: files, flags, inconsistent shapes."""


class NotFiniteDimensional(CotrError):
    """A path-algebra quotient could not be certified finite dimensional
    within the configured length bound."""


class UnsupportedPresentation(CotrError):
    """The operation needs a quiver presentation (or equivalent structure)
    that the given algebra does not carry."""


class SearchExhausted(CotrError):
    """A bounded search (isomorphism, idempotent, ...) ran out of budget
    without reaching a decision."""


class EnumerationTooLarge(CotrError):
    """An exhaustive enumeration would exceed the configured cap."""


class PreconditionNotCertified(CotrError):
    """A hypothesis needed by a construction could not be certified within
    the bound (distinct from being certified false)."""


class HypothesisFailed(CotrError):
    """A stated hypothesis is certifiably false. `tag` names which one."""

    def __init__(self, tag: str, message: str = ""):
        self.tag = tag
        super().__init__(f"[{tag}] {message}" if message else tag)


class NotInjectiveComplex(CotrError):
    """The operation requires a complex of injective modules."""


class BoundExceeded(CotrError):
    """A resolution or scan hit its degree bound without the caller
    allowing an Unknown answer."""


class InternalInvariantViolation(CotrError):
    """A fact the theory guarantees failed to verify. Always a bug or a
    genuine counterexample; never swallowed."""


class LiftingFailed(InternalInvariantViolation):
    """A lift/extension that is guaranteed to exist had no solution."""
