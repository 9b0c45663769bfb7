"""Bounded answers and report types.

Homological dimensions over a finite-dimensional algebra need not be
finite, and a terminating program can only ever inspect finitely many
degrees.  Every dimension-like quantity is therefore reported as a
:class:`BoundedAnswer` carrying one of five statuses:

``exactly(n)``
    Certified value ``n`` (resolution terminated, or vanishing beyond the
    last nonzero degree was certified by termination/periodicity).
``zero_module``
    The argument was the zero module; by convention dimensions of the
    zero module are reported with this distinguished status.
``infinite(j, k)``
    Certified infinite via a (co)syzygy cycle witness: the j-th and k-th
    (co)syzygies are isomorphic (j < k) and the cycle forces the
    resolution to never terminate.  ``witness`` holds the isomorphism.
``plus_infinity(reason)``
    The quantity is an inf over an empty set (e.g. a cograde of a module
    all of whose Ext/Tor vanish, certified).
``unknown_beyond(bound)``
    Everything inspected up to ``bound`` is consistent with more than one
    answer; no certificate either way.

Comparisons against integers are provided for the certified statuses so
call sites can write ``ans.leq(n)`` and get a three-valued result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


EXACT = "exactly"
ZERO = "zero_module"
INFINITE = "infinite_by_periodicity"
PLUS_INF = "plus_infinity"
UNKNOWN = "unknown_beyond"
NO_RESOLUTION = "no_resolution"
NO_CORESOLUTION = "no_coresolution"


@dataclass(frozen=True)
class BoundedAnswer:
    status: str
    value: Optional[int] = None          # for EXACT
    bound: Optional[int] = None          # for UNKNOWN
    cycle: Optional[tuple[int, int]] = None  # for INFINITE: (j, k)
    reason: str = ""
    witness: Any = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def exactly(n: int, reason: str = "", witness: Any = None) -> "BoundedAnswer":
        return BoundedAnswer(EXACT, value=int(n), reason=reason, witness=witness)

    @staticmethod
    def zero_module(reason: str = "zero module") -> "BoundedAnswer":
        return BoundedAnswer(ZERO, reason=reason)

    @staticmethod
    def infinite(j: int, k: int, reason: str = "", witness: Any = None) -> "BoundedAnswer":
        return BoundedAnswer(INFINITE, cycle=(int(j), int(k)), reason=reason, witness=witness)

    @staticmethod
    def plus_infinity(reason: str = "") -> "BoundedAnswer":
        return BoundedAnswer(PLUS_INF, reason=reason)

    @staticmethod
    def unknown_beyond(bound: int, reason: str = "") -> "BoundedAnswer":
        return BoundedAnswer(UNKNOWN, bound=int(bound), reason=reason)

    @staticmethod
    def no_resolution(reason: str = "", witness: Any = None) -> "BoundedAnswer":
        # inf over the empty set of resolution lengths; a flavor of +inf
        return BoundedAnswer(NO_RESOLUTION, reason=reason, witness=witness)

    @staticmethod
    def no_coresolution(reason: str = "", witness: Any = None) -> "BoundedAnswer":
        return BoundedAnswer(NO_CORESOLUTION, reason=reason, witness=witness)

    # -- queries -------------------------------------------------------
    @property
    def is_certified(self) -> bool:
        return self.status != UNKNOWN

    @property
    def is_finite(self) -> Optional[bool]:
        if self.status in (EXACT, ZERO):
            return True
        if self.status == UNKNOWN:
            return None
        return False

    def leq(self, n: int) -> Optional[bool]:
        """Three-valued `value <= n`. ZERO counts as value 0 and the
        infinite statuses as +infinity."""
        if self.status == EXACT:
            return self.value <= n
        if self.status == ZERO:
            return 0 <= n
        if self.status in (INFINITE, PLUS_INF, NO_RESOLUTION, NO_CORESOLUTION):
            return False
        if self.bound is not None and self.bound >= n:
            # everything up to `bound` was inspected; if the answer were
            # <= n <= bound it would have been certified
            return False if self.reason.startswith("first-hit") else None
        return None

    def geq(self, n: int) -> Optional[bool]:
        if self.status == EXACT:
            return self.value >= n
        if self.status == ZERO:
            return 0 >= n
        if self.status == UNKNOWN:
            return None
        return True

    def __str__(self) -> str:
        if self.status == EXACT:
            return f"Exactly({self.value})"
        if self.status == ZERO:
            return "ZeroModule"
        if self.status == INFINITE:
            return f"InfiniteByPeriodicity{self.cycle}"
        if self.status == PLUS_INF:
            return "PlusInfinity"
        if self.status == NO_RESOLUTION:
            return "NoResolution"
        if self.status == NO_CORESOLUTION:
            return "NoCoresolution"
        return f"UnknownBeyond({self.bound})"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.value is not None:
            out["value"] = self.value
        if self.bound is not None:
            out["bound"] = self.bound
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class ConditionReport:
    """One checkable condition.

    ``pass`` and ``fail`` are certified.  ``verified_up_to`` means every
    degree inspected (up to the stated bound) was clean but no
    certificate rules out higher degrees; in this setting a failure is
    always exact once found, so there is no uncertain-failure state.
    """

    name: str
    verdict: str                 # "pass" | "fail" | "verified_up_to"
    detail: str = ""
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def holds(self) -> bool:
        """Not refuted: certified pass or clean up to the bound."""
        return self.verdict in ("pass", "verified_up_to")

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


@dataclass
class ClassReport:
    """Membership report for B_omega / A_omega / H / n-cotorsionfree."""

    cls: str
    verdict: str                     # "in" | "out" | "verified_up_to"
    conditions: list[ConditionReport] = field(default_factory=list)
    failing_condition: Optional[str] = None
    bound: Optional[int] = None

    @property
    def is_member(self) -> bool:
        return self.verdict == "in"

    @property
    def holds(self) -> bool:
        """Not refuted: certified member or clean up to the bound."""
        return self.verdict in ("in", "verified_up_to")

    def to_json(self) -> dict:
        return {
            "class": self.cls,
            "verdict": self.verdict,
            "failing_condition": self.failing_condition,
            "conditions": [c.to_json() for c in self.conditions],
            "bound": self.bound,
        }
