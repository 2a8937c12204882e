"""Violation records shared by all checkers, and the hypothesis exception."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One failed identity.

    ``condition`` is a short id such as ``"hom-Jacobi"``; ``witness`` holds
    the basis indices (0-based) at which the identity fails.
    """

    condition: str
    witness: tuple = ()
    detail: str = ""

    def as_dict(self) -> dict:
        return {"condition": self.condition, "witness": list(self.witness), "detail": self.detail}

    def __str__(self):
        w = ",".join(str(i) for i in self.witness)
        s = "%s at (%s)" % (self.condition, w)
        return s + (": " + self.detail if self.detail else "")


class HypothesisError(ValueError):
    """Raised when an operation's mathematical hypotheses are not met."""


def prefixed(prefix: str, report) -> list:
    return [Violation(prefix + ":" + v.condition, v.witness, v.detail) for v in report]


def conditions(report) -> set:
    return {v.condition for v in report}
