"""Tri-state verdicts and search results carried by every decision procedure.

A definitive verdict is only ever issued for a finitely certified statement;
each verdict records the bounds it was checked at and enough witness data to
re-verify independently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class TriState(enum.Enum):
    PROVED = "Proved"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass
class Verdict:
    """Outcome of a decision procedure plus its certificate."""

    procedure: str
    state: TriState
    reason: str = ""
    certificate: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.state is TriState.PROVED

    @property
    def refuted(self) -> bool:
        return self.state is TriState.REFUTED

    def to_json(self) -> dict:
        return {
            "procedure": self.procedure,
            "verdict": str(self.state),
            "reason": self.reason,
            "certificate": self.certificate,
            "certified_bounds": self.bounds,
        }

    def __str__(self):
        s = f"{self.procedure}: {self.state}"
        return s + (f" ({self.reason})" if self.reason else "")


class SearchOutcome(enum.Enum):
    FOUND = "Found"
    NONE_EXISTS = "NoneExists"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass
class SearchResult:
    """Outcome of a retraction/section search.

    FOUND carries the verified witness morphism; NONE_EXISTS carries a
    replayable finite constraint system; UNKNOWN carries the reason and the
    bound at which the search gave up.
    """

    outcome: SearchOutcome
    witness: object = None
    certificate: object = None
    reason: str = ""
    bound: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is SearchOutcome.FOUND

    @property
    def none_exists(self) -> bool:
        return self.outcome is SearchOutcome.NONE_EXISTS

    def to_json(self) -> dict:
        out = {"outcome": str(self.outcome), "bound": self.bound}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.certificate is not None and hasattr(self.certificate, "to_json"):
            out["certificate"] = self.certificate.to_json()
        return out

    def __str__(self):
        if self.found:
            return f"Found({self.witness})"
        if self.none_exists:
            return f"NoneExists(bound={self.bound})"
        return f"Unknown({self.reason})"
