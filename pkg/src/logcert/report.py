"""Structured verdicts shared by the certification and audit routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .sequences import format_exact

HOLDS = "holds-on-range"
FIRST_VIOLATION = "first-violation"
THRESHOLD = "threshold"
MIXED = "mixed"


@dataclass
class AnalysisReport:
    """Outcome of one certification/audit over an index range.

    A ``first-violation`` verdict always carries an exact witness that can be
    re-checked independently; a ``threshold`` verdict carries the minimal N
    from which the property holds.
    """

    subject: str
    prop: str
    verdict: str
    start: int
    end: int
    witness_index: Optional[int] = None
    witness: Optional[str] = None
    threshold: Optional[int] = None
    notes: str = ""
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_doc(self) -> dict:
        doc = {
            "subject": self.subject,
            "property": self.prop,
            "verdict": self.verdict,
            "range": [self.start, self.end],
        }
        if self.witness_index is not None:
            doc["witness_index"] = self.witness_index
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.threshold is not None:
            doc["threshold"] = self.threshold
        if self.notes:
            doc["notes"] = self.notes
        if self.details:
            doc["details"] = {k: _plain(v) for k, v in self.details.items()}
        return doc


def _plain(value):
    if isinstance(value, Fraction):
        return format_exact(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)
