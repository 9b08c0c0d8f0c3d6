"""Structured check reports and quantifier budgets shared by all verifiers.

A ``Report`` is the single unit of output: one check, one field size, one
status, and deterministic witness content.  JSON rendering deliberately
omits ``elapsed_ms`` so identical runs are byte-identical.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
REPORT_ONLY = "report_only"
ERROR = "error"

MAX_WITNESSES_SHOWN = 20


@dataclass
class Report:
    check_id: str
    q: int
    status: str
    cases_checked: int = 0
    elapsed_ms: int = 0
    witnesses: list = field(default_factory=list)
    reading_notes: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, REPORT_ONLY)

    def to_dict(self, with_timing: bool = False) -> dict:
        d = {
            "check_id": self.check_id,
            "q": self.q,
            "status": self.status,
            "cases_checked": self.cases_checked,
            "witnesses": self.witnesses,
            "details": self.details,
        }
        if self.reading_notes is not None:
            d["reading_notes"] = self.reading_notes
        if with_timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self, with_timing: bool = False) -> str:
        return json.dumps(self.to_dict(with_timing=with_timing), sort_keys=True,
                          separators=(",", ":"))

    def text(self) -> str:
        head = f"{self.status.upper():>11}  {self.check_id:<16} q={self.q:<3} cases={self.cases_checked}"
        lines = [head]
        if self.reading_notes:
            lines.append(f"             note: {self.reading_notes}")
        for w in self.witnesses[:MAX_WITNESSES_SHOWN]:
            lines.append(f"             witness: {json.dumps(w, sort_keys=True)}")
        hidden = len(self.witnesses) - MAX_WITNESSES_SHOWN
        if hidden > 0:
            lines.append(f"             ... and {hidden} more witnesses")
        return "\n".join(lines)


@dataclass(frozen=True)
class Budget:
    """Quantifier budget: exhaustive sweep or deterministic seeded sampling."""

    mode: str = "exhaustive"  # "exhaustive" | "sample"
    samples: int = 0
    seed: int = 0

    @staticmethod
    def parse(text: str, seed: int = 0) -> "Budget":
        if text == "exhaustive":
            return Budget("exhaustive", 0, seed)
        if text.startswith("sample:"):
            n = int(text.split(":", 1)[1])
            if n <= 0:
                raise ValueError("sample budget must be positive")
            return Budget("sample", n, seed)
        raise ValueError(f"bad budget {text!r}; expected 'exhaustive' or 'sample:K'")

    @property
    def exhaustive(self) -> bool:
        return self.mode == "exhaustive"


EXHAUSTIVE = Budget()


class timed:
    """Context manager stamping elapsed milliseconds onto a report."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = int((time.perf_counter() - self._t0) * 1000)
        return False
