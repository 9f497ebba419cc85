"""Reports produced by the command line front end.

A report is plain data: the command echo, the model digest, an ordered list
of sections and a verdict. ``to_json`` is byte-stable for equal inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Section:
    name: str
    passed: bool
    data: dict = field(default_factory=dict)
    # failures in an expected-negative section are reported but do not fail the run
    expected_negative: bool = False
    header: tuple[str, ...] = ()
    rows: list[tuple] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def counts(self) -> bool:
        return not self.expected_negative

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "expected_negative": self.expected_negative,
            "data": self.data,
            "notes": list(self.notes),
        }


@dataclass
class Report:
    command: list[str]
    digest: str | None
    sections: list[Section] = field(default_factory=list)
    model: dict | None = None

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections if s.counts)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, section: Section) -> Section:
        self.sections.append(section)
        return section

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "command": list(self.command),
            "digest": self.digest,
            "sections": [s.to_dict() for s in self.sections],
            "verdict": self.verdict,
        }
        if self.model is not None:
            d["model"] = self.model
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        out = [f"command: {' '.join(self.command)}"]
        if self.digest:
            out.append(f"model:   sha256:{self.digest}")
        for s in self.sections:
            out.append("")
            flag = "pass" if s.passed else ("fail (informational)" if s.expected_negative else "FAIL")
            out.append(f"== {s.name}: {flag}")
            if s.header:
                out.extend(format_table(s.header, s.rows))
            for note in s.notes:
                out.append(f"  note: {note}")
        out.append("")
        out.append(f"verdict: {self.verdict}")
        return "\n".join(out) + "\n"


def format_table(header: tuple[str, ...], rows: list[tuple]) -> list[str]:
    cells = [tuple(str(c) for c in header)] + [tuple("" if c is None else str(c) for c in r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]

    def line(r: tuple) -> str:
        return "  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()

    return [line(cells[0]), "  " + "  ".join("-" * w for w in widths)] + [line(r) for r in cells[1:]]
