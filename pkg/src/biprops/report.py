"""Law-by-law reports with deterministic text and structured renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable


@dataclass
class LawResult:
    tag: str
    passed: bool = True
    configs: int = 0
    instances: int = 0
    witness: str | None = None
    note: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{self.tag:<34} {status} configs={self.configs} instances={self.instances}"
        if self.note:
            out += f" ({self.note})"
        if self.witness is not None:
            out += f" witness: {self.witness}"
        return out


@dataclass
class Report:
    title: str = ""
    laws: dict[str, LawResult] = field(default_factory=dict)

    def law(self, tag: str) -> LawResult:
        if tag not in self.laws:
            self.laws[tag] = LawResult(tag)
        return self.laws[tag]

    def config(self, tag: str, n: int = 1):
        self.law(tag).configs += n

    def check(self, tag: str, ok: bool, witness: Callable[[], str] | str | None = None) -> bool:
        """Record one instance; keep the first failing witness."""
        res = self.law(tag)
        res.instances += 1
        if not ok and res.passed:
            res.passed = False
            res.witness = witness() if callable(witness) else witness
        return ok

    def fail(self, tag: str, witness: str):
        self.check(tag, False, witness)

    def merge(self, other: "Report") -> "Report":
        for tag, res in other.laws.items():
            mine = self.law(tag)
            mine.configs += res.configs
            mine.instances += res.instances
            if not res.passed and mine.passed:
                mine.passed = False
                mine.witness = res.witness
            if res.note and not mine.note:
                mine.note = res.note
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.laws.values())

    def failures(self) -> list[str]:
        return [t for t, r in self.laws.items() if not r.passed]

    def __getitem__(self, tag: str) -> LawResult:
        return self.laws[tag]

    def __contains__(self, tag: str) -> bool:
        return tag in self.laws

    def text(self) -> str:
        lines = [f"# {self.title}"] if self.title else []
        lines.extend(r.line() for r in self.laws.values())
        lines.append(f"RESULT {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def structured(self) -> str:
        doc = {
            "title": self.title,
            "passed": self.passed,
            "laws": [
                {"tag": r.tag, "passed": r.passed, "configs": r.configs,
                 "instances": r.instances, "witness": r.witness, "note": r.note}
                for r in self.laws.values()
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=False)


def merge_reports(title: str, reports) -> Report:
    out = Report(title)
    for r in reports:
        out.merge(r)
    return out
