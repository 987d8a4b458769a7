"""Pass/fail accumulator shared by the sampling checks."""

from __future__ import annotations

import dataclasses
import json
from typing import Any


@dataclasses.dataclass
class Report:
    suite: str
    anchor: str
    seed: Any = 0
    cases: list[dict] = dataclasses.field(default_factory=list)

    def add(self, i: int, check: str, ok: bool, detail: str = "") -> bool:
        self.cases.append({"case": i, "check": check, "ok": bool(ok), "detail": detail})
        return bool(ok)

    def extend(self, other: Report) -> None:
        self.cases.extend(other.cases)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.cases if not c["ok"]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for c in self.cases:
            tally = out.setdefault(c["check"], [0, 0])
            tally[0 if c["ok"] else 1] += 1
        return out

    def to_json(self, transcripts: bool = True) -> dict:
        body = {
            "suite": self.suite,
            "anchor": self.anchor,
            "seed": self.seed,
            "passed": self.passed,
            "checks": {k: {"pass": p, "fail": f} for k, (p, f) in sorted(self.counts().items())},
            "failures": self.failures,
        }
        if transcripts:
            body["cases"] = self.cases
        return body

    def dumps(self, transcripts: bool = True) -> str:
        return json.dumps(self.to_json(transcripts), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}: {self.anchor}"]
        for k, (p, f) in sorted(self.counts().items()):
            lines.append(f"  {k}: {p} passed, {f} failed")
        return "\n".join(lines)
