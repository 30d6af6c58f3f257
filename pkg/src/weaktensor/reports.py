"""Deterministic witness reports.

One record per check, rendered as

    CHECK <name> RESULT <pass|fail|none|unknown|error> WITNESS <text>

The rendered report depends only on the inputs, never on timing, so two
runs on identical input are byte-identical; elapsed times are kept on
the records for optional diagnostics but stay out of the rendering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

VERDICTS = ("pass", "fail", "none", "unknown", "error")


@dataclass(frozen=True)
class CheckRecord:
    name: str
    verdict: str
    witness: str = ""
    elapsed: float = 0.0
    expected: str | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def matched(self) -> bool:
        return self.expected is None or self.expected == self.verdict

    def render(self) -> str:
        line = f"CHECK {self.name} RESULT {self.verdict} WITNESS {self.witness or '-'}"
        if self.expected is not None and not self.matched:
            line += f" [expected {self.expected}]"
        return line


@dataclass
class Report:
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    @property
    def all_expected(self) -> bool:
        return all(r.matched for r in self.records) and not any(
            r.verdict == "error" for r in self.records)

    def mismatches(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.matched or r.verdict == "error"]

    def render(self) -> str:
        lines = [r.render() for r in self.records]
        total = len(self.records)
        bad = len(self.mismatches())
        lines.append(f"SUMMARY checks={total} mismatches={bad}")
        return "\n".join(lines) + "\n"
