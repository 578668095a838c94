"""Structured pass/fail reports shared by the library, the selftest, and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckRecord:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        detail = f" {self.detail}" if self.detail else ""
        return f"CHECK {self.name} {status}{detail}"


@dataclass
class Report:
    """An ordered list of named checks; overall status is the conjunction."""

    kind: str = "report"
    records: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.records.append(CheckRecord(name, bool(ok), detail))
        return self

    def extend(self, other: "Report", prefix: str = ""):
        for rec in other.records:
            self.records.append(CheckRecord(prefix + rec.name, rec.ok, rec.detail))
        return self

    @property
    def ok(self) -> bool:
        return all(rec.ok for rec in self.records)

    def first_failure(self) -> CheckRecord | None:
        return next((rec for rec in self.records if not rec.ok), None)

    def failures(self):
        return [rec for rec in self.records if not rec.ok]

    def lines(self, only_failures: bool = False):
        recs = self.failures() if only_failures else self.records
        return [rec.line() for rec in recs]

    def render(self, only_failures: bool = False) -> str:
        return "\n".join(self.lines(only_failures))

    def summary(self) -> str:
        bad = len(self.failures())
        total = len(self.records)
        status = "PASS" if bad == 0 else "FAIL"
        return f"{self.kind}: {status} ({total - bad}/{total} checks)"


@dataclass
class RunReport:
    """CLI-facing report: command echo, per-check records, tool version, digests."""

    command: str
    version: str
    records: list = field(default_factory=list)
    input_digests: dict = field(default_factory=dict)

    def merge(self, report: Report, prefix: str = ""):
        for rec in report.records:
            self.records.append(CheckRecord(prefix + rec.name, rec.ok, rec.detail))
        return self

    def add(self, name: str, ok: bool, detail: str = ""):
        self.records.append(CheckRecord(name, bool(ok), detail))
        return self

    @property
    def ok(self) -> bool:
        return all(rec.ok for rec in self.records)

    def render(self, machine: bool = False) -> str:
        if machine:
            body = [rec.line() for rec in sorted(self.records, key=lambda r: r.name)]
            return "\n".join(body)
        lines = [f"command: {self.command}", f"version: {self.version}"]
        for path, digest in sorted(self.input_digests.items()):
            lines.append(f"input: {path} sha256={digest}")
        for rec in sorted(self.records, key=lambda r: r.name):
            lines.append(rec.line())
        lines.append("status: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)
