"""Structured pass/fail reports shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    params: dict = field(default_factory=dict)
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "params": {k: str(v) for k, v in self.params.items()},
            "detail": self.detail,
        }


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, params: dict | None = None, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), params or {}, detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def render_text(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] suite {self.suite}"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            extra = f"  {c.detail}" if (c.detail and not c.passed) else ""
            params = " ".join(f"{k}={v}" for k, v in c.params.items())
            lines.append(f"  [{status}] {c.name} {params}{extra}".rstrip())
        return "\n".join(lines)
