"""Small result containers for named checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    residual: float = 0.0
    detail: str = ""


@dataclass
class Report:
    """An ordered collection of named checks."""

    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name, passed, residual=0.0, detail=""):
        self.checks.append(Check(name, bool(passed), float(residual), detail))

    def extend(self, other: "Report", prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.residual, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "checks": [
                {"name": c.name, "passed": c.passed, "residual": c.residual,
                 **({"detail": c.detail} if c.detail else {})}
                for c in self.checks
            ],
        }

    def lines(self):
        out = []
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f"  ({c.detail})" if c.detail else ""
            out.append(f"{mark} {c.name:<40} residual={c.residual:.3g}{extra}")
        return out
