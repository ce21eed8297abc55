from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a verification run; serializes to a stable JSON layout."""

    axiom: str
    mode: str
    tuples_checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **info: Any) -> None:
        self.failures.append(info)

    def merge(self, other: "Report") -> "Report":
        self.tuples_checked += other.tuples_checked
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        self.details.update(other.details)
        return self

    def to_json_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "axiom": self.axiom,
            "mode": self.mode,
            "tuples_checked": self.tuples_checked,
            "passed": self.passed,
            "failures": self.failures,
        }
        if self.notes:
            obj["notes"] = self.notes
        if self.details:
            obj["details"] = self.details
        return obj

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_obj(), indent=indent, sort_keys=True, default=str)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.axiom} [{self.mode}] tuples={self.tuples_checked} failures={len(self.failures)}"
