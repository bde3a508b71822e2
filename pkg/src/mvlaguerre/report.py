"""Identity-check records shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    identity: str
    paper_ref: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        return {
            "identity": self.identity,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "detail": self.detail,
        }


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)
