from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    """One line of a verification report.

    ``residual`` is a string for exact checks (the printed residual, ``"0"`` on
    success) and a float for numeric ones.
    """

    check_id: str
    passed: bool
    residual: Any = "0"
    detail: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {"check_id": self.check_id, "status": self.status, "residual": self.residual}
        if self.detail:
            out["detail"] = self.detail
        return out
