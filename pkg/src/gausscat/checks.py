from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional


@dataclass
class Check:
    """Outcome of one verification, as it appears in reports."""

    check: str
    ok: bool
    witness: Optional[Any] = None

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"check": self.check, "status": "ok" if self.ok else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def line(self) -> str:
        return f"{self.check}: {'ok' if self.ok else 'FAIL'}"
