"""Pass/fail records for named checks, serialised deterministically."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .coeff import Scalar

STATUSES = ("pass", "fail", "error")


def _plain(value: Any) -> Any:
    """Map exact values to JSON-friendly canonical forms."""
    if isinstance(value, (Scalar, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


@dataclass
class Report:
    check_name: str
    parameters: dict[str, Any] = field(default_factory=dict)
    status: str = "pass"
    details: list[dict[str, Any]] = field(default_factory=list)
    counterexample: dict[str, Any] | None = None
    timing: float = 0.0
    message: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def add(self, **record) -> None:
        self.details.append(record)

    def fail(self, counterexample: dict[str, Any], message: str | None = None) -> None:
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = counterexample
            if message:
                self.message = message

    def error(self, message: str) -> None:
        self.status = "error"
        self.message = message

    def absorb(self, other: "Report") -> None:
        """Fold a sub-report in: its summary goes to details, failures propagate."""
        self.details.append({"check": other.check_name, "parameters": other.parameters, "status": other.status})
        if other.status == "error" and self.status != "error":
            self.status = "error"
            self.message = f"{other.check_name}: {other.message}"
        elif other.status == "fail" and self.status == "pass":
            self.status = "fail"
            self.counterexample = {"check": other.check_name, **(other.counterexample or {})}

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "check": self.check_name,
            "parameters": {str(k): _plain(v) for k, v in self.parameters.items()},
            "status": self.status,
            "details": _plain(self.details),
            "counterexample": _plain(self.counterexample),
        }
        if self.message is not None:
            out["message"] = self.message
        if timing:
            out["timing"] = round(self.timing, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        line = f"[{self.status.upper()}] {self.check_name}"
        if self.parameters:
            line += " " + " ".join(f"{k}={_plain(v)}" for k, v in sorted(self.parameters.items()))
        if self.counterexample:
            line += f" counterexample={json.dumps(_plain(self.counterexample), sort_keys=True)}"
        if self.message:
            line += f" ({self.message})"
        return line


class Timer:
    """Context manager recording wall time on a report."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self._start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.timing += time.perf_counter() - self._start
        return False
