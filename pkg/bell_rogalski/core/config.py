"""
core/config.py

Shared dataclasses: RunConfig, CheckEntry, Report.

Environment variables:
  BR_WINDOW          Half-width of orbit windows          (default: 6)
  BR_KMAX            Hyperplane-condition sweep bound     (default: 12)
  BR_DEGREE_BOUND    choose_b combined degree bound       (default: 8)
  BR_VERIFY          Re-verify graded membership (0/1)    (default: 1)
  BR_TENSOR_WINDOW   Degree window of tensor checks       (default: 2)
  BR_MAX_WORKERS     Threads for per-axis scans           (default: 4)
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Optional

DEFAULT_WINDOW        = int(os.getenv("BR_WINDOW", "6"))
DEFAULT_KMAX          = int(os.getenv("BR_KMAX", "12"))
DEFAULT_DEGREE_BOUND  = int(os.getenv("BR_DEGREE_BOUND", "8"))
DEFAULT_VERIFY        = os.getenv("BR_VERIFY", "1") != "0"
DEFAULT_TENSOR_WINDOW = int(os.getenv("BR_TENSOR_WINDOW", "2"))
DEFAULT_MAX_WORKERS   = int(os.getenv("BR_MAX_WORKERS", "4"))


@dataclass
class RunConfig:
    """Tunables for one command (maps 1-to-1 to the CLI flags)."""
    window: int = DEFAULT_WINDOW
    kmax: int = DEFAULT_KMAX
    degree_bound: int = DEFAULT_DEGREE_BOUND
    verify: bool = DEFAULT_VERIFY
    tensor_window: int = DEFAULT_TENSOR_WINDOW
    max_workers: int = DEFAULT_MAX_WORKERS

    @classmethod
    def from_arguments(cls, arguments: dict[str, Any]) -> "RunConfig":
        cfg = cls()
        for name in ("window", "kmax", "degree_bound", "tensor_window", "max_workers"):
            if arguments.get(name) is not None:
                setattr(cfg, name, int(arguments[name]))
        if arguments.get("verify") is not None:
            cfg.verify = bool(arguments["verify"])
        return cfg


@dataclass
class CheckEntry:
    """One named check with its outcome and, on failure, a witness."""
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        d: dict = {"check": self.name, "passed": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d


def checks_passed(entries: list[CheckEntry]) -> bool:
    return all(e.passed for e in entries)


@dataclass
class Report:
    """Everything a command emits on standard output."""
    command: str
    fingerprint: str = ""
    status: str = "ok"          # ok | failed | error | SIMPLE | NOT_SIMPLE | INCONCLUSIVE
    result: dict = field(default_factory=dict)
    trail: list[dict] = field(default_factory=list)
    timing: Optional[float] = None

    def to_dict(self) -> dict:
        d: dict = {
            "command": self.command,
            "fingerprint": self.fingerprint,
            "status": self.status,
            "result": self.result,
            "trail": self.trail,
        }
        if self.timing is not None:
            d["timing_seconds"] = round(self.timing, 3)
        return d
