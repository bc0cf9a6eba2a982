"""Verification report records and their JSON-friendly serialization."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one named check.

    ``max_abs_error`` is 0.0 for exact passes and the worst observed float
    deviation on the numeric path; -1.0 marks an exact-arithmetic mismatch
    (no meaningful magnitude).
    """

    check_name: str
    mode: str
    status: str  # "pass" | "fail"
    decision_path: str  # "exact-symbolic" | "numeric-oracle"
    max_abs_error: float
    witness: str | None = None
    duration_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, include_timing: bool = False) -> dict:
        # Timing is excluded by default so identical (config, seed) runs
        # serialize byte-identically.
        out = {
            "check_name": self.check_name,
            "mode": self.mode,
            "status": self.status,
            "decision_path": self.decision_path,
            "max_abs_error": self.max_abs_error,
            "witness": self.witness,
        }
        if include_timing:
            out["duration_ms"] = self.duration_ms
        return out

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        err = f" max_err={self.max_abs_error:.3g}" if self.max_abs_error > 0 else ""
        wit = f" [{self.witness}]" if (self.witness and not self.passed) else ""
        return f"[{mark}] {self.check_name} ({self.mode}) via {self.decision_path}{err}{wit}"
