"""Structured results of a single verification check."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Dict, List

_RELATIONS = {
    "<=": lambda value, bound, tol: value <= bound + tol,
    ">=": lambda value, bound, tol: value >= bound - tol,
    "==": lambda value, bound, tol: abs(value - bound) <= tol,
}


@dataclass(frozen=True)
class Bound:
    """A reference bound ``<quantity> <relation> <value>`` and where it comes from."""

    quantity: str
    relation: str
    value: float
    reference: str

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, computed: float, tol: float) -> bool:
        return bool(_RELATIONS[self.relation](computed, self.value, tol))

    def __str__(self) -> str:
        return f"{self.quantity} {self.relation} {self.value:.12g}  [{self.reference}]"


@dataclass
class VerificationReport:
    check_name: str
    parameters: Dict[str, Any]
    computed_values: Dict[str, float]
    bound: Bound
    passed: bool
    tolerance: float
    runtime_ms: float = 0.0
    notes: List[str] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    sweep: List[Dict[str, float]] = field(default_factory=list)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [
            f"[{status}] {self.check_name} ({self.runtime_ms:.1f} ms)",
            f"  params: {params}",
            f"  bound:  {self.bound}  (tol {self.tolerance:g})",
        ]
        for k, v in self.computed_values.items():
            lines.append(f"  {k} = {v:.15g}")
        lines.extend(f"  note: {n}" for n in self.notes)
        lines.extend(f"  flag: {f}" for f in self.flags)
        return "\n".join(lines)

    def sweep_csv(self) -> str:
        """CSV of the sweep rows; the first column is the swept parameter."""
        if not self.sweep:
            return ""
        names = list(self.sweep[0].keys())
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for row in self.sweep:
            writer.writerow([repr(float(row[k])) if isinstance(row[k], float) else row[k] for k in names])
        return buf.getvalue()
