"""Structured outcome of a symbolic window check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .scalar import Scalar

SCHEMA_VERSION = 1

# Preferred order of relation ids in serialized reports; others sort after.
_RELATION_ORDER = {name: idx for idx, name in enumerate(
    ["jacobi", "LL", "LW", "WW", "iso", "wsq", "first", "second", "boundary", "det",
     "rowprop", "family", "certificate", "integer"])}


def _index_key(indices):
    return tuple((0, x) if isinstance(x, int) else (1, str(x)) for x in indices)


@dataclass(frozen=True)
class Residual:
    relation: str
    indices: Tuple[Any, ...]
    value: Scalar

    def sort_key(self):
        return (_RELATION_ORDER.get(self.relation, len(_RELATION_ORDER)), self.relation,
                _index_key(self.indices))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relation": self.relation,
            "indices": [x if isinstance(x, int) else str(x) for x in self.indices],
            "residual": str(self.value),
        }


@dataclass
class VerificationReport:
    name: str
    window: Dict[str, Any] = field(default_factory=dict)
    residuals: List[Residual] = field(default_factory=list)
    checked: int = 0
    skipped: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.residuals

    def add(self, relation: str, indices, value: Scalar) -> None:
        """Record one assertion; a nonzero value becomes a residual."""
        self.checked += 1
        if not value.is_zero():
            self.residuals.append(Residual(relation, tuple(indices), value))

    def fail(self, relation: str, indices, value: Scalar) -> None:
        self.residuals.append(Residual(relation, tuple(indices), value))

    def merge(self, other: "VerificationReport") -> None:
        self.residuals.extend(other.residuals)
        self.checked += other.checked
        self.skipped += other.skipped
        self.notes.extend(other.notes)

    def first(self) -> Optional[Residual]:
        ordered = self.sorted_residuals()
        return ordered[0] if ordered else None

    def sorted_residuals(self) -> List[Residual]:
        return sorted(self.residuals, key=Residual.sort_key)

    def to_dict(self, max_residuals: Optional[int] = None) -> Dict[str, Any]:
        res = self.sorted_residuals()
        shown = res if max_residuals is None else res[:max_residuals]
        return {
            "name": self.name,
            "passed": self.passed,
            "window": dict(self.window),
            "checked": self.checked,
            "skipped": self.skipped,
            "residual_count": len(res),
            "residuals": [r.to_dict() for r in shown],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked} checked, {self.skipped} skipped"
        if not self.passed:
            first = self.first()
            line += f", {len(self.residuals)} residuals (first {first.relation} at {first.indices})"
        return line
