"""Pass/fail records produced by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .matrix import Matrix

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
SKIPPED_BY_THEOREM = "skipped-by-theorem"


@dataclass(frozen=True)
class PropertyResult:
    """One checked property. A failure always carries a witness matrix."""

    id: str
    status: str
    witness: Matrix | None = None
    detail: str | None = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED, SKIPPED_BY_THEOREM):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failed property {self.id!r} needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def check(prop_id: str, ok: bool, witness: Matrix, detail: str | None = None) -> PropertyResult:
    """Build a result from a boolean; ``witness`` is attached only on failure."""
    if ok:
        return PropertyResult(prop_id, PASS)
    return PropertyResult(prop_id, FAIL, witness, detail)


@dataclass
class VerificationReport:
    instance: dict[str, Any] = field(default_factory=dict)
    results: list[PropertyResult] = field(default_factory=list)

    def add(self, result: PropertyResult) -> None:
        self.results.append(result)

    def extend(self, results) -> None:
        self.results.extend(results)

    def merge(self, other: VerificationReport, prefix: str = "") -> None:
        for r in other.results:
            self.results.append(PropertyResult(prefix + r.id, r.status, r.witness, r.detail))

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0, SKIPPED_BY_THEOREM: 0}
        for r in self.results:
            counts[r.status] += 1
        counts["total"] = len(self.results)
        return counts

    @property
    def failures(self) -> list[PropertyResult]:
        return [r for r in self.results if r.failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        from .io import matrix_to_dict

        entries = []
        for r in self.results:
            item: dict[str, Any] = {"id": r.id, "status": r.status}
            if r.witness is not None:
                item["witness"] = matrix_to_dict(r.witness)
            if r.detail:
                item["detail"] = r.detail
            entries.append(item)
        return {"instance": self.instance, "results": entries, "summary": self.summary}
