"""Machine-readable verification outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one exact check over an index range."""

    claim_id: str
    n_max: int
    passed: bool
    counterexample: tuple[int, int] | None = None  # (index n, offending value)
    trunc_used: int = 0
    tag: str = "THEOREM"  # THEOREM | CONJECTURE | EMPIRICAL
    notes: str = ""

    def to_json(self) -> dict:
        d = {
            "claim_id": self.claim_id,
            "n_max": self.n_max,
            "status": "pass" if self.passed else "fail",
            "trunc_used": self.trunc_used,
            "tag": self.tag,
        }
        if self.counterexample is not None:
            d["counterexample"] = {
                "n": self.counterexample[0],
                "value": self.counterexample[1],
            }
        if self.notes:
            d["notes"] = self.notes
        return d


@dataclass(frozen=True)
class DensityCheckpoint:
    x: int
    count: int

    @property
    def proportion(self) -> float:
        return self.count / self.x


@dataclass(frozen=True)
class DensityReport:
    """Zero-proportion table for one series / modulus / residue."""

    series_id: str
    modulus: int
    residue: int
    checkpoints: tuple[DensityCheckpoint, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "series_id": self.series_id,
            "modulus": self.modulus,
            "residue": self.residue,
            "checkpoints": [
                {"X": c.x, "count": c.count, "proportion": c.proportion}
                for c in self.checkpoints
            ],
        }

    def csv_rows(self) -> list[tuple[int, int, float]]:
        return [(c.x, c.count, c.proportion) for c in self.checkpoints]
