from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

RECORD_FIELDS = ["instance", "method", "seed", "best_score", "time_to_best_ms", "total_time_ms", "proven_optimal"]


@dataclass
class StopCondition:
    time_limit: float | None = None  # seconds on the run's clock
    target: int | None = None
    max_iterations: int | None = None


@dataclass
class RunRecord:
    instance: str
    method: str
    seed: int
    best_score: int
    time_to_best_ms: float
    total_time_ms: float
    proven_optimal: bool
    series: list[tuple[float, int]] = field(default_factory=list)
    best_color: np.ndarray | None = field(default=None, repr=False, compare=False)
    iterations: int = 0

    def row(self) -> dict:
        return {
            "instance": self.instance,
            "method": self.method,
            "seed": self.seed,
            "best_score": self.best_score,
            "time_to_best_ms": _ms(self.time_to_best_ms),
            "total_time_ms": _ms(self.total_time_ms),
            "proven_optimal": int(self.proven_optimal),
        }


def _ms(x: float) -> str:
    return f"{x:.3f}"


def ms(seconds: float) -> float:
    return round(seconds * 1000.0, 3)


def series_csv(record: RunRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["elapsed_ms", "best_score", "proven_optimal"])
    last = len(record.series) - 1
    for i, (t, s) in enumerate(record.series):
        w.writerow([_ms(t), s, int(record.proven_optimal) if i == last else 0])
    return buf.getvalue()


def write_series(record: RunRecord, path) -> None:
    Path(path).write_text(series_csv(record))


def write_records(records, path, append: bool = False) -> None:
    path = Path(path)
    new = not path.exists() or not append
    with path.open("a" if append else "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=RECORD_FIELDS, lineterminator="\n")
        if new:
            w.writeheader()
        for r in records:
            w.writerow(r.row())


def read_records(path) -> list[RunRecord]:
    out = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(
                RunRecord(
                    instance=row["instance"],
                    method=row["method"],
                    seed=int(row["seed"]),
                    best_score=int(row["best_score"]),
                    time_to_best_ms=float(row["time_to_best_ms"]),
                    total_time_ms=float(row["total_time_ms"]),
                    proven_optimal=bool(int(row["proven_optimal"])),
                )
            )
    return out
