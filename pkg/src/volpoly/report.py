"""Exhaustive realization sweeps over the discrete triple diagram.

A sweep walks every (A, B, C) in [0, N]^3 with AC <= B^2, realizes the triple
and relies on realize's built-in double verification.  Results can be dumped
as CSV plus a pair of summary figures.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .construct import realize

CHUNK = 256


@dataclass(frozen=True)
class SweepRow:
    A: int
    B: int
    C: int
    case: str


@dataclass(frozen=True)
class SweepReport:
    bound: int
    checked: int
    failures: tuple[tuple[int, int, int, str], ...]
    wall_time: float

    @property
    def ok(self) -> bool:
        return not self.failures


def admissible_triples(bound: int) -> list[tuple[int, int, int]]:
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    return [(A, B, C)
            for A in range(bound + 1)
            for B in range(bound + 1)
            for C in range(bound + 1)
            if A * C <= B * B]


def _sweep_chunk(triples: list[tuple[int, int, int]]):
    rows: list[SweepRow] = []
    failures: list[tuple[int, int, int, str]] = []
    for A, B, C in triples:
        try:
            result = realize(A, B, C)
            rows.append(SweepRow(A, B, C, result.case.value))
        except Exception as exc:  # noqa: BLE001 - a sweep must report, not die
            failures.append((A, B, C, f"{type(exc).__name__}: {exc}"))
    return rows, failures


def run_sweep(bound: int, parallel: bool = False) -> tuple[SweepReport, list[SweepRow]]:
    """Realize and verify every admissible triple up to the bound.

    The parallel path fans chunks out to worker processes; results are merged
    in triple order, so both paths produce identical reports.
    """
    triples = admissible_triples(bound)
    start = time.perf_counter()
    rows: list[SweepRow] = []
    failures: list[tuple[int, int, int, str]] = []
    if parallel and len(triples) > CHUNK:
        chunks = [triples[i:i + CHUNK] for i in range(0, len(triples), CHUNK)]
        with ProcessPoolExecutor() as pool:
            for part_rows, part_failures in pool.map(_sweep_chunk, chunks):
                rows.extend(part_rows)
                failures.extend(part_failures)
    else:
        rows, failures = _sweep_chunk(triples)
    wall = time.perf_counter() - start
    report = SweepReport(bound, len(triples), tuple(failures), wall)
    return report, rows


def write_report(directory: str | Path, report: SweepReport, rows: list[SweepRow]) -> list[Path]:
    """CSV of every checked triple plus two PNG summaries; returns written paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / "sweep.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["A", "B", "C", "case"])
        for row in rows:
            writer.writerow([row.A, row.B, row.C, row.case])
    written.append(csv_path)
    written.extend(_write_figures(out, report, rows))
    return written


def _write_figures(out: Path, report: SweepReport, rows: list[SweepRow]) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []

    fig, ax = plt.subplots(figsize=(6, 5))
    xs = [r.A * r.C for r in rows]
    ys = [r.B * r.B for r in rows]
    ax.scatter(xs, ys, s=6, alpha=0.4, linewidths=0)
    lim = max(ys, default=1)
    ax.plot([0, lim], [0, lim], color="firebrick", linewidth=1, label="B^2 = AC")
    ax.set_xlabel("A*C")
    ax.set_ylabel("B^2")
    ax.set_title(f"admissible triples up to {report.bound}: all on or above the boundary")
    ax.legend()
    fig.tight_layout()
    diagram = out / "diagram.png"
    fig.savefig(diagram, dpi=120)
    plt.close(fig)
    written.append(diagram)

    counts: dict[str, int] = {}
    for row in rows:
        counts[row.case] = counts.get(row.case, 0) + 1
    labels = sorted(counts)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(labels)), [counts[k] for k in labels], color="#27496d")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("triples")
    ax.set_title("construction used per triple")
    fig.tight_layout()
    cases = out / "cases.png"
    fig.savefig(cases, dpi=120)
    plt.close(fig)
    written.append(cases)
    return written
