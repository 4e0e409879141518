"""Census of crosspatch pseudotour counts, persisted as line-delimited JSON.

The database is a plain text file: one version header line followed by
one JSON record per board, keyed by the canonical board descriptor.
Re-running a census skips boards already present, so repeated runs leave
the file byte-identical; there is no external database.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

from . import __version__
from .board import Board, Topology
from .crosses import CrossTable
from .engine import (
    BudgetExhaustedError,
    canonical_form,
    cycle_decomposition,
    enumerate_red_sets,
    EnumerationOptions,
    realize_graph,
)
from .hgraph import verification_report

HEADER = "# crosspatch census v1"


class CensusFileError(ValueError):
    """The census file is not a valid v1 database."""


@dataclass
class CensusRecord:
    key: str
    board: dict
    raw_count: int
    symmetry_count: int
    cycle_histogram: dict[str, int]
    lemma_1_2_ok: bool
    theorem_1_ok: bool
    partial: bool
    runtime_s: float
    version: str = __version__
    extended: bool = False

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "board": self.board,
            "raw_count": self.raw_count,
            "symmetry_count": self.symmetry_count,
            "cycle_histogram": self.cycle_histogram,
            "lemma_1_2_ok": self.lemma_1_2_ok,
            "theorem_1_ok": self.theorem_1_ok,
            "partial": self.partial,
            "runtime_s": self.runtime_s,
            "version": self.version,
            "extended": self.extended,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CensusRecord":
        return cls(**data)


def census_record(board: Board, node_budget: int | None = None) -> CensusRecord:
    """Enumerate one board and fold the results into a census record."""
    table = CrossTable(board)
    start = time.perf_counter()
    histogram: dict[str, int] = {}
    canon: set = set()
    lemma_ok = True
    theorem_ok = True
    raw = 0
    partial = False
    try:
        for reds in enumerate_red_sets(table, EnumerationOptions(node_budget=node_budget)):
            raw += 1
            g = realize_graph(table, reds)
            count = cycle_decomposition(g).count
            histogram[str(count)] = histogram.get(str(count), 0) + 1
            canon.add(canonical_form(table, reds))
            report = verification_report(table, reds)
            lemma_ok &= bool(report["lemma_1_2_ok"])
            if report["theorem_1_ok"] is not None:
                theorem_ok &= bool(report["theorem_1_ok"])
    except BudgetExhaustedError:
        partial = True
    runtime = time.perf_counter() - start
    extended = board.m * board.n > 48
    return CensusRecord(
        key=board.describe(),
        board=board.to_json(),
        raw_count=raw,
        symmetry_count=len(canon),
        cycle_histogram=dict(sorted(histogram.items(), key=lambda kv: int(kv[0]))),
        lemma_1_2_ok=lemma_ok,
        theorem_1_ok=theorem_ok,
        partial=partial,
        runtime_s=round(runtime, 6),
        extended=extended,
    )


def read_census(path: str) -> dict[str, CensusRecord]:
    """Load an existing database; raise CensusFileError on corruption."""
    records: dict[str, CensusRecord] = {}
    if not os.path.exists(path):
        return records
    with open(path) as f:
        first = f.readline().rstrip("\n")
        if first != HEADER:
            raise CensusFileError(
                f"{path} does not start with {HEADER!r}; "
                "move the file aside or pass a fresh --db path"
            )
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                rec = CensusRecord.from_json(json.loads(line))
            except (json.JSONDecodeError, TypeError, KeyError) as exc:
                raise CensusFileError(
                    f"{path}:{lineno}: bad record ({exc}); "
                    "delete the trailing damaged lines and re-run to recover"
                ) from exc
            records[rec.key] = rec
    return records


def _record_worker(board_json: dict, node_budget: int | None) -> CensusRecord:
    return census_record(Board.from_json(board_json), node_budget)


def run_census(
    boards: list[Board], db_path: str, node_budget: int | None = None
) -> list[CensusRecord]:
    """Compute records for all boards missing from the database and append
    them in canonical board order.  Returns the full record list for the
    requested boards, cached and fresh alike.
    """
    existing = read_census(db_path)
    todo = [b for b in boards if b.describe() not in existing]
    fresh: dict[str, CensusRecord] = {}
    workers = int(os.environ.get("CROSSPATCH_THREADS", "1") or "1")
    if workers > 1 and len(todo) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rec in pool.map(
                _record_worker, [b.to_json() for b in todo], [node_budget] * len(todo)
            ):
                fresh[rec.key] = rec
    else:
        for b in todo:
            rec = census_record(b, node_budget)
            fresh[rec.key] = rec
    if fresh:
        new_file = not os.path.exists(db_path)
        with open(db_path, "a") as f:
            if new_file:
                f.write(HEADER + "\n")
            # keep file order = request order, not completion order
            for b in boards:
                key = b.describe()
                if key in fresh:
                    f.write(json.dumps(fresh[key].to_json(), sort_keys=True) + "\n")
    out = []
    for b in boards:
        key = b.describe()
        out.append(existing.get(key) or fresh[key])
    return out


def rectangle_range(m_lo: int, n_lo: int, m_hi: int, n_hi: int) -> list[Board]:
    """All rectangles in the inclusive box, in canonical (area, m, n) order."""
    boards = [
        Board(Topology.RECTANGLE, m, n)
        for m in range(m_lo, m_hi + 1)
        for n in range(n_lo, n_hi + 1)
    ]
    boards.sort(key=lambda b: (b.m * b.n, b.m, b.n))
    return boards
