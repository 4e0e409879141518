"""Exhaustive crosspatch tour search and wrapped-board counterexamples.

Closed tours are pseudotours with a single cycle, so the closed search
just filters the exact pseudotour enumeration.  Open tours relax exactly
two squares to a single red surrounding edge (the path endpoints) and
additionally require the realized graph to be one connected Hamiltonian
path.  Either way, "none" is a completed exhaustive search at that board
size, not a heuristic give-up; running out of budget is reported as a
distinct inconclusive outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .board import Board, BoardEdge, BoardError, Square, Topology, Vertex
from .crosses import CrossTable, KnightMove, cross_partner, move_to_edge
from .engine import (
    BudgetExhaustedError,
    CrosspatchGraph,
    EnumerationOptions,
    cycle_decomposition,
    enumerate_red_sets,
    realize_graph,
)
from .hgraph import build_H, odd_degree_vertices


class InconclusiveError(RuntimeError):
    """Budget ran out before the search space was exhausted."""


@dataclass(frozen=True)
class TourQuery:
    board: Board
    kind: str  # "closed" | "open"
    budget: int | None = None

    def __post_init__(self):
        if self.kind not in ("closed", "open"):
            raise ValueError(f"kind must be 'closed' or 'open', got {self.kind!r}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")


@dataclass
class TourWitness:
    board: Board
    kind: str
    sequence: list[Square]  # closed: cycle without repeat; open: full path
    reds: tuple[BoardEdge, ...]
    endpoints: tuple[Square, Square] | None = None

    def to_json(self) -> dict:
        data = {
            "board": self.board.to_json(),
            "kind": self.kind,
            "reds": [[e.a, e.b, e.dir] for e in sorted(self.reds)],
            "cycles": [[list(s) for s in self.sequence]],
        }
        if self.endpoints is not None:
            data["endpoints"] = [list(s) for s in self.endpoints]
        return data


def _components(moves) -> list[set[Square]]:
    adj: dict = {}
    for s1, s2 in moves:
        adj.setdefault(s1, set()).add(s2)
        adj.setdefault(s2, set()).add(s1)
    comps, seen = [], set()
    for start in sorted(adj):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            s = stack.pop()
            if s in comp:
                continue
            comp.add(s)
            stack.extend(adj[s] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def verify_witness(witness: TourWitness) -> bool:
    """Independent re-check: cross closure, degree profile, coverage,
    connectivity, and that the stated sequence walks real knight moves."""
    board = witness.board
    squares = set(board.squares())
    seq = witness.sequence
    if set(seq) != squares or len(seq) != len(squares):
        return False
    pairs = list(zip(seq, seq[1:]))
    if witness.kind == "closed":
        pairs.append((seq[-1], seq[0]))
    moves = {tuple(sorted(p)) for p in pairs}
    if len(moves) != len(pairs):
        return False
    # every move must sit in a full cross realized by the red set
    red_moves = set()
    for e in witness.reds:
        pair = cross_partner(board, board.edge(*e))
        if pair is None:
            return False
        red_moves.update(pair.moves)
    if moves != red_moves:
        return False
    degree: dict = {}
    for s1, s2 in moves:
        degree[s1] = degree.get(s1, 0) + 1
        degree[s2] = degree.get(s2, 0) + 1
    if witness.kind == "closed":
        if any(degree.get(s, 0) != 2 for s in squares):
            return False
    else:
        ends = sorted(s for s in squares if degree.get(s, 0) == 1)
        if len(ends) != 2 or ends != sorted(witness.endpoints):
            return False
        if any(degree.get(s, 0) != 2 for s in squares if s not in ends):
            return False
    return len(_components(moves)) == 1


def search_closed_tour(q: TourQuery) -> TourWitness | None:
    """First crosspatch closed tour in canonical red-set order, if any."""
    table = CrossTable(q.board)
    opts = EnumerationOptions(node_budget=q.budget)
    try:
        for reds in enumerate_red_sets(table, opts):
            g = realize_graph(table, reds)
            dec = cycle_decomposition(g)
            if dec.count == 1 and set(g.degree) == set(table.squares):
                witness = TourWitness(
                    board=q.board,
                    kind="closed",
                    sequence=dec.cycles[0],
                    reds=table.edges_of(reds),
                )
                assert verify_witness(witness)
                return witness
    except BudgetExhaustedError as exc:
        raise InconclusiveError(str(exc)) from exc
    return None


def search_open_tour(q: TourQuery) -> TourWitness | None:
    """First crosspatch open tour (Hamiltonian path) in canonical order."""
    table = CrossTable(q.board)
    opts = EnumerationOptions(node_budget=q.budget, endpoint_deficits=2)
    try:
        for reds in open_tour_candidates(table, opts):
            witness = _path_witness(table, reds)
            if witness is not None:
                assert verify_witness(witness)
                return witness
    except BudgetExhaustedError as exc:
        raise InconclusiveError(str(exc)) from exc
    return None


def open_tour_candidates(table: CrossTable, opts: EnumerationOptions | None = None):
    """Red sets whose realized graph has exactly two degree-1 squares and
    degree 2 elsewhere -- open-tour candidates before connectivity."""
    opts = opts or EnumerationOptions(endpoint_deficits=2)
    yield from enumerate_red_sets(table, opts)


def _path_witness(table: CrossTable, reds) -> TourWitness | None:
    g = realize_graph(table, reds)
    squares = set(table.squares)
    if set(g.degree) != squares:
        return None
    ends = sorted(s for s in squares if g.degree[s] == 1)
    if len(ends) != 2:
        return None
    if len(_components(g.moves)) != 1:
        return None
    # trace the path from the smaller endpoint
    adj: dict = {}
    for s1, s2 in g.moves:
        adj.setdefault(s1, []).append(s2)
        adj.setdefault(s2, []).append(s1)
    seq = [ends[0]]
    prev = None
    while True:
        nxt = [s for s in adj[seq[-1]] if s != prev]
        if not nxt:
            break
        prev = seq[-1]
        seq.append(nxt[0] if len(nxt) == 1 else min(nxt))
    if len(seq) != len(squares):
        return None
    return TourWitness(
        board=table.board,
        kind="open",
        sequence=seq,
        reds=table.edges_of(reds),
        endpoints=(ends[0], ends[1]),
    )


def _wrapped_boards(topology: Topology, max_size: int):
    """Boards of one wrapped topology up to max_size, by area then (m, n)."""
    from .board import MIN_WRAP

    boards = []
    for m in range(1, max_size + 1):
        for n in range(1, max_size + 1):
            if topology in (Topology.CYLINDER_X, Topology.TORUS) and m < MIN_WRAP:
                continue
            if topology in (Topology.CYLINDER_Y, Topology.TORUS) and n < MIN_WRAP:
                continue
            boards.append(Board(topology, m, n))
    boards.sort(key=lambda b: (b.m * b.n, b.m, b.n))
    return boards


def find_lemma1_counterexample(
    topology: Topology, max_size: int, node_budget: int | None = None
) -> tuple[Board, tuple[BoardEdge, ...], Vertex] | None:
    """Smallest wrapped board carrying a crosspatch pseudotour whose H has
    an odd-degree vertex, with the witness red set and vertex.

    Boards are swept by area, then (m, n); within one board, pseudotours
    stream in canonical order, so the returned witness is well-defined.
    On rectangles the even-degree property is a theorem, so asking for a
    rectangle counterexample is rejected.
    """
    if topology not in (Topology.CYLINDER_X, Topology.CYLINDER_Y, Topology.TORUS):
        raise BoardError("counterexamples only exist on wrapped topologies")
    from .board import MIN_WRAP

    if max_size < MIN_WRAP:
        raise BoardError(f"max_size must be at least {MIN_WRAP}")
    for board in _wrapped_boards(topology, max_size):
        table = CrossTable(board)
        opts = EnumerationOptions(node_budget=node_budget)
        try:
            for reds in enumerate_red_sets(table, opts):
                h = build_H(board, table.edges_of(reds))
                odd = odd_degree_vertices(h)
                if odd:
                    return board, table.edges_of(reds), odd[0]
        except BudgetExhaustedError as exc:
            raise InconclusiveError(
                f"budget exhausted on {board.describe()}: {exc}"
            ) from exc
    return None
