"""Exhaustive enumeration of crosspatch pseudotours.

A crosspatch graph is canonically encoded by its red set: the set of
board edges whose midpoints carry its crosses.  A red set yields a
pseudotour exactly when every square counts exactly two red edges among
the colorable members of its surround8.  The search branches on board
edges (red / not red) in increasing id order with unit propagation on the
per-square counters, which makes the emission order lexicographic on the
sorted red-edge id tuples and the whole run deterministic.

The same engine, with two squares allowed to finish at count 1, drives
the open-tour search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .board import Board, BoardEdge, Topology
from .crosses import CrossTable, KnightMove

UNDEC, RED, BLACK = 0, 1, 2


class NotAPseudotourError(ValueError):
    """A degree-2-everywhere precondition failed."""


class BudgetExhaustedError(RuntimeError):
    """Node budget ran out; carries a resume cursor."""

    def __init__(self, nodes: int, cursor: list[tuple[int, int]]):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes
        self.cursor = cursor


@dataclass
class EnumerationOptions:
    node_budget: int | None = None
    resume: list[tuple[int, int]] | None = None  # branch prefix: (edge id, value)
    endpoint_deficits: int = 0  # squares allowed to finish at count 1


@dataclass(frozen=True)
class CrosspatchGraph:
    """A knight graph closed under cross partnership."""

    moves: frozenset[KnightMove]
    degree: dict  # Square -> int

    def degree_of(self, s) -> int:
        return self.degree.get(s, 0)


@dataclass
class CycleDecomposition:
    cycles: list[list]  # each a closed square sequence (start not repeated)

    @property
    def count(self) -> int:
        return len(self.cycles)


class _Search:
    """DFS over edge colors with per-square (red, undecided) counters."""

    def __init__(self, table: CrossTable, opts: EnumerationOptions):
        self.table = table
        self.opts = opts
        nsq = len(table.squares)
        self.scope = table.square_scope
        # edge id -> square ids it counts toward (colorable only)
        self.touch = {eid: [] for eid in table.colorable}
        for sid in range(nsq):
            for eid in self.scope[sid]:
                self.touch[eid].append(sid)
        self.order = sorted(table.colorable)
        self.state = {eid: UNDEC for eid in self.order}
        self.red = [0] * nsq
        self.undec = [len(self.scope[sid]) for sid in range(nsq)]
        self.nodes = 0
        self.branches: list[tuple[int, int]] = []  # current branch path

    # -- propagation -----------------------------------------------------

    def _assign(self, eid: int, value: int, trail: list[int]) -> bool:
        """Set one edge and propagate; returns False on contradiction."""
        queue = [(eid, value)]
        while queue:
            eid, value = queue.pop()
            st = self.state[eid]
            if st != UNDEC:
                if st != value:
                    return False
                continue
            self.state[eid] = value
            trail.append(eid)
            # update every counter before any failure return, so that
            # _undo's full reversal stays symmetric
            for sid in self.touch[eid]:
                self.undec[sid] -= 1
                if value == RED:
                    self.red[sid] += 1
            lo = 1 if self.opts.endpoint_deficits else 2
            for sid in self.touch[eid]:
                red, und = self.red[sid], self.undec[sid]
                if red > 2 or red + und < lo:
                    return False
                if red == 2 and und:
                    for other in self.scope[sid]:
                        if self.state[other] == UNDEC:
                            queue.append((other, BLACK))
                elif red + und == 2 and red < 2 and not self.opts.endpoint_deficits:
                    for other in self.scope[sid]:
                        if self.state[other] == UNDEC:
                            queue.append((other, RED))
            if self.opts.endpoint_deficits:
                short = sum(
                    1 for s in range(len(self.red)) if self.red[s] + self.undec[s] < 2
                )
                if short > self.opts.endpoint_deficits:
                    return False
        return True

    def _undo(self, trail: list[int]):
        for eid in reversed(trail):
            value = self.state[eid]
            self.state[eid] = UNDEC
            for sid in self.touch[eid]:
                self.undec[sid] += 1
                if value == RED:
                    self.red[sid] -= 1

    # -- search ----------------------------------------------------------

    def run(self) -> Iterator[tuple[int, ...]]:
        # squares with no colorable surrounding edges can never reach
        # their target; reject up front (e.g. the 3x3 center square)
        deficient = sum(1 for und in self.undec if und < 2)
        if deficient > self.opts.endpoint_deficits:
            return
        resume = list(self.opts.resume or [])
        yield from self._dfs(resume)

    def _emit_ok(self) -> bool:
        if self.opts.endpoint_deficits:
            ones = sum(1 for r in self.red if r == 1)
            twos = sum(1 for r in self.red if r == 2)
            return ones == self.opts.endpoint_deficits and ones + twos == len(self.red)
        return all(r == 2 for r in self.red)

    def _dfs(self, resume: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
        eid = next((e for e in self.order if self.state[e] == UNDEC), None)
        if eid is None:
            if self._emit_ok():
                yield tuple(sorted(e for e in self.order if self.state[e] == RED))
            return
        if not resume:  # cursor replay is free, else small budgets stall
            self.nodes += 1
            if self.opts.node_budget is not None and self.nodes > self.opts.node_budget:
                raise BudgetExhaustedError(self.nodes, list(self.branches))
        values = (RED, BLACK)
        if resume:
            cur_eid, cur_val = resume[0]
            if cur_eid == eid:  # skip siblings already fully explored
                values = tuple(v for v in values if v >= cur_val)
        for value in values:
            sub_resume = []
            if resume and resume[0] == (eid, value):
                sub_resume = resume[1:]
            trail: list[int] = []
            self.branches.append((eid, value))
            if self._assign(eid, value, trail):
                yield from self._dfs(sub_resume)
            self._undo(trail)
            self.branches.pop()
            resume = []  # only the first explored value follows the cursor


def enumerate_red_sets(
    table: CrossTable, opts: EnumerationOptions | None = None
) -> Iterator[tuple[int, ...]]:
    """Red sets (as sorted edge-id tuples) in canonical order."""
    yield from _Search(table, opts or EnumerationOptions()).run()


def enumerate_pseudotours(
    board: Board,
    *,
    node_budget: int | None = None,
    resume: list[tuple[int, int]] | None = None,
    table: CrossTable | None = None,
) -> Iterator[tuple[CrossTable, tuple[int, ...]]]:
    """All crosspatch pseudotour red sets of a board, canonically ordered."""
    table = table or CrossTable(board)
    opts = EnumerationOptions(node_budget=node_budget, resume=resume)
    for reds in enumerate_red_sets(table, opts):
        yield table, reds


def realize_graph(table: CrossTable, reds) -> CrosspatchGraph:
    """The knight graph generated by a red set: the union of both moves
    of every red edge's cross pair."""
    moves = set()
    degree: dict = {}
    for eid in reds:
        pair = table.edge_pair[eid]
        if pair is None:
            raise NotAPseudotourError(f"edge {table.edges[eid]} is not colorable")
        for mid in pair:
            mv = table.moves[mid]
            moves.add(mv)
            for s in mv:
                degree[s] = degree.get(s, 0) + 1
    return CrosspatchGraph(frozenset(moves), degree)


def cycle_decomposition(g: CrosspatchGraph) -> CycleDecomposition:
    """Split a degree-2-everywhere graph into its simple cycles.

    Deterministic: each cycle starts at its smallest square and walks
    toward the smaller neighbor first.
    """
    adj: dict = {}
    for s1, s2 in g.moves:
        adj.setdefault(s1, []).append(s2)
        adj.setdefault(s2, []).append(s1)
    for s, nbrs in adj.items():
        if len(nbrs) != 2:
            raise NotAPseudotourError(f"square {s} has degree {len(nbrs)}, expected 2")
    cycles = []
    seen: set = set()
    for start in sorted(adj):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        prev, cur = start, min(adj[start])
        while cur != start:
            cycle.append(cur)
            seen.add(cur)
            n1, n2 = adj[cur]
            prev, cur = cur, (n2 if n1 == prev else n1)
        cycles.append(cycle)
    return CycleDecomposition(cycles)


# -- independent oracle --------------------------------------------------

MAX_ORACLE_SQUARES = 36


def oracle_two_factors(board: Board) -> list[frozenset[KnightMove]]:
    """All crosspatch pseudotours of a small board, found the slow way.

    Backtracks square by square over incident knight moves, keeping every
    square's degree at exactly two.  Cross closure is enforced on the move
    level: midpoint-partner moves (found by brute-force midpoint grouping,
    not the analytic edge formulas) are selected and discarded together.
    Intended as a test oracle only.
    """
    from .crosses import all_knight_moves, knight_moves, move_midpoint

    squares = list(board.squares())
    if len(squares) > MAX_ORACLE_SQUARES:
        raise ValueError(f"oracle refuses boards over {MAX_ORACLE_SQUARES} squares")

    moves = all_knight_moves(board)
    midx = {mv: k for k, mv in enumerate(moves)}
    by_mid: dict = {}
    for mv in moves:
        by_mid.setdefault(move_midpoint(board, mv), []).append(mv)
    partner = {}
    for group in by_mid.values():
        if len(group) == 2:
            a, b = group
            partner[midx[a]], partner[midx[b]] = midx[b], midx[a]
    # a move without a midpoint partner can never sit in a cross
    alive = [k for k in range(len(moves)) if k in partner]

    sq_id = {s: k for k, s in enumerate(squares)}
    incident: list[list[int]] = [[] for _ in squares]
    for k in alive:
        for s in moves[k]:
            incident[sq_id[s]].append(k)

    state = {k: UNDEC for k in alive}
    deg = [0] * len(squares)
    results: list[frozenset[KnightMove]] = []

    def set_move(k: int, value: int, trail: list[int]) -> bool:
        stack = [(k, value)]
        while stack:
            k, value = stack.pop()
            st = state[k]
            if st != UNDEC:
                if st != value:
                    return False
                continue
            state[k] = value
            trail.append(k)
            stack.append((partner[k], value))
            if value == RED:
                bad = False
                for s in moves[k]:
                    sid = sq_id[s]
                    deg[sid] += 1
                    if deg[sid] > 2:
                        bad = True
                if bad:
                    return False
        return True

    def undo(trail: list[int]):
        for k in reversed(trail):
            if state[k] == RED:
                for s in moves[k]:
                    deg[sq_id[s]] -= 1
            state[k] = UNDEC

    def free_slots(sid: int) -> int:
        return sum(1 for k in incident[sid] if state[k] == UNDEC)

    def recurse(sid: int):
        while sid < len(squares) and deg[sid] == 2:
            sid += 1
        if sid == len(squares):
            results.append(
                frozenset(moves[k] for k in alive if state[k] == RED)
            )
            return
        need = 2 - deg[sid]
        options = [k for k in incident[sid] if state[k] == UNDEC]
        if len(options) < need:
            return
        from itertools import combinations

        for chosen in combinations(options, need):
            trail: list[int] = []
            ok = all(set_move(k, RED, trail) for k in chosen)
            if ok:
                ok = all(
                    set_move(k, BLACK, trail)
                    for k in options
                    if state[k] == UNDEC
                )
            if ok and deg[sid] == 2:
                recurse(sid + 1)
            undo(trail)

    if all(len(incident[sid]) >= 2 for sid in range(len(squares))):
        recurse(0)
    return sorted(results, key=lambda f: sorted(f))


# -- symmetry ------------------------------------------------------------

def symmetry_transforms(board: Board):
    """The board's symmetry maps, as functions on doubled coordinates.

    Rectangles get their dihedral group (order 8 when m = n, else 4);
    wrapped axes additionally contribute translations.
    """
    tm, tn = 2 * board.m, 2 * board.n
    # diagonal flips only when the two axes are interchangeable
    swappable = board.m == board.n and board.wrap_x == board.wrap_y
    swaps = [False] + ([True] if swappable else [])
    xshifts = range(0, tm, 2) if board.wrap_x else [0]
    yshifts = range(0, tn, 2) if board.wrap_y else [0]
    transforms = []
    for swap in swaps:
        for sx in (1, -1):
            for sy in (1, -1):
                for ox in xshifts:
                    for oy in yshifts:
                        def t(x, y, swap=swap, sx=sx, sy=sy, ox=ox, oy=oy):
                            if swap:
                                x, y = y, x
                            x = sx * x + (ox if sx == 1 else tm - ox)
                            y = sy * y + (oy if sy == 1 else tn - oy)
                            if board.wrap_x:
                                x %= tm
                            if board.wrap_y:
                                y %= tn
                            return (x % (tm + 1) if not board.wrap_x else x,
                                    y % (tn + 1) if not board.wrap_y else y)
                        transforms.append(t)
    return transforms


def _edge_midpoint(e: BoardEdge) -> tuple[int, int]:
    a, b, dir = e
    return (2 * a, 2 * b + 1) if dir == "N" else (2 * a + 1, 2 * b)


def _edge_from_midpoint(board: Board, x: int, y: int) -> BoardEdge | None:
    if x % 2 == 0:
        return board.norm_edge(x // 2, (y - 1) // 2, "N")
    return board.norm_edge((x - 1) // 2, y // 2, "E")


def canonical_form(table: CrossTable, reds) -> tuple[int, ...]:
    """Minimal image of a red set under the board's symmetry group."""
    board = table.board
    best = None
    for t in symmetry_transforms(board):
        image = []
        ok = True
        for eid in reds:
            x, y = _edge_midpoint(table.edges[eid])
            e2 = _edge_from_midpoint(board, *t(x, y))
            if e2 is None:
                ok = False
                break
            image.append(table.edge_index[e2])
        if not ok:
            continue
        image = tuple(sorted(image))
        if best is None or image < best:
            best = image
    assert best is not None
    return best


def count_up_to_symmetry(table: CrossTable, red_sets) -> int:
    return len({canonical_form(table, reds) for reds in red_sets})


# -- pseudotour JSON -----------------------------------------------------

def pseudotour_to_json(table: CrossTable, reds) -> dict:
    eids = sorted(table.edge_index[e] if isinstance(e, BoardEdge) else e for e in reds)
    g = realize_graph(table, eids)
    cycles = cycle_decomposition(g)
    return {
        "board": table.board.to_json(),
        "reds": [[e.a, e.b, e.dir] for e in sorted(table.edges_of(eids))],
        "cycles": [[list(s) for s in cyc] for cyc in cycles.cycles],
    }


def pseudotour_from_json(data: dict) -> tuple[Board, list[BoardEdge]]:
    board = Board.from_json(data["board"])
    reds = [board.edge(int(a), int(b), d) for a, b, d in data["reds"]]
    return board, reds
