"""The red-edge graph H and the parity machinery built on it.

H lives on board vertices; its edges are the red board edges of a
crosspatch graph G.  On rectangles every H-vertex has degree 0 or 2, so H
splits into simple cycles, each carrying a closed braid of crosses in G.
Walking a directed H-cycle induces a permutation of the four squares
around the base vertex; each unit step contributes an odd permutation, so
the walk's permutation parity equals the walk length mod 2.  Cycles in H
have even length, hence even walk permutations, hence an even number of
G-cycles per H-cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Board,
    BoardEdge,
    BoardError,
    Square,
    Topology,
    UnsupportedTopologyError,
    Vertex,
    corner_squares,
    quadrant,
)
from .crosses import CrossTable, KnightMove
from .engine import CrosspatchGraph, CycleDecomposition, cycle_decomposition

# Corner roles around a vertex v: A = upper-right square of v's "lower
# left" ... concretely role X names the square s with X(s) = v.
ROLES = ("A", "B", "C", "D")
_A, _B, _C, _D = range(4)


class HStructureError(ValueError):
    """H is not a disjoint union of simple cycles where it should be."""


@dataclass(frozen=True)
class CornerPermutation:
    """A bijection of the four corner roles {A, B, C, D}."""

    image: tuple[int, int, int, int]  # image[role] = new role

    def __call__(self, role: int) -> int:
        return self.image[role]

    def compose(self, other: "CornerPermutation") -> "CornerPermutation":
        """self after other: (self . other)(x) = self(other(x))."""
        return CornerPermutation(tuple(self.image[r] for r in other.image))

    def inverse(self) -> "CornerPermutation":
        inv = [0] * 4
        for r, im in enumerate(self.image):
            inv[im] = r
        return CornerPermutation(tuple(inv))

    @property
    def parity(self) -> int:
        """0 for even, 1 for odd."""
        inversions = sum(
            1
            for x in range(4)
            for y in range(x + 1, 4)
            if self.image[x] > self.image[y]
        )
        return inversions % 2

    def cycles(self) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for start in range(4):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            cur = self.image[start]
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                cur = self.image[cur]
            out.append(tuple(cyc))
        return out

    def as_mapping(self) -> dict[str, str]:
        return {ROLES[r]: ROLES[self.image[r]] for r in range(4)}


IDENTITY = CornerPermutation((_A, _B, _C, _D))

# Role transition of one directed H-step.  For an E-step u -> w: the A and
# D squares of u ride the two crossing moves to the C and B squares of w,
# while B and C of u are literally the A and D squares of w.  The other
# directions follow by the same corner bookkeeping; all four are 4-cycles,
# hence odd.
STEP_PERMUTATIONS = {
    "E": CornerPermutation((_C, _A, _D, _B)),
    "N": CornerPermutation((_C, _D, _B, _A)),
}
STEP_PERMUTATIONS["W"] = STEP_PERMUTATIONS["E"].inverse()
STEP_PERMUTATIONS["S"] = STEP_PERMUTATIONS["N"].inverse()

# Roles that traverse a knight move (rather than staying put) per step.
MOVING_ROLES = {"E": (_A, _D), "N": (_A, _B), "W": (_B, _C), "S": (_C, _D)}


def step_permutation(direction: str) -> CornerPermutation:
    return STEP_PERMUTATIONS[direction]


@dataclass
class CrossGraphH:
    board: Board
    adjacency: dict  # Vertex -> list of incident red BoardEdges
    degree: dict  # Vertex -> int
    reds: tuple[BoardEdge, ...]

    def degree_of(self, v: Vertex) -> int:
        return self.degree.get(v, 0)


@dataclass
class OrientedHCycle:
    """A simple H-cycle with a chosen direction.

    vertices[k] -(steps[k])-> vertices[k+1], closing back to vertices[0];
    steps pair each traversed edge with its direction N/E/S/W.
    """

    vertices: list  # length l, closed implicitly
    steps: list  # list of (BoardEdge, direction)

    @property
    def length(self) -> int:
        return len(self.steps)


def build_H(board: Board, reds) -> CrossGraphH:
    adjacency: dict = {}
    degree: dict = {}
    reds = tuple(sorted(reds))
    for e in reds:
        for v in e.endpoints():
            v = board.norm_vertex(*v)
            adjacency.setdefault(v, []).append(e)
            degree[v] = degree.get(v, 0) + 1
    return CrossGraphH(board, adjacency, degree, reds)


def verify_degree_lemmas(h: CrossGraphH) -> dict:
    """Check that every H-vertex has degree 0 or 2 (Rectangle guarantee)."""
    histogram: dict[int, int] = {}
    bad = None
    for v, d in sorted(h.degree.items()):
        histogram[d] = histogram.get(d, 0) + 1
        if d not in (0, 2) and bad is None:
            bad = (v, d)
    return {
        "ok": bad is None,
        "bad_vertex": bad,
        "degree_histogram": histogram,
    }


def odd_degree_vertices(h: CrossGraphH) -> list[Vertex]:
    return sorted(v for v, d in h.degree.items() if d % 2 == 1)


def _step_direction(board: Board, v: Vertex, e: BoardEdge) -> tuple[str, Vertex]:
    """Direction of traversing e away from v, and the far endpoint."""
    a, b = v
    if e.dir == "N":
        if board.norm_vertex(a, b) == board.norm_vertex(e.a, e.b):
            return "N", board.norm_vertex(a, b + 1)
        return "S", board.norm_vertex(a, b - 1)
    if board.norm_vertex(a, b) == board.norm_vertex(e.a, e.b):
        return "E", board.norm_vertex(a + 1, b)
    return "W", board.norm_vertex(a - 1, b)


def decompose_and_orient(h: CrossGraphH) -> list[OrientedHCycle]:
    """Split H into directed simple cycles, deterministically.

    Each cycle starts at its minimal vertex and first steps along the
    smaller of the two incident edges.  Raises HStructureError when some
    vertex degree is not 0 or 2.
    """
    for v, d in sorted(h.degree.items()):
        if d not in (0, 2):
            raise HStructureError(f"vertex {v} has H-degree {d}, expected 0 or 2")
    cycles = []
    seen_edges: set[BoardEdge] = set()
    for start in sorted(v for v, d in h.degree.items() if d == 2):
        if any(e in seen_edges for e in h.adjacency[start]):
            continue
        vertices = [start]
        steps = []
        cur = start
        edge = min(h.adjacency[start])
        while True:
            direction, nxt = _step_direction(h.board, cur, edge)
            steps.append((edge, direction))
            seen_edges.add(edge)
            if nxt == start:
                break
            vertices.append(nxt)
            cur = nxt
            e1, e2 = h.adjacency[cur]
            edge = e2 if e1 == edge else e1
        cycle = OrientedHCycle(vertices, steps)
        ups = sum(1 for _, d in steps if d == "N")
        downs = sum(1 for _, d in steps if d == "S")
        lefts = sum(1 for _, d in steps if d == "W")
        rights = sum(1 for _, d in steps if d == "E")
        if h.board.topology in (Topology.RECTANGLE, Topology.SUBSET):
            assert ups == downs and lefts == rights
            assert cycle.length % 2 == 0
        cycles.append(cycle)
    return cycles


def _role_square(board: Board, v: Vertex, role: int) -> Square:
    return corner_squares(board, v)[role]


def _directed_cross_moves(
    board: Board, table: CrossTable, e: BoardEdge, direction: str
) -> list[tuple[Square, Square]]:
    """The two moves of e's cross, oriented along the given edge direction."""
    eid = table.edge_index[e]
    pair = table.edge_pair[eid]
    assert pair is not None
    sign = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}[direction]
    out = []
    for mid in pair:
        mv = table.moves[mid]
        from .crosses import move_offset

        dx, dy = move_offset(board, mv)
        if dx * sign[0] + dy * sign[1] > 0:
            out.append((mv[0], mv[1]))
        else:
            out.append((mv[1], mv[0]))
    return out


def walk_sigma(
    table: CrossTable, cycle: OrientedHCycle, g: CrosspatchGraph
) -> tuple[CornerPermutation, dict]:
    """Walk a directed H-cycle, tracking both the abstract corner
    permutation and the four concrete square paths it realizes in G.

    Returns (sigma, detail) where detail carries the traced paths and the
    per-prefix parity check.  The two computations are independent: the
    step-permutation tables predict where each corner token ends, and the
    path tracer follows actual directed knight moves.
    """
    board = table.board
    sigma = IDENTITY
    # token state: role -> (current role, current square, traced moves)
    positions = list(range(4))
    squares = [_role_square(board, cycle.vertices[0], r) for r in range(4)]
    paths: list[list[tuple[Square, Square]]] = [[] for _ in range(4)]
    prefix_ok = True
    cur_vertex = cycle.vertices[0]
    for k, (edge, direction) in enumerate(cycle.steps):
        perm = STEP_PERMUTATIONS[direction]
        moving = MOVING_ROLES[direction]
        directed = _directed_cross_moves(board, table, edge, direction)
        _, nxt = _step_direction(board, cur_vertex, edge)
        for token in range(4):
            role = positions[token]
            new_role = perm(role)
            if role in moving:
                frm = squares[token]
                candidates = [mv for mv in directed if mv[0] == frm]
                assert len(candidates) == 1, "cross move tracing diverged"
                mv = candidates[0]
                assert (
                    tuple(sorted(mv)) in g.moves
                ), "traced move missing from G"
                paths[token].append(mv)
                squares[token] = mv[1]
            positions[token] = new_role
        cur_vertex = nxt
        for token in range(4):
            expected = _role_square(board, cur_vertex, positions[token])
            assert squares[token] == expected, "tracer disagrees with permutation"
        sigma = perm.compose(sigma)
        if sigma.parity != (k + 1) % 2:
            prefix_ok = False
    # closed walk: back at the start vertex
    assert cur_vertex == cycle.vertices[0]
    all_moves = [mv for p in paths for mv in p]
    canon = [tuple(sorted(mv)) for mv in all_moves]
    edge_moves = set()
    for edge, _ in cycle.steps:
        pair = table.edge_pair[table.edge_index[edge]]
        for mid in pair:
            edge_moves.add(table.moves[mid])
    detail = {
        "paths": paths,
        "edge_disjoint": len(canon) == len(set(canon)),
        "covers_cycle_moves": set(canon) == edge_moves,
        "prefix_parity_ok": prefix_ok,
        "length": cycle.length,
    }
    return sigma, detail


def braid_correspondence(
    table: CrossTable, reds, g: CrosspatchGraph, h: CrossGraphH
) -> dict:
    """Match G-cycles to the H-cycles carrying their red edges.

    For a rectangle pseudotour: every G-cycle projects into exactly one
    H-cycle, the number of G-cycles per H-cycle equals the number of
    permutation cycles of that H-cycle's sigma (an even count), and the
    total number of G-cycles is even.
    """
    board = table.board
    h_cycles = decompose_and_orient(h)
    edge_to_hcycle = {}
    for idx, cyc in enumerate(h_cycles):
        for edge, _ in cyc.steps:
            edge_to_hcycle[edge] = idx

    g_cycles = cycle_decomposition(g)
    per_h = [0] * len(h_cycles)
    total_ok = True
    from .crosses import move_to_edge

    assignments = []
    for cyc in g_cycles.cycles:
        owners = set()
        for k in range(len(cyc)):
            mv = tuple(sorted((cyc[k], cyc[(k + 1) % len(cyc)])))
            owners.add(edge_to_hcycle[move_to_edge(board, mv)])
        if len(owners) != 1:
            total_ok = False
            assignments.append(None)
        else:
            idx = owners.pop()
            per_h[idx] += 1
            assignments.append(idx)

    sigma_cycle_counts = []
    per_h_ok = True
    for idx, cyc in enumerate(h_cycles):
        sigma, detail = walk_sigma(table, cyc, g)
        count = len(sigma.cycles())
        sigma_cycle_counts.append(count)
        if per_h[idx] != count or count % 2 != 0:
            per_h_ok = False

    return {
        "ok": total_ok and per_h_ok and g_cycles.count % 2 == 0,
        "g_cycle_count": g_cycles.count,
        "g_cycle_count_even": g_cycles.count % 2 == 0,
        "h_cycle_count": len(h_cycles),
        "g_cycles_per_h_cycle": per_h,
        "sigma_cycle_counts": sigma_cycle_counts,
        "assignments": assignments,
    }


def quadrant_parity_certificate(
    table: CrossTable, reds, u: Vertex
) -> tuple[int, int]:
    """(parity of total G-degree over quadrant 1 of u, parity of u's
    H-degree).  These agree for every cross-closed red set on a rectangle;
    the identity is the mod-2 shadow of the boundary summation argument.
    """
    board = table.board
    if board.topology is not Topology.RECTANGLE:
        raise UnsupportedTopologyError("quadrant certificates need a rectangle")
    g = _realized(table, reds)
    h = build_H(board, [table.edges[e] if isinstance(e, int) else e for e in reds])
    q1 = quadrant(board, u, 1)
    lhs = sum(g.degree.get(s, 0) for s in q1) % 2
    rhs = h.degree_of(board.norm_vertex(*u)) % 2
    return lhs, rhs


def quadrant_parities(table: CrossTable, reds, u: Vertex) -> dict:
    """All four quadrant G-degree parities of u plus its H-degree parity."""
    board = table.board
    g = _realized(table, reds)
    h = build_H(board, [table.edges[e] if isinstance(e, int) else e for e in reds])
    quads = [
        sum(g.degree.get(s, 0) for s in quadrant(board, u, w)) % 2 for w in (1, 2, 3, 4)
    ]
    return {"quadrants": quads, "h_degree_parity": h.degree_of(board.norm_vertex(*u)) % 2}


def _realized(table: CrossTable, reds) -> CrosspatchGraph:
    from .engine import realize_graph

    eids = [table.edge_index[e] if isinstance(e, BoardEdge) else e for e in reds]
    return realize_graph(table, eids)


def verification_report(table: CrossTable, reds) -> dict:
    """Full per-pseudotour verification record (lemmas + Theorem 1)."""
    board = table.board
    eids = sorted(table.edge_index[e] if isinstance(e, BoardEdge) else e for e in reds)
    g = _realized(table, eids)
    edges = [table.edges[e] for e in eids]
    h = build_H(board, edges)
    lemma12 = verify_degree_lemmas(h)
    report = {
        "board": board.to_json(),
        "reds": [[e.a, e.b, e.dir] for e in sorted(edges)],
        "h_degree_histogram": lemma12["degree_histogram"],
        "lemma_1_2_ok": lemma12["ok"],
        "bad_vertex": lemma12["bad_vertex"],
    }
    if lemma12["ok"] and board.topology is Topology.RECTANGLE:
        braid = braid_correspondence(table, eids, g, h)
        report.update(
            {
                "g_cycle_count": braid["g_cycle_count"],
                "h_cycle_count": braid["h_cycle_count"],
                "sigma_cycle_counts": braid["sigma_cycle_counts"],
                "theorem_1_ok": braid["ok"],
            }
        )
        report["ok"] = braid["ok"]
    else:
        dec = cycle_decomposition(g)
        report["g_cycle_count"] = dec.count
        report["h_cycle_count"] = None
        report["theorem_1_ok"] = None
        # a lemma violation is only acceptable off the rectangle
        report["ok"] = lemma12["ok"] or board.topology is not Topology.RECTANGLE
    return report
