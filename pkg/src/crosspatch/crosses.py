"""Knight moves, midpoints, and the edge <-> cross-pair correspondence.

The midpoint of any knight move lands on the midpoint of exactly one unit
board edge (in doubled coordinates: square centers are odd-odd points, so
a move's midpoint has exactly one even coordinate).  Conversely an
interior board edge is the midpoint carrier of exactly two knight moves,
which together form a cross.  Edges adjacent to the board border miss at
least one of the four squares involved and carry no cross.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import Board, BoardEdge, BoardError, Square, surround8

KnightMove = tuple[Square, Square]  # canonical: sorted pair

_OFFSETS = (
    (1, 2), (2, 1), (-1, 2), (-2, 1),
    (1, -2), (2, -1), (-1, -2), (-2, -1),
)


def _canon_move(s1: Square, s2: Square) -> KnightMove:
    return (s1, s2) if s1 <= s2 else (s2, s1)


def knight_moves(board: Board, s: Square) -> set[KnightMove]:
    """All on-board knight moves from a square, as canonical pairs."""
    i, j = s
    if not board.has_square(i, j):
        raise BoardError(f"square {s} does not exist")
    out = set()
    for dx, dy in _OFFSETS:
        t = board.norm_square(i + dx, j + dy)
        if board.has_square(*t):
            out.add(_canon_move(s, t))
    return out


def all_knight_moves(board: Board) -> list[KnightMove]:
    moves = set()
    for s in board.squares():
        moves |= knight_moves(board, s)
    return sorted(moves)


def move_offset(board: Board, mv: KnightMove) -> tuple[int, int]:
    """The (dx, dy) knight offset from mv[0] to mv[1], wrap-resolved."""
    (i1, j1), (i2, j2) = mv
    for dx, dy in _OFFSETS:
        if board.norm_square(i1 + dx, j1 + dy) == (i2, j2):
            return (dx, dy)
    raise BoardError(f"{mv} is not a knight move on this board")


def move_midpoint(board: Board, mv: KnightMove) -> tuple[int, int]:
    """Midpoint of a move in doubled coordinates, wrap-reduced."""
    (i1, j1), _ = mv
    dx, dy = move_offset(board, mv)
    x = 2 * i1 - 1 + dx
    y = 2 * j1 - 1 + dy
    if board.wrap_x:
        x %= 2 * board.m
    if board.wrap_y:
        y %= 2 * board.n
    return (x, y)


def move_to_edge(board: Board, mv: KnightMove) -> BoardEdge:
    """The unique board edge whose midpoint equals the move's midpoint."""
    x, y = move_midpoint(board, mv)
    if x % 2 == 0:
        e = board.norm_edge(x // 2, (y - 1) // 2, "N")
    else:
        e = board.norm_edge((x - 1) // 2, y // 2, "E")
    if e is None:
        raise BoardError(f"midpoint edge of {mv} does not exist on this board")
    return e


@dataclass(frozen=True)
class CrossPair:
    """A board edge together with the two knight moves crossing at its
    midpoint."""

    edge: BoardEdge
    moves: tuple[KnightMove, KnightMove]

    @property
    def squares(self) -> tuple[Square, ...]:
        return self.moves[0] + self.moves[1]


def cross_partner(board: Board, e: BoardEdge) -> CrossPair | None:
    """The cross pair carried by a board edge, or None for border edges.

    A vertical edge anchored at (a, b) crosses the moves
    (a,b)-(a+1,b+2) and (a,b+2)-(a+1,b); a horizontal edge anchored at
    (a, b) crosses (a,b)-(a+2,b+1) and (a+2,b)-(a,b+1) (square labels,
    wrap-adjusted).  None is returned iff any of the four squares is
    off-board.
    """
    if board.norm_edge(*e) != e:
        raise BoardError(f"edge {e} does not exist on this board")
    a, b, dir = e
    if dir == "N":
        quads = [((a, b), (a + 1, b + 2)), ((a, b + 2), (a + 1, b))]
    else:
        quads = [((a, b), (a + 2, b + 1)), ((a + 2, b), (a, b + 1))]
    moves = []
    seen: set[Square] = set()
    for s1, s2 in quads:
        s1 = board.norm_square(*s1)
        s2 = board.norm_square(*s2)
        if not (board.has_square(*s1) and board.has_square(*s2)):
            return None
        seen.update((s1, s2))
        moves.append(_canon_move(s1, s2))
    if len(seen) != 4:  # cannot happen with wrap lengths >= 5
        return None
    return CrossPair(e, (moves[0], moves[1]))


class CrossTable:
    """Precomputed integer-id tables for one board.

    Everything downstream (enumeration, verification) works on ids:
    edge ids index the canonical edge list, move ids the canonical move
    list, square ids the row-major square list.
    """

    def __init__(self, board: Board):
        self.board = board
        self.squares: list[Square] = list(board.squares())
        self.sq_index = {s: k for k, s in enumerate(self.squares)}
        self.edges: list[BoardEdge] = list(board.edges())
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self.moves: list[KnightMove] = all_knight_moves(board)
        self.move_index = {mv: k for k, mv in enumerate(self.moves)}

        # move id -> carrier edge id
        self.move_edge = [self.edge_index[move_to_edge(board, mv)] for mv in self.moves]

        # edge id -> (move id, move id) for colorable edges, None otherwise
        self.edge_pair: list[tuple[int, int] | None] = []
        for e in self.edges:
            pair = cross_partner(board, e)
            if pair is None:
                self.edge_pair.append(None)
            else:
                self.edge_pair.append(
                    (self.move_index[pair.moves[0]], self.move_index[pair.moves[1]])
                )
        self.colorable = [k for k, p in enumerate(self.edge_pair) if p is not None]

        # colorable edge id -> the 4 distinct square ids of its cross pair
        self.edge_sqids: dict[int, tuple[int, ...]] = {}
        for eid in self.colorable:
            m1, m2 = self.edge_pair[eid]
            sqs = self.moves[m1] + self.moves[m2]
            self.edge_sqids[eid] = tuple(self.sq_index[s] for s in sqs)

        # square id -> colorable edge ids among its surround8
        self.square_scope: list[list[int]] = []
        for s in self.squares:
            scope = []
            for e in surround8(board, s):
                eid = self.edge_index[e]
                if self.edge_pair[eid] is not None:
                    scope.append(eid)
            self.square_scope.append(scope)

    def edge_ids(self, edges) -> tuple[int, ...]:
        return tuple(sorted(self.edge_index[e] for e in edges))

    def edges_of(self, eids) -> tuple[BoardEdge, ...]:
        return tuple(self.edges[k] for k in sorted(eids))
