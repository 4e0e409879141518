"""Boards, squares, board vertices and board edges.

Squares are labeled (i, j) with column i in 1..m and row j in 1..n.
Board vertices are the lattice corners, labeled (a, b) with a in 0..m and
b in 0..n (reduced modulo m / n on wrapped axes).  A board edge is a unit
segment between adjacent vertices, stored canonically as the N- or E-edge
of its lower/left endpoint.

All geometry uses doubled coordinates internally: square (i, j) has its
center at (2i-1, 2j-1) and vertex (a, b) sits at (2a, 2b), so midpoints of
knight moves and board edges are exact integer points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

Square = tuple[int, int]
Vertex = tuple[int, int]


class Topology(enum.Enum):
    RECTANGLE = "rectangle"
    CYLINDER_X = "cylinder_x"
    CYLINDER_Y = "cylinder_y"
    TORUS = "torus"
    SUBSET = "subset"


class BoardError(ValueError):
    """Invalid board construction or a square/edge outside the board."""


class UnsupportedTopologyError(BoardError):
    """Operation only defined for some topologies (usually Rectangle)."""


# Minimum circumference of a wrapped axis.  Below 5, knight moves, cross
# pairs and the eight surrounding edges of a square start to self-overlap
# under wrap, and the edge/cross-pair bijection breaks down.
MIN_WRAP = 5


class BoardEdge(NamedTuple):
    """Canonical undirected unit edge: anchor vertex plus 'N' or 'E'."""

    a: int
    b: int
    dir: str  # "N": (a,b)-(a,b+1), "E": (a,b)-(a+1,b)

    def endpoints(self) -> tuple[Vertex, Vertex]:
        if self.dir == "N":
            return (self.a, self.b), (self.a, self.b + 1)
        return (self.a, self.b), (self.a + 1, self.b)


@dataclass(frozen=True)
class Board:
    topology: Topology
    m: int
    n: int
    removed: frozenset[Square] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise BoardError(f"board dimensions must be positive, got {self.m}x{self.n}")
        if self.removed and self.topology is not Topology.SUBSET:
            raise BoardError("removed squares are only allowed on subset boards")
        if self.wrap_x and self.m < MIN_WRAP:
            raise BoardError(f"wrapped axis needs length >= {MIN_WRAP}, got m={self.m}")
        if self.wrap_y and self.n < MIN_WRAP:
            raise BoardError(f"wrapped axis needs length >= {MIN_WRAP}, got n={self.n}")
        for (i, j) in self.removed:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise BoardError(f"removed square {(i, j)} outside {self.m}x{self.n}")

    # -- topology helpers ------------------------------------------------

    @property
    def wrap_x(self) -> bool:
        return self.topology in (Topology.CYLINDER_X, Topology.TORUS)

    @property
    def wrap_y(self) -> bool:
        return self.topology in (Topology.CYLINDER_Y, Topology.TORUS)

    def norm_square(self, i: int, j: int) -> Square:
        """Reduce square coordinates into 1..m x 1..n on wrapped axes."""
        if self.wrap_x:
            i = (i - 1) % self.m + 1
        if self.wrap_y:
            j = (j - 1) % self.n + 1
        return (i, j)

    def has_square(self, i: int, j: int) -> bool:
        i, j = self.norm_square(i, j)
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            return False
        return (i, j) not in self.removed

    def squares(self) -> Iterator[Square]:
        """All squares in row-major order (j, then i)."""
        for j in range(1, self.n + 1):
            for i in range(1, self.m + 1):
                if (i, j) not in self.removed:
                    yield (i, j)

    def norm_vertex(self, a: int, b: int) -> Vertex:
        if self.wrap_x:
            a %= self.m
        if self.wrap_y:
            b %= self.n
        return (a, b)

    def has_vertex(self, a: int, b: int) -> bool:
        a, b = self.norm_vertex(a, b)
        return 0 <= a <= (self.m - 1 if self.wrap_x else self.m) and 0 <= b <= (
            self.n - 1 if self.wrap_y else self.n
        )

    def vertices(self) -> Iterator[Vertex]:
        amax = self.m - 1 if self.wrap_x else self.m
        bmax = self.n - 1 if self.wrap_y else self.n
        for b in range(bmax + 1):
            for a in range(amax + 1):
                yield (a, b)

    # -- edges -----------------------------------------------------------

    def _edge_flank_squares(self, a: int, b: int, dir: str) -> tuple[Square, Square]:
        # Squares touching the edge from either side (before existence check).
        if dir == "N":
            return (a, b + 1), (a + 1, b + 1)
        return (a + 1, b), (a + 1, b + 1)

    def edge(self, a: int, b: int, dir: str) -> BoardEdge:
        """Canonical edge, or raise if it does not exist on this board."""
        e = self.norm_edge(a, b, dir)
        if e is None:
            raise BoardError(f"edge ({a},{b},{dir}) does not exist on this board")
        return e

    def norm_edge(self, a: int, b: int, dir: str) -> BoardEdge | None:
        """Canonicalize, returning None for edges off the board."""
        if dir not in ("N", "E"):
            raise BoardError(f"edge direction must be 'N' or 'E', got {dir!r}")
        a, b = self.norm_vertex(a, b)
        if self.topology is Topology.SUBSET:
            if not (0 <= a <= self.m and 0 <= b <= self.n):
                return None
            s1, s2 = self._edge_flank_squares(a, b, dir)
            if not (self.has_square(*s1) or self.has_square(*s2)):
                return None
            return BoardEdge(a, b, dir)
        if dir == "N":
            ok_a = 0 <= a <= (self.m - 1 if self.wrap_x else self.m)
            ok_b = self.wrap_y or 0 <= b <= self.n - 1
        else:
            ok_a = self.wrap_x or 0 <= a <= self.m - 1
            ok_b = 0 <= b <= (self.n - 1 if self.wrap_y else self.n)
        return BoardEdge(a, b, dir) if (ok_a and ok_b) else None

    def has_edge(self, a: int, b: int, dir: str) -> bool:
        return self.norm_edge(a, b, dir) is not None

    def edges(self) -> Iterator[BoardEdge]:
        """All board edges in canonical order (a, b, dir) with E < N."""
        amax = self.m - 1 if self.wrap_x else self.m
        bmax = self.n - 1 if self.wrap_y else self.n
        out = []
        for a in range(amax + 1):
            for b in range(bmax + 1):
                for dir in ("E", "N"):
                    e = self.norm_edge(a, b, dir)
                    if e is not None and e == (a, b, dir):
                        out.append(e)
        out.sort()
        return iter(out)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "topology": self.topology.value,
            "m": self.m,
            "n": self.n,
            "removed": sorted([list(s) for s in self.removed]),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Board":
        return cls(
            topology=Topology(data["topology"]),
            m=int(data["m"]),
            n=int(data["n"]),
            removed=frozenset((int(i), int(j)) for i, j in data.get("removed", [])),
        )

    def describe(self) -> str:
        base = f"{self.topology.value}:{self.m}x{self.n}"
        if self.removed:
            base += ":-" + ";".join(f"{i},{j}" for i, j in sorted(self.removed))
        return base


def rectangle(m: int, n: int) -> Board:
    return Board(Topology.RECTANGLE, m, n)


def ring_3x3() -> Board:
    """The eight-square ring: a 3x3 board with the central square removed."""
    return Board(Topology.SUBSET, 3, 3, frozenset({(2, 2)}))


# -- corner vertices and surrounding edges -------------------------------

def corner_vertices(board: Board, s: Square) -> tuple[Vertex, Vertex, Vertex, Vertex]:
    """The (A, B, C, D) = (top-right, top-left, bottom-left, bottom-right)
    vertices of a square."""
    i, j = s
    if not board.has_square(i, j):
        raise BoardError(f"square {s} does not exist")
    nv = board.norm_vertex
    return nv(i, j), nv(i - 1, j), nv(i - 1, j - 1), nv(i, j - 1)


def corner_squares(board: Board, v: Vertex) -> tuple[Square, Square, Square, Square]:
    """Inverse of corner_vertices: the four squares having v as their
    A, B, C, D vertex respectively (entries may be off-board)."""
    a, b = v
    ns = board.norm_square
    return ns(a, b), ns(a + 1, b), ns(a + 1, b + 1), ns(a, b + 1)


def surround8(board: Board, s: Square) -> list[BoardEdge]:
    """The up-to-eight board edges around a square that can carry a cross
    involving it: E(A), N(A), N(B), W(B), W(C), S(C), S(D), E(D)."""
    i, j = s
    if not board.has_square(i, j):
        raise BoardError(f"square {s} does not exist")
    candidates = [
        (i, j, "E"),       # E(A)
        (i, j, "N"),       # N(A)
        (i - 1, j, "N"),   # N(B)
        (i - 2, j, "E"),   # W(B)
        (i - 2, j - 1, "E"),  # W(C)
        (i - 1, j - 2, "N"),  # S(C)
        (i, j - 2, "N"),   # S(D)
        (i, j - 1, "E"),   # E(D)
    ]
    out: list[BoardEdge] = []
    for a, b, dir in candidates:
        e = board.norm_edge(a, b, dir)
        if e is not None and e not in out:
            out.append(e)
    return out


def quadrant(board: Board, u: Vertex, which: int) -> set[Square]:
    """One of the four quadrants a vertex splits a rectangle into.

    Quadrant 1 is the lower-left block {(i,j) : i <= a, j <= b}; 2, 3, 4
    continue counterclockwise (lower-right, upper-right, upper-left).
    """
    if board.topology not in (Topology.RECTANGLE, Topology.SUBSET):
        raise UnsupportedTopologyError("quadrants are only defined on rectangles")
    a, b = u
    if not board.has_vertex(a, b):
        raise BoardError(f"vertex {u} does not exist")
    if which == 1:
        box = (1, a, 1, b)
    elif which == 2:
        box = (a + 1, board.m, 1, b)
    elif which == 3:
        box = (a + 1, board.m, b + 1, board.n)
    elif which == 4:
        box = (1, a, b + 1, board.n)
    else:
        raise BoardError(f"quadrant index must be 1..4, got {which}")
    ilo, ihi, jlo, jhi = box
    return {
        (i, j)
        for i in range(ilo, ihi + 1)
        for j in range(jlo, jhi + 1)
        if board.has_square(i, j)
    }
