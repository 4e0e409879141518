"""Deterministic SVG and ASCII rendering of crosspatch graphs.

SVG shows the full picture: the board lattice, the knight graph G as a
braid of segments between square centers, and the red edges of H drawn
heavy so the crosses visibly intersect at their midpoints.  Coordinates
are the doubled integers scaled by a pixel unit, with the y axis flipped
so row 1 sits at the bottom.

ASCII shows H only (red edges as '|' and '-'); knight-move segments do
not rasterize legibly at character resolution.
"""

from __future__ import annotations

from .board import Board, BoardEdge, Topology
from .crosses import CrossTable
from .engine import realize_graph

DEFAULT_UNIT = 24  # pixels per half-square


class RenderInputError(ValueError):
    """Input failed validation before rendering."""


def _validate(board: Board, reds: list[BoardEdge]) -> CrossTable:
    table = CrossTable(board)
    for e in reds:
        if e not in table.edge_index:
            raise RenderInputError(f"red edge {e} does not exist on {board.describe()}")
        if table.edge_pair[table.edge_index[e]] is None:
            raise RenderInputError(f"red edge {e} is a border edge and carries no cross")
    return table


def render_svg(board: Board, reds: list[BoardEdge], unit: int = DEFAULT_UNIT) -> str:
    table = _validate(board, sorted(reds))
    m, n = board.m, board.n
    w, h = 2 * m * unit, 2 * n * unit

    def pt(x: int, y: int) -> tuple[int, int]:
        # doubled coords -> pixels, y flipped
        return x * unit, (2 * n - y) * unit

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        '<g stroke="#bbbbbb" stroke-width="1">',
    ]
    for a in range(m + 1):
        lines.append(f'<line x1="{a*2*unit}" y1="0" x2="{a*2*unit}" y2="{h}"/>')
    for b in range(n + 1):
        lines.append(f'<line x1="0" y1="{b*2*unit}" x2="{w}" y2="{b*2*unit}"/>')
    lines.append("</g>")
    removed = sorted(board.removed)
    if removed:
        lines.append('<g fill="#dddddd">')
        for (i, j) in removed:
            lines.append(
                f'<rect x="{(i-1)*2*unit}" y="{(n-j)*2*unit}" '
                f'width="{2*unit}" height="{2*unit}"/>'
            )
        lines.append("</g>")
    # red edges of H
    if reds:
        lines.append('<g stroke="#cc2222" stroke-width="4" stroke-linecap="round">')
        for e in sorted(reds):
            (a1, b1), (a2, b2) = e.endpoints()
            x1, y1 = pt(2 * a1, 2 * b1)
            x2, y2 = pt(2 * a2, 2 * b2)
            lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        lines.append("</g>")
    # knight graph G
    g = realize_graph(table, [table.edge_index[e] for e in sorted(reds)])
    if g.moves:
        lines.append('<g stroke="#2244cc" stroke-width="2" fill="none">')
        for (i1, j1), (i2, j2) in sorted(g.moves):
            x1, y1 = pt(2 * i1 - 1, 2 * j1 - 1)
            x2, y2 = pt(2 * i2 - 1, 2 * j2 - 1)
            lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_ascii(board: Board, reds: list[BoardEdge]) -> str:
    _validate(board, sorted(reds))
    m, n = board.m, board.n
    red = set(reds)
    rows = []
    for b in range(n, -1, -1):
        vert_row = []
        for a in range(m + 1):
            vert_row.append("+")
            if a < m or board.wrap_x:
                e = board.norm_edge(a, b, "E")
                vert_row.append("---" if e in red else "   ")
        rows.append("".join(vert_row))
        if b > 0:
            edge_row = []
            for a in range(m + 1):
                e = board.norm_edge(a, b - 1, "N")
                edge_row.append("|" if e in red else " ")
                if a < m:
                    edge_row.append("   ")
            rows.append("".join(edge_row))
    return "\n".join(rows) + "\n"


def render(board: Board, reds: list[BoardEdge], format: str, unit: int = DEFAULT_UNIT) -> str:
    if format == "svg":
        return render_svg(board, reds, unit)
    if format == "ascii":
        return render_ascii(board, reds)
    raise RenderInputError(f"unknown format {format!r}")
