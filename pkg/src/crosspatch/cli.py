"""Command-line interface.

Board arguments use a compact spec string:

    4x4                     rectangle
    torus:5x6               wrapped both ways
    cylinder_x:5x4          columns wrap, rows do not
    subset:3x3:-2,2         rectangle minus the listed squares
    ring                    shorthand for subset:3x3:-2,2

Exit codes: 0 success (including a completed search answering "none"),
1 validation failure, 2 inconclusive (budget exhausted).
"""

from __future__ import annotations

import json
import sys

import click

from .board import Board, BoardError, Topology
from .census import CensusFileError, rectangle_range, run_census
from .crosses import CrossTable
from .engine import (
    BudgetExhaustedError,
    EnumerationOptions,
    canonical_form,
    count_up_to_symmetry,
    enumerate_red_sets,
    pseudotour_from_json,
    pseudotour_to_json,
)
from .hgraph import verification_report
from .render import RenderInputError, render as render_doc
from .tours import (
    InconclusiveError,
    TourQuery,
    find_lemma1_counterexample,
    search_closed_tour,
    search_open_tour,
)

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2


def parse_board(spec: str) -> Board:
    if spec == "ring":
        spec = "subset:3x3:-2,2"
    parts = spec.split(":")
    topology = Topology.RECTANGLE
    if not parts[0][:1].isdigit():
        try:
            topology = Topology(parts[0])
        except ValueError:
            raise BoardError(f"unknown topology {parts[0]!r}") from None
        parts = parts[1:]
    if not parts:
        raise BoardError(f"missing dimensions in board spec {spec!r}")
    try:
        m, n = (int(x) for x in parts[0].split("x"))
    except ValueError:
        raise BoardError(f"bad dimensions {parts[0]!r}, expected MxN") from None
    removed = frozenset()
    if len(parts) > 1:
        if not parts[1].startswith("-"):
            raise BoardError(f"expected removed-square list like ':-2,2' in {spec!r}")
        removed = frozenset(
            tuple(int(x) for x in item.split(",")) for item in parts[1][1:].split(";")
        )
    return Board(topology, m, n, removed)


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


@click.group()
def main():
    """Enumerate, verify, search and draw crosspatch knight graphs."""


@main.command("enumerate")
@click.argument("board_spec")
@click.option("--symmetry", is_flag=True, help="emit one representative per symmetry orbit")
@click.option("--limit", type=int, default=None, help="search node budget")
@click.option("--out", type=click.Path(), default=None)
def enumerate_cmd(board_spec, symmetry, limit, out):
    """Stream all crosspatch pseudotours of a board as JSON lines."""
    board = parse_board(board_spec)
    table = CrossTable(board)
    lines = []
    raw = 0
    seen: set = set()
    try:
        for reds in enumerate_red_sets(table, EnumerationOptions(node_budget=limit)):
            raw += 1
            if symmetry:
                canon = canonical_form(table, reds)
                if canon in seen:
                    continue
                seen.add(canon)
            lines.append(json.dumps(pseudotour_to_json(table, reds), sort_keys=True))
    except BudgetExhaustedError as exc:
        _write("".join(line + "\n" for line in lines), out)
        click.echo(f"inconclusive: {exc}", err=True)
        sys.exit(EXIT_INCONCLUSIVE)
    summary = {"board": board.describe(), "raw_count": raw}
    if symmetry:
        summary["symmetry_count"] = len(seen)
    _write("".join(line + "\n" for line in lines), out)
    click.echo(json.dumps(summary, sort_keys=True), err=True)


@main.command("verify")
@click.argument("file", type=click.Path(exists=True))
def verify_cmd(file):
    """Re-verify a pseudotour JSON file (lemmas and Theorem 1)."""
    with open(file) as f:
        data = json.load(f)
    board, reds = pseudotour_from_json(data)
    table = CrossTable(board)
    report = verification_report(table, reds)
    click.echo(json.dumps(report, sort_keys=True, default=str))
    sys.exit(EXIT_OK if report["ok"] else EXIT_INVALID)


@main.command("tour")
@click.argument("board_spec")
@click.option("--kind", type=click.Choice(["closed", "open"]), required=True)
@click.option("--budget", type=int, default=None, help="search node budget")
def tour_cmd(board_spec, kind, budget):
    """Exhaustive search for a crosspatch knight tour."""
    board = parse_board(board_spec)
    query = TourQuery(board, kind, budget)
    try:
        witness = (search_closed_tour if kind == "closed" else search_open_tour)(query)
    except InconclusiveError as exc:
        click.echo(f"inconclusive: {exc}", err=True)
        sys.exit(EXIT_INCONCLUSIVE)
    if witness is None:
        click.echo(json.dumps({"board": board.describe(), "kind": kind, "result": "none"}))
    else:
        click.echo(json.dumps(witness.to_json(), sort_keys=True))


@main.command("counterexample")
@click.option(
    "--topology",
    type=click.Choice(["torus", "cylinder_x", "cylinder_y"]),
    required=True,
)
@click.option("--max-size", type=int, default=8)
def counterexample_cmd(topology, max_size):
    """Smallest wrapped board with an odd-degree red-graph vertex."""
    result = find_lemma1_counterexample(Topology(topology), max_size)
    if result is None:
        click.echo(
            json.dumps({"result": "none", "topology": topology, "max_size": max_size})
        )
        return
    board, reds, vertex = result
    table = CrossTable(board)
    data = pseudotour_to_json(table, [table.edge_index[e] for e in reds])
    data["odd_vertex"] = list(vertex)
    click.echo(json.dumps(data, sort_keys=True))


@main.command("census")
@click.option("--from", "lo", default="3x3", help="lower corner MxN of the sweep")
@click.option("--to", "hi", default="6x6", help="upper corner MxN of the sweep")
@click.option("--db", type=click.Path(), required=True, help="line-delimited JSON file")
@click.option("--budget", type=int, default=None, help="per-board node budget")
def census_cmd(lo, hi, db, budget):
    """Sweep rectangles and append census records to a database file."""
    try:
        m_lo, n_lo = (int(x) for x in lo.split("x"))
        m_hi, n_hi = (int(x) for x in hi.split("x"))
    except ValueError:
        raise BoardError(f"bad range {lo!r}..{hi!r}, expected MxN") from None
    boards = rectangle_range(m_lo, n_lo, m_hi, n_hi)
    records = run_census(boards, db, node_budget=budget)
    partial = False
    for rec in records:
        click.echo(json.dumps(rec.to_json(), sort_keys=True))
        partial |= rec.partial
    if partial:
        click.echo("some records are partial (budget exhausted)", err=True)
        sys.exit(EXIT_INCONCLUSIVE)


@main.command("render")
@click.argument("file", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["svg", "ascii"]), default="svg")
@click.option("--out", type=click.Path(), default=None)
def render_cmd(file, fmt, out):
    """Draw a pseudotour or tour-witness JSON file."""
    with open(file) as f:
        data = json.load(f)
    board, reds = pseudotour_from_json(data)
    _write(render_doc(board, reds, fmt), out)


def run():
    try:
        main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_INVALID)
    except click.Abort:
        sys.exit(EXIT_INVALID)
    except (BoardError, CensusFileError, RenderInputError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)


if __name__ == "__main__":
    run()
