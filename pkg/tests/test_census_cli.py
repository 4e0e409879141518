import json
import subprocess
import sys

import pytest

from crosspatch.board import Board, BoardError, Topology, rectangle
from crosspatch.census import (
    HEADER,
    CensusFileError,
    census_record,
    read_census,
    rectangle_range,
    run_census,
)
from crosspatch.cli import parse_board


def cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "crosspatch.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


# ---------------------------------------------------------------- census


def test_census_record_4x4():
    rec = census_record(rectangle(4, 4))
    assert rec.raw_count == 1
    assert rec.symmetry_count == 1
    assert rec.cycle_histogram == {"4": 1}
    assert rec.lemma_1_2_ok and rec.theorem_1_ok
    assert not rec.partial and not rec.extended


def test_census_idempotent(tmp_path):
    db = tmp_path / "census.jsonl"
    boards = rectangle_range(3, 3, 4, 5)
    first = run_census(boards, str(db))
    blob = db.read_bytes()
    second = run_census(boards, str(db))
    assert db.read_bytes() == blob
    assert [r.key for r in first] == [r.key for r in second]
    assert blob.startswith(HEADER.encode())


def test_census_extends_incrementally(tmp_path):
    db = tmp_path / "census.jsonl"
    run_census(rectangle_range(3, 3, 4, 4), str(db))
    n_before = len(read_census(str(db)))
    run_census(rectangle_range(3, 3, 5, 5), str(db))
    after = read_census(str(db))
    assert len(after) > n_before
    key = Board(Topology.RECTANGLE, 4, 4).describe()
    assert after[key].raw_count == 1


def test_census_rejects_corrupt_file(tmp_path):
    db = tmp_path / "census.jsonl"
    db.write_text("# some other file\n")
    with pytest.raises(CensusFileError):
        read_census(str(db))
    db.write_text(HEADER + "\nnot json\n")
    with pytest.raises(CensusFileError):
        read_census(str(db))


def test_census_roundtrip(tmp_path):
    db = tmp_path / "census.jsonl"
    run_census(rectangle_range(4, 4, 4, 5), str(db))
    records = read_census(str(db))
    for rec in records.values():
        assert rec == type(rec).from_json(json.loads(json.dumps(rec.to_json())))


# ---------------------------------------------------------------- board specs


def test_parse_board_specs():
    assert parse_board("4x4") == rectangle(4, 4)
    assert parse_board("torus:5x6") == Board(Topology.TORUS, 5, 6)
    assert parse_board("cylinder_x:5x4") == Board(Topology.CYLINDER_X, 5, 4)
    ring = parse_board("ring")
    assert ring == parse_board("subset:3x3:-2,2")
    assert ring.removed == frozenset({(2, 2)})
    with pytest.raises(BoardError):
        parse_board("blob:4x4")
    with pytest.raises(BoardError):
        parse_board("4by4")


# ---------------------------------------------------------------- CLI


def test_cli_enumerate_deterministic():
    a = cli("enumerate", "4x4")
    b = cli("enumerate", "4x4")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    rec = json.loads(a.stdout.splitlines()[0])
    assert len(rec["reds"]) == 8
    assert len(rec["cycles"]) == 4


def test_cli_verify_roundtrip(tmp_path):
    out = tmp_path / "tours.jsonl"
    assert cli("enumerate", "4x4", "--out", str(out)).returncode == 0
    assert cli("verify", str(out)).returncode == 0
    data = json.loads(out.read_text().splitlines()[0])
    data["reds"] = data["reds"][:-1]  # break closure
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps(data) + "\n")
    assert cli("verify", str(bad)).returncode == 1


def test_cli_tour_exit_codes():
    found = cli("tour", "ring", "--kind", "closed")
    assert found.returncode == 0
    assert json.loads(found.stdout)["kind"] == "closed"
    none = cli("tour", "4x4", "--kind", "closed")
    assert none.returncode == 0
    assert "none" in none.stderr.lower() or "none" in none.stdout.lower()
    tight = cli("tour", "8x8", "--kind", "closed", "--budget", "3")
    assert tight.returncode == 2


def test_cli_counterexample():
    res = cli("counterexample", "--topology", "torus", "--max-size", "6")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["board"]["topology"] == "torus"
    assert payload["odd_vertex"] is not None


def test_cli_bad_board_spec():
    assert cli("enumerate", "wat:4x4").returncode == 1
    assert cli("tour", "4x0", "--kind", "closed").returncode == 1


def test_cli_census_idempotent(tmp_path):
    db = tmp_path / "db.jsonl"
    first = cli("census", "--from", "3x3", "--to", "4x5", "--db", str(db))
    assert first.returncode == 0
    blob = db.read_bytes()
    second = cli("census", "--from", "3x3", "--to", "4x5", "--db", str(db))
    assert second.returncode == 0
    assert db.read_bytes() == blob


def test_cli_render(tmp_path):
    tours = tmp_path / "tours.jsonl"
    assert cli("enumerate", "4x4", "--out", str(tours)).returncode == 0
    single = tmp_path / "one.json"
    single.write_text(tours.read_text().splitlines()[0])
    out = tmp_path / "board.svg"
    res = cli("render", str(single), "--format", "svg", "--out", str(out))
    assert res.returncode == 0
    assert out.read_text().startswith("<svg")
    ascii_a = cli("render", str(single), "--format", "ascii")
    ascii_b = cli("render", str(single), "--format", "ascii")
    assert ascii_a.stdout == ascii_b.stdout and ascii_a.returncode == 0
