import pytest

from crosspatch.board import BoardError, Topology, rectangle, ring_3x3
from crosspatch.tours import (
    InconclusiveError,
    TourQuery,
    find_lemma1_counterexample,
    search_closed_tour,
    search_open_tour,
    verify_witness,
)

RING_TOUR = [(1, 1), (2, 3), (3, 1), (1, 2), (3, 3), (2, 1), (1, 3), (3, 2)]


def odd_incidence(board, reds, vertex):
    count = 0
    for e in reds:
        for v in e.endpoints():
            if board.norm_vertex(*v) == vertex:
                count += 1
    return count % 2 == 1


def test_ring_closed_tour_found():
    witness = search_closed_tour(TourQuery(ring_3x3(), "closed"))
    assert witness is not None
    assert verify_witness(witness)
    assert len(witness.sequence) == 8
    assert set(witness.sequence) == set(RING_TOUR)


def test_ring_open_tour_none():
    assert search_open_tour(TourQuery(ring_3x3(), "open")) is None


def test_small_rectangles_have_no_tours():
    for m in range(3, 7):
        for n in range(m, 7):
            board = rectangle(m, n)
            assert search_closed_tour(TourQuery(board, "closed")) is None
            assert search_open_tour(TourQuery(board, "open")) is None


def test_degenerate_rectangles():
    for m, n in [(1, 5), (2, 6), (1, 1)]:
        board = rectangle(m, n)
        assert search_closed_tour(TourQuery(board, "closed")) is None
        assert search_open_tour(TourQuery(board, "open")) is None


def test_budget_raises_inconclusive():
    with pytest.raises(InconclusiveError):
        search_closed_tour(TourQuery(rectangle(8, 8), "closed", budget=3))


def test_counterexample_torus():
    result = find_lemma1_counterexample(Topology.TORUS, 8)
    assert result is not None
    board, reds, vertex = result
    assert board.topology is Topology.TORUS
    assert board.m * board.n <= 64
    assert odd_incidence(board, reds, vertex)


def test_counterexample_cylinder():
    result = find_lemma1_counterexample(Topology.CYLINDER_X, 6)
    assert result is not None
    board, reds, vertex = result
    assert board.topology is Topology.CYLINDER_X
    assert odd_incidence(board, reds, vertex)


def test_counterexample_rejects_rectangle():
    with pytest.raises(BoardError):
        find_lemma1_counterexample(Topology.RECTANGLE, 6)


def test_witness_serialization():
    witness = search_closed_tour(TourQuery(ring_3x3(), "closed"))
    payload = witness.to_json()
    assert payload["kind"] == "closed"
    assert "endpoints" not in payload
    assert len(payload["cycles"]) == 1
    assert len(payload["cycles"][0]) == 8
    assert len(payload["reds"]) == 4


def test_witness_tamper_detection():
    witness = search_closed_tour(TourQuery(ring_3x3(), "closed"))
    bad = witness.sequence[:]
    bad[1], bad[3] = bad[3], bad[1]
    tampered = type(witness)(
        board=witness.board,
        kind=witness.kind,
        sequence=bad,
        reds=witness.reds,
    )
    assert not verify_witness(tampered)
