import random

import pytest

from crosspatch.board import Board, BoardEdge, Topology, rectangle, ring_3x3
from crosspatch.crosses import CrossTable
from crosspatch.engine import enumerate_red_sets, realize_graph
from crosspatch.hgraph import (
    IDENTITY,
    HStructureError,
    braid_correspondence,
    build_H,
    decompose_and_orient,
    quadrant_parities,
    quadrant_parity_certificate,
    step_permutation,
    verification_report,
    verify_degree_lemmas,
    walk_sigma,
)
from crosspatch.tours import find_lemma1_counterexample


def unique_4x4():
    table = CrossTable(rectangle(4, 4))
    reds = next(iter(enumerate_red_sets(table)))
    return table, reds


def test_build_H_ring_of_4x4():
    table, reds = unique_4x4()
    h = build_H(table.board, table.edges_of(reds))
    ring = {(1, 1), (1, 2), (1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1)}
    assert {v for v, d in h.degree.items() if d == 2} == ring
    assert all(d == 2 for d in h.degree.values())


def test_build_H_empty_and_single_edge():
    b = rectangle(4, 4)
    assert build_H(b, []).degree == {}
    h = build_H(b, [BoardEdge(1, 1, "N")])
    assert sorted(h.degree.items()) == [((1, 1), 1), ((1, 2), 1)]
    report = verify_degree_lemmas(h)
    assert not report["ok"]
    assert report["bad_vertex"] == ((1, 1), 1)


def test_degree_lemmas_pass_on_rectangles():
    for m, n in [(4, 4), (4, 8), (6, 6), (6, 8)]:
        table = CrossTable(rectangle(m, n))
        for reds in enumerate_red_sets(table):
            h = build_H(table.board, table.edges_of(reds))
            assert verify_degree_lemmas(h)["ok"]
            for v, d in h.degree.items():
                assert d in (0, 2)


def test_degree_lemma_fails_on_torus_witness():
    result = find_lemma1_counterexample(Topology.TORUS, 6)
    assert result is not None
    board, reds, vertex = result
    h = build_H(board, reds)
    report = verify_degree_lemmas(h)
    assert not report["ok"]
    assert h.degree_of(vertex) % 2 == 1


def test_decompose_and_orient_4x4():
    table, reds = unique_4x4()
    h = build_H(table.board, table.edges_of(reds))
    cycles = decompose_and_orient(h)
    assert len(cycles) == 1
    assert cycles[0].length == 8
    assert cycles[0].vertices[0] == (1, 1)
    assert build_H(table.board, []).degree == {}
    assert decompose_and_orient(build_H(table.board, [])) == []


def test_decompose_and_orient_rejects_odd_structure():
    b = rectangle(4, 4)
    with pytest.raises(HStructureError):
        decompose_and_orient(build_H(b, [BoardEdge(1, 1, "N")]))


def test_decompose_multiple_cycles_even_lengths():
    table = CrossTable(rectangle(4, 8))
    found_multi = False
    for reds in enumerate_red_sets(table):
        h = build_H(table.board, table.edges_of(reds))
        cycles = decompose_and_orient(h)
        for c in cycles:
            assert c.length % 2 == 0
        found_multi |= len(cycles) >= 2
    assert found_multi


def test_step_permutation_tables():
    assert step_permutation("E").as_mapping() == {"A": "C", "B": "A", "C": "D", "D": "B"}
    assert step_permutation("N").as_mapping() == {"A": "C", "B": "D", "C": "B", "D": "A"}
    for d in "ENWS":
        assert step_permutation(d).parity == 1
    assert step_permutation("W").compose(step_permutation("E")) == IDENTITY
    assert step_permutation("S").compose(step_permutation("N")) == IDENTITY


def test_walk_sigma_4x4_identity():
    table, reds = unique_4x4()
    g = realize_graph(table, reds)
    h = build_H(table.board, table.edges_of(reds))
    cycle = decompose_and_orient(h)[0]
    sigma, detail = walk_sigma(table, cycle, g)
    assert sigma == IDENTITY
    assert len(sigma.cycles()) == 4
    assert detail["edge_disjoint"]
    assert detail["covers_cycle_moves"]
    assert detail["prefix_parity_ok"]


def test_walk_sigma_parity_sweep():
    for m, n in [(4, 5), (4, 8), (6, 6), (6, 8)]:
        table = CrossTable(rectangle(m, n))
        for reds in enumerate_red_sets(table):
            g = realize_graph(table, reds)
            h = build_H(table.board, table.edges_of(reds))
            for cycle in decompose_and_orient(h):
                sigma, detail = walk_sigma(table, cycle, g)
                assert sigma.parity == 0
                assert detail["prefix_parity_ok"]
                assert detail["edge_disjoint"] and detail["covers_cycle_moves"]


def test_braid_correspondence_4x4():
    table, reds = unique_4x4()
    g = realize_graph(table, reds)
    h = build_H(table.board, table.edges_of(reds))
    report = braid_correspondence(table, reds, g, h)
    assert report["ok"]
    assert report["g_cycle_count"] == 4
    assert report["h_cycle_count"] == 1
    assert report["g_cycles_per_h_cycle"] == [4]
    assert report["sigma_cycle_counts"] == [4]


def test_braid_correspondence_sweep():
    for m, n in [(4, 8), (6, 6), (6, 8)]:
        table = CrossTable(rectangle(m, n))
        for reds in enumerate_red_sets(table):
            g = realize_graph(table, reds)
            h = build_H(table.board, table.edges_of(reds))
            report = braid_correspondence(table, reds, g, h)
            assert report["ok"], (m, n, reds)
            assert report["g_cycle_count"] % 2 == 0
            for per, sig in zip(
                report["g_cycles_per_h_cycle"], report["sigma_cycle_counts"]
            ):
                assert per == sig and per % 2 == 0


def test_quadrant_certificate_pseudotours_all_even():
    table, reds = unique_4x4()
    for u in table.board.vertices():
        assert quadrant_parity_certificate(table, reds, u) == (0, 0)


def test_quadrant_certificate_single_edge():
    table = CrossTable(rectangle(4, 4))
    eid = table.edge_index[BoardEdge(1, 1, "N")]
    # quadrant 1 of (1,1) holds only square (1,1), one endpoint of the cross
    assert quadrant_parity_certificate(table, [eid], (1, 1)) == (1, 1)
    assert quadrant_parity_certificate(table, [eid], (0, 0)) == (0, 0)


def test_quadrant_certificate_random_subsets():
    rng = random.Random(4242)
    for _ in range(200):
        m, n = rng.randint(3, 6), rng.randint(3, 6)
        table = CrossTable(rectangle(m, n))
        reds = rng.sample(table.colorable, rng.randint(0, len(table.colorable)))
        for _ in range(4):
            u = (rng.randint(0, m), rng.randint(0, n))
            lhs, rhs = quadrant_parity_certificate(table, reds, u)
            assert lhs == rhs
            qp = quadrant_parities(table, reds, u)
            assert all(q == qp["h_degree_parity"] for q in qp["quadrants"])


def test_verification_report_shapes():
    table, reds = unique_4x4()
    report = verification_report(table, reds)
    assert report["ok"] and report["lemma_1_2_ok"] and report["theorem_1_ok"]
    assert report["g_cycle_count"] == 4
    assert report["h_degree_histogram"] == {2: 8}

    ring = ring_3x3()
    rtable = CrossTable(ring)
    rreds = next(iter(enumerate_red_sets(rtable)))
    rreport = verification_report(rtable, rreds)
    assert rreport["ok"] and rreport["lemma_1_2_ok"]
    assert rreport["g_cycle_count"] == 1  # odd: Theorem 1 needs a rectangle
