"""Crosspatch knight graphs: enumeration, verification, and search.

A cross is a pair of knight moves whose segments share a midpoint; a
crosspatch graph is a knight graph in which every move belongs to a
cross.  This package enumerates crosspatch pseudotours (degree-2
crosspatch graphs), verifies their braid structure through the red-edge
graph on board vertices, searches for closed and open crosspatch tours,
and runs census sweeps over board families, on rectangles as well as
cylinder and torus boards.
"""

__version__ = "1.0.0"

from .board import (  # noqa: F401
    Board,
    BoardEdge,
    BoardError,
    Topology,
    UnsupportedTopologyError,
    corner_vertices,
    quadrant,
    rectangle,
    ring_3x3,
    surround8,
)
from .crosses import (  # noqa: F401
    CrossPair,
    CrossTable,
    cross_partner,
    knight_moves,
    move_to_edge,
)
from .engine import (  # noqa: F401
    BudgetExhaustedError,
    CrosspatchGraph,
    CycleDecomposition,
    NotAPseudotourError,
    cycle_decomposition,
    enumerate_pseudotours,
    oracle_two_factors,
    realize_graph,
)
from .hgraph import (  # noqa: F401
    CornerPermutation,
    CrossGraphH,
    OrientedHCycle,
    braid_correspondence,
    build_H,
    decompose_and_orient,
    quadrant_parity_certificate,
    step_permutation,
    verify_degree_lemmas,
    walk_sigma,
)
from .tours import (  # noqa: F401
    InconclusiveError,
    TourQuery,
    TourWitness,
    find_lemma1_counterexample,
    search_closed_tour,
    search_open_tour,
    verify_witness,
)
