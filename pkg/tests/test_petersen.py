import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ttc.errors import FamilyError, PreconditionError
from ttc.graphs import build_family
from ttc.labeling import NearFarLabeling
from ttc.petersen import (
    PAIR_FIVE, PAIR_SIX, FarEdgeCut, color_via_Nxxyy, color_via_xxyyzz, cycle_catalog,
    detect_structures, far_edge_cut, petersen_color, simple_cycles, split_and_lift,
    witness_catalog,
)
from ttc.threshold import ParamPair, ThresholdColoring, verify

P = build_family("petersen")
M = P.edge_count


def _lab(bits):
    return NearFarLabeling(bits, M)


def test_cycle_catalog_counts():
    fives, sixes = cycle_catalog()
    assert len(fives) == 12 and len(sixes) == 10
    assert simple_cycles(P, 3) == () and simple_cycles(P, 4) == ()
    six, five = witness_catalog()
    assert len(six) == 20 and len(five) == 60


def test_wrong_graph_rejected():
    with pytest.raises(FamilyError):
        far_edge_cut(NearFarLabeling.all_near(9))


def test_detection_examples():
    assert detect_structures(_lab((1 << M) - 1)).kind == "far-edge-cut"
    single = detect_structures(_lab(1))
    assert single.kind == "xxyyzz" and single.witness.holds(_lab(1))
    assert single.counts["far-edge-cut"] == 0
    # every perfect matching leaves two disjoint 5-cycles
    pm = [P.edge_index[i, i + 5] for i in range(5)]
    det = detect_structures(NearFarLabeling.from_far(pm, M))
    assert det.kind == "far-edge-cut"
    assert set(det.cut.S) == set(pm) and len(det.cut.side) == 5


def test_detection_prefers_cut_then_six_cycles():
    rng = random.Random(3)
    seen = set()
    for _ in range(3000):
        lab = _lab(rng.getrandbits(M))
        det = detect_structures(lab)
        seen.add(det.kind)
        c = det.counts
        if c["far-edge-cut"]:
            assert det.kind == "far-edge-cut"
        elif c["xxyyzz"]:
            assert det.kind == "xxyyzz"
        else:
            assert det.kind == "Nxxyy" and c["Nxxyy"] > 0
    assert seen == {"far-edge-cut", "xxyyzz", "Nxxyy"}


def test_cut_iff_near_graph_disconnected():
    rng = random.Random(11)
    for _ in range(1000):
        lab = _lab(rng.getrandbits(M))
        h = nx.Graph()
        h.add_nodes_from(range(10))
        h.add_edges_from(P.edges[e] for e in range(M) if lab.is_near(e))
        cut = far_edge_cut(lab)
        assert (cut is not None) == (not nx.is_connected(h))
        if cut is not None:
            assert 0 in cut.side
            assert cut.side == nx.node_connected_component(h, 0)
            assert all(lab.is_far(e) for e in cut.S)


def test_cycle_colorers_check_their_witness():
    six, five = witness_catalog()
    with pytest.raises(PreconditionError):
        color_via_xxyyzz(_lab(0), five[0])
    w = five[0]
    with pytest.raises(PreconditionError):
        color_via_Nxxyy(_lab(1 << w.edges[0]), w)


def test_xxyyzz_and_nxxyy_colorings():
    rng = random.Random(5)
    got = set()
    for _ in range(2000):
        lab = _lab(rng.getrandbits(M))
        det = detect_structures(lab)
        if det.kind == "xxyyzz":
            col = color_via_xxyyzz(lab, det.witness)
            assert col.pair == PAIR_SIX and verify(P, lab, PAIR_SIX, col) == []
        elif det.kind == "Nxxyy":
            col = color_via_Nxxyy(lab, det.witness)
            assert col.pair == PAIR_FIVE and verify(P, lab, PAIR_FIVE, col) == []
        else:
            continue
        got.add(det.kind)
    assert got == {"xxyyzz", "Nxxyy"}


def test_split_and_lift_pairs():
    pm = [P.edge_index[i, i + 5] for i in range(5)]
    lab = NearFarLabeling.from_far(pm, M)
    cut = far_edge_cut(lab)
    for r, t in [(1, 0), (5, 1), (14, 4)]:
        child = ThresholdColoring((0,) * 10, ParamPair(r, t))
        lifted = split_and_lift(lab, cut, child)
        assert lifted.pair == ParamPair(2 * r + t, t)
        assert all(lifted.colors[v] == r + t for v in cut.other)
    bad = FarEdgeCut(frozenset({0}), frozenset(range(5)), frozenset(range(5, 10)))
    with pytest.raises(PreconditionError):
        split_and_lift(_lab(0), bad, ThresholdColoring((0,) * 10, ParamPair(1, 0)))


def test_constant_base_case():
    col, pair = petersen_color(_lab(0))
    assert pair == ParamPair(1, 0) and set(col.colors) == {0}


@settings(max_examples=300, deadline=None)
@given(st.integers(0, (1 << M) - 1), st.booleans())
def test_petersen_color_any_labeling(bits, uniform):
    lab = _lab(bits)
    col, pair = petersen_color(lab, uniform=uniform)
    assert verify(P, lab, pair, col) == []
    assert col.width <= pair.r
    if uniform:
        # cut recursion bottoming out at the constant coloring keeps t = 0
        assert pair.t in (0, 4)
