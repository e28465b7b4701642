import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_leq
from ttc.errors import ParameterError, StructuralError
from ttc.graphs import Graph, build_family
from ttc.labeling import NearFarLabeling
from ttc.threshold import (
    ParamPair, ThresholdColoring, canonicalize, common_upper_bound, embed_coloring,
    fold_upper_bound, is_valid, pair_leq, scale_coloring, scaled_thresholds,
    translate_coloring, verify,
)

ALL_PAIRS_10 = [ParamPair(r, t) for r in range(1, 11) for t in range(r)]
pairs = st.builds(lambda r, t: ParamPair(r, t % r), st.integers(1, 10), st.integers(0, 9))


def test_normalization():
    assert ParamPair(3, 7) == ParamPair(3, 2)
    with pytest.raises(ParameterError):
        ParamPair(0, 0)
    assert str(ParamPair.parse("31,4")) == "31,4"
    with pytest.raises(ParameterError):
        ParamPair.parse("31")


def test_verify_examples():
    g = build_family("prism", 3)
    assert verify(g, NearFarLabeling.all_near(9), ParamPair(31, 4), (0,) * 6) == []
    spokes = g.labeling(sorted(g.spokes))
    assert verify(g, spokes, ParamPair(2, 0), (0, 0, 0, 1, 1, 1)) == []
    k4 = build_family("k4")
    lab = k4.labeling([k4.edge_index[0, 1], k4.edge_index[2, 3]])
    bad = verify(k4, lab, ParamPair(6, 4), (5, 0, 5, 0))
    assert any(v.kind == "near-too-far" and k4.edges[v.edge] == (0, 3) for v in bad)


def test_verify_reports_range_and_size():
    g = build_family("path", 1)
    lab = NearFarLabeling.all_far(1)
    assert [v.kind for v in verify(g, lab, ParamPair(3, 1), (0, 5))] == ["range-overflow"]
    with pytest.raises(StructuralError):
        verify(g, lab, ParamPair(3, 1), (0,))


def test_incomparable_and_embedding_examples():
    assert pair_leq(ParamPair(11, 1), ParamPair(18, 4)) is None
    assert pair_leq(ParamPair(18, 4), ParamPair(11, 1)) is None
    assert pair_leq(ParamPair(5, 1), ParamPair(11, 4)).values == (0, 1, 5, 6, 10)
    assert pair_leq(ParamPair(7, 2), ParamPair(7, 2)).values == tuple(range(7))
    assert common_upper_bound(ParamPair(11, 1), ParamPair(18, 4)) == ParamPair(26, 4)
    assert common_upper_bound(ParamPair(5, 1), ParamPair(13, 4)) == ParamPair(13, 4)
    assert common_upper_bound(ParamPair(9, 3), ParamPair(9, 3)) == ParamPair(9, 3)


def test_greedy_matches_brute_force_small():
    for r1 in range(1, 8):
        for t1 in range(r1):
            for r2 in range(1, 8):
                for t2 in range(r2):
                    p, q = ParamPair(r1, t1), ParamPair(r2, t2)
                    assert (pair_leq(p, q) is not None) == brute_leq(p, q), (p, q)


def test_poset_axioms():
    leq = {(p, q): pair_leq(p, q) is not None for p in ALL_PAIRS_10 for q in ALL_PAIRS_10}
    for p in ALL_PAIRS_10:
        assert leq[p, p]
        for q in ALL_PAIRS_10:
            if leq[p, q] and leq[q, p]:
                assert p == q
            if leq[p, q]:
                assert all(leq[p, s] for s in ALL_PAIRS_10 if leq[q, s])


@given(pairs, pairs)
def test_upper_bound_is_above_both(p, q):
    u = common_upper_bound(p, q)
    assert pair_leq(p, u) is not None and pair_leq(q, u) is not None
    assert u.t == max(p.t, q.t)


@given(pairs, pairs)
def test_witness_is_threshold_preserving(p, q):
    emb = pair_leq(p, q)
    if emb is None:
        return
    v = emb.values
    assert list(v) == sorted(set(v)) and v[-1] < q.r
    for a in range(p.r):
        for b in range(a + 1, p.r):
            assert (b - a <= p.t) == (v[b] - v[a] <= q.t)


def _random_valid(rng, n=7):
    edges = tuple((a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4)
    g = Graph(n, edges)
    r = rng.randint(1, 8)
    t = rng.randrange(r)
    colors = tuple(rng.randrange(r) for _ in range(n))
    far = [e for e, (a, b) in enumerate(edges) if abs(colors[a] - colors[b]) > t]
    return g, g.labeling(far), ParamPair(r, t), ThresholdColoring(colors, ParamPair(r, t))


@settings(max_examples=200)
@given(st.integers(0, 10**6), pairs)
def test_embedding_carries_colorings(seed, target):
    g, lab, pair, col = _random_valid(random.Random(seed))
    assert is_valid(g, lab, pair, col.colors)
    if pair_leq(pair, target) is not None:
        assert verify(g, lab, target, embed_coloring(col, target)) == []


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_scaling_contract(seed, factor):
    g, lab, pair, col = _random_valid(random.Random(seed))
    big = scale_coloring(col, factor)
    assert big.pair.r == factor * (pair.r - 1) + 1
    for t in scaled_thresholds(pair, factor):
        assert verify(g, lab, ParamPair(big.pair.r, t), big) == []


def test_scaling_examples():
    col = ThresholdColoring((-2, -1, 0, 1, 2), ParamPair(5, 1))
    big = scale_coloring(col, 3)
    assert big.colors == (-6, -3, 0, 3, 6) and big.pair == ParamPair(13, 5)
    assert list(scaled_thresholds(ParamPair(5, 1), 3)) == [3, 4, 5]
    assert list(scaled_thresholds(ParamPair(5, 1), 2)) == [2, 3]
    assert scale_coloring(col, 1) == col
    with pytest.raises(ParameterError):
        scale_coloring(col, 0)


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.integers(-50, 50))
def test_translation_invariance(seed, delta):
    g, lab, pair, col = _random_valid(random.Random(seed))
    moved = translate_coloring(col, delta)
    assert verify(g, lab, pair, moved) == verify(g, lab, pair, col)
    assert translate_coloring(moved, -delta) == col


def test_canonicalize():
    assert canonicalize(ThresholdColoring((7, 7, 7), ParamPair(1, 0))).colors == (0, 0, 0)
    assert canonicalize(ThresholdColoring((-2, 0, 2), ParamPair(5, 1))).colors == (0, 2, 4)


def test_fold():
    assert fold_upper_bound([]) is None
    assert fold_upper_bound([ParamPair(5, 1), ParamPair(11, 1), ParamPair(18, 4)]) == ParamPair(26, 4)
