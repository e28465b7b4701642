import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_zigzag_instance
from ttc.errors import PreconditionError, StructuralError
from ttc.graphs import Graph, build_family
from ttc.labeling import NearFarLabeling
from ttc.threshold import ParamPair, verify
from ttc.zigzag import (
    ZigzagInstance, check_conditions, effective_matching, fan_color, ladder_color,
    ladder_instance, zigzag_color,
)

C4 = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


def test_each_condition_has_a_witness():
    tri = build_family("cycle", 3)
    far01 = tri.labeling([tri.edge_index[0, 1]])
    d = check_conditions(tri, far01, ZigzagInstance.from_a(tri, {0, 1}))
    assert d.inner_near == tri.edge_index[0, 1] and not d.ok

    d = check_conditions(tri, far01, ZigzagInstance.from_a(tri, ()))
    assert sorted(d.even_cycles) == [0, 1, 2]
    assert check_conditions(tri, tri.labeling([0, 1]), ZigzagInstance.from_a(tri, ())).ok

    d = check_conditions(C4, NearFarLabeling.all_near(4), ZigzagInstance.from_a(C4, {0}, {0, 3}))
    assert d.matching == (0, 3)
    d = check_conditions(C4, NearFarLabeling.all_near(4), ZigzagInstance.from_a(C4, {0, 1}, {0}))
    assert d.matching == 0

    lab = C4.labeling([C4.edge_index[0, 1]])
    d = check_conditions(C4, lab, ZigzagInstance.from_a(C4, {0, 2}))
    assert d.uniform == 1
    assert check_conditions(C4, lab, ZigzagInstance.from_a(C4, {0, 2}, {0})).ok
    assert [line.split()[1] for line in d.lines()] == ["pass", "pass", "pass", "fail:"]


def test_partition_must_be_exact():
    with pytest.raises(StructuralError):
        check_conditions(C4, NearFarLabeling.all_near(4), ZigzagInstance(frozenset({0}), frozenset({0, 1, 2, 3})))
    with pytest.raises(StructuralError):
        check_conditions(C4, NearFarLabeling.all_near(4), ZigzagInstance.from_a(C4, {0}, {9}))


def test_failing_conditions_raise():
    tri = build_family("cycle", 3)
    with pytest.raises(PreconditionError):
        zigzag_color(tri, tri.labeling([0]), ZigzagInstance.from_a(tri, ()))


def test_plain_and_matched_pairs():
    lab = C4.labeling([C4.edge_index[0, 1]])
    col = zigzag_color(C4, lab, ZigzagInstance.from_a(C4, {0, 2}, {0}))
    assert col.pair == ParamPair(13, 4) and col.branch == "zigzag"
    assert max(map(abs, col.colors)) <= 6
    assert verify(C4, lab, col.pair, col) == []
    col = zigzag_color(C4, NearFarLabeling.all_far(4), ZigzagInstance.from_a(C4, {0, 2}))
    assert col.pair == ParamPair(5, 1)
    assert col.colors[0] == col.colors[2] == 0
    assert {abs(c) for c in col.colors[1::2]} == {2}


def test_effective_matching_skips_agreeing_edges():
    lab = C4.labeling([C4.edge_index[0, 1]])
    assert effective_matching(C4, lab, ZigzagInstance.from_a(C4, {0, 2}, {0})) == {0}
    near = NearFarLabeling.all_near(4)
    inst = ZigzagInstance.from_a(C4, {0, 2}, {0})
    assert effective_matching(C4, near, inst) == frozenset()
    col = zigzag_color(C4, near, inst)
    assert col.pair == ParamPair(13, 4) and verify(C4, near, col.pair, col) == []


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_random_instances_color(seed, with_matching):
    g, lab, A, M = random_zigzag_instance(random.Random(seed), with_matching=with_matching)
    inst = ZigzagInstance.from_a(g, A, M)
    assert check_conditions(g, lab, inst).ok
    col = zigzag_color(g, lab, inst)
    assert verify(g, lab, col.pair, col) == []
    assert col.pair == (ParamPair(13, 4) if M else ParamPair(5, 1))
    assert all(col.colors[a] == 0 for a in A if not any(a in g.edges[e] for e in M))


def test_ladder_instance_shape():
    inst = ladder_instance(5)
    assert inst.A == {0, 4, 8}
    g = build_family("ladder", 5)
    b_edges = [e for e in g.edges if e[0] in inst.B and e[1] in inst.B]
    assert len(b_edges) == len(inst.B) - 1  # G[B] is a path


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ladders_all_labelings(n):
    g = build_family("ladder", n)
    for bits in range(1 << g.edge_count):
        lab = NearFarLabeling(bits, g.edge_count)
        col = ladder_color(n, lab)
        assert col.pair == ParamPair(5, 1) and col.branch == "ladder"
        assert verify(g, lab, col.pair, col) == []


@pytest.mark.parametrize("n", [1, 2, 5, 6])
def test_fans_all_labelings(n):
    g = build_family("fan", n)
    for bits in range(1 << g.edge_count):
        lab = NearFarLabeling(bits, g.edge_count)
        col = fan_color(n, lab)
        assert col.colors[0] == 0
        assert verify(g, lab, ParamPair(5, 1), col) == []


def test_fan_example():
    g = build_family("fan", 3)
    # apex edges near, far, near; spine far then near
    lab = NearFarLabeling.from_far([1, 3], g.edge_count)
    assert fan_color(3, lab).colors == (0, 1, -2, -1)
