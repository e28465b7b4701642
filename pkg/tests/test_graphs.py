import networkx as nx
import pytest
from hypothesis import given, strategies as st

from ttc.errors import FamilyError, ParameterError, PreconditionError, StructuralError
from ttc.graphs import (
    Graph, build_family, cartesian_product, components_without,
    contract_square_near_edges, pspoke, squares_of,
)
from ttc.labeling import NearFarLabeling


def as_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def test_prism_counts_and_degrees():
    g = build_family("prism", 5)
    assert (g.vertex_count, g.edge_count) == (10, 15)
    assert all(g.degree(v) == 3 for v in range(10))


@pytest.mark.parametrize("n", range(3, 13))
def test_prism_is_cubic(n):
    g = build_family("prism", n)
    assert (g.vertex_count, g.edge_count) == (2 * n, 3 * n)
    assert {g.degree(v) for v in range(2 * n)} == {3}


def test_ladder_uses_path_of_length_n():
    g = build_family("ladder", 4)
    assert (g.vertex_count, g.edge_count) == (10, 13)
    assert len(g.spokes) == 5


def test_moebius_3_is_k33():
    assert nx.is_isomorphic(as_nx(build_family("moebius", 3)), as_nx(build_family("k33")))


@pytest.mark.parametrize("n", range(3, 9))
def test_moebius_bipartite_iff_odd(n):
    assert nx.is_bipartite(as_nx(build_family("moebius", n))) == (n % 2 == 1)


def test_petersen_shape():
    g = build_family("petersen")
    assert g.edge_count == 15 and {g.degree(v) for v in range(10)} == {3}
    assert nx.is_isomorphic(as_nx(g), nx.petersen_graph())


@pytest.mark.parametrize("tag,n", [("cycle", 2), ("prism", 2), ("moebius", 1), ("fan", 0), ("ladder", -1)])
def test_out_of_range_sizes(tag, n):
    with pytest.raises(ParameterError):
        build_family(tag, n)


def test_unknown_family():
    with pytest.raises(FamilyError):
        build_family("torus", 3)


def test_graph_rejects_loops_and_repeats():
    with pytest.raises(StructuralError):
        Graph(2, ((0, 0),))
    with pytest.raises(StructuralError):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(StructuralError):
        Graph(2, ((0, 2),))


def test_products_match_families():
    k2 = build_family("complete", 2)
    ladder = cartesian_product(build_family("path", 4), k2)
    assert nx.is_isomorphic(as_nx(ladder), as_nx(build_family("ladder", 4)))
    assert len(ladder.spokes) == 5
    c3 = cartesian_product(build_family("cycle", 3), k2)
    assert (c3.vertex_count, c3.edge_count) == (6, 9)
    h = build_family("petersen")
    same = cartesian_product(build_family("complete", 1), h)
    assert same.edges == h.edges


@given(st.integers(0, 5), st.integers(1, 4))
def test_product_sizes(n1, n2):
    g, h = build_family("path", n1), build_family("complete", n2)
    p = cartesian_product(g, h)
    assert p.vertex_count == g.vertex_count * h.vertex_count
    assert p.edge_count == g.vertex_count * h.edge_count + h.vertex_count * g.edge_count


def test_spoke_tag_matches_coordinates():
    for tag in ("ladder", "prism", "moebius"):
        g = build_family(tag, 5)
        for e, (a, b) in enumerate(g.edges):
            same_column = g.coords[a][0] == g.coords[b][0] and g.coords[a][1] != g.coords[b][1]
            assert (e in g.spokes) == same_column


def test_squares():
    sq = squares_of(build_family("prism", 4))
    assert len(sq) == 4
    assert set(sq[0].edges) == {0, 4, 8, 9}
    one = squares_of(build_family("ladder", 1))
    assert len(one) == 1 and sorted(one[0].edges) == [0, 1, 2, 3]
    with pytest.raises(FamilyError):
        squares_of(build_family("petersen"))


@pytest.mark.parametrize("n", range(3, 9))
def test_square_edge_multiplicity(n):
    g = build_family("prism", n)
    count = [0] * g.edge_count
    for s in squares_of(g):
        x = set(s.vertices)
        assert all(g.has_edge(*g.edges[e]) and set(g.edges[e]) <= x for e in s.edges)
        for e in s.edges:
            count[e] += 1
    assert all(count[e] == (2 if e in g.spokes else 1) for e in range(g.edge_count))


def test_components():
    g = build_family("petersen")
    spokes = [10, 11, 12, 13, 14]
    assert len(components_without(g, spokes)) == 2
    assert components_without(g) == (tuple(range(10)),)
    assert len(components_without(g, range(15))) == 10


def test_contraction_of_far_spoke_square():
    g = build_family("prism", 4)
    lab = g.labeling(sorted(g.spokes))
    h, small, record = contract_square_near_edges(g, lab, 0)
    assert (h.vertex_count, h.edge_count) == (g.vertex_count - 2, g.edge_count - 3)
    assert small.far_edges() == tuple(sorted(h.spokes))
    assert sorted(set(record)) == list(range(6))
    assert record[0] == record[1] and record[4] == record[5]


@pytest.mark.parametrize("i", range(5))
def test_contraction_keeps_labels(i):
    g = build_family("prism", 5)
    far = {pspoke(5, i), pspoke(5, i + 1), 2, 7}
    far.discard(i)
    far.discard(5 + i)
    lab = g.labeling(sorted(far))
    h, small, record = contract_square_near_edges(g, lab, i)
    kept = [e for e in range(g.edge_count) if e not in (i, 5 + i)]
    for e in kept:
        a, b = g.edges[e]
        assert small.is_far(h.edge_index[record[a], record[b]]) == lab.is_far(e)


def test_contraction_precondition():
    g = build_family("prism", 4)
    with pytest.raises(PreconditionError):
        contract_square_near_edges(g, NearFarLabeling.all_near(12), 0)
