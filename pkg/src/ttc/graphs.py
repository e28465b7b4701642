"""Graph families with fibre metadata, squares and structural queries.

Indexing conventions (all families):

* ``path n``: the path *of length n*, i.e. ``n + 1`` vertices ``0..n``.
  Off-by-one here corrupts every ladder, so note it twice: ``P_n`` has
  ``n`` edges, and the ladder ``L_n = P_n x K2`` has ``2(n + 1)`` vertices.
* ladder ``L_n``: ``v_i -> i`` and ``u_i -> n + 1 + i`` for ``i = 0..n``;
  edges ``top_i = v_i v_{i+1}`` at index ``i``, ``bottom_i = u_i u_{i+1}`` at
  ``n + i`` and the spokes ``v_i u_i`` at ``2n + i``.
* prism ``C_n x K2``: ``v_i -> i``, ``u_i -> n + i``; ``top_i`` at ``i``,
  ``bottom_i`` at ``n + i``, spoke ``i`` at ``2n + i``; indices mod ``n``.
* Moebius ladder ``M_n``: ``v_0..v_{2n-1}`` along the peripheral cycle,
  peripheral edge ``v_i v_{i+1}`` at index ``i`` and spoke ``v_i v_{i+n}``
  at ``2n + i``.
* fan ``F_n``: apex ``0``, spine ``1..n``; apex edges ``0 i`` at ``i - 1``,
  spine edges ``i i+1`` at ``n + i - 1``.
* Petersen: outer 5-cycle ``p0..p4``, inner pentagram ``p5..p9``;
  ``e_i = p_{i+2} p_{i+3}`` at ``i``, ``e'_i = p_{5+(i+1)%5} p_{5+(i+4)%5}``
  at ``5 + i`` and ``f_i = p_i p_{i+5}`` at ``10 + i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import FamilyError, ParameterError, PreconditionError, StructuralError
from .labeling import NearFarLabeling

FAMILIES = (
    "path", "cycle", "complete", "ladder", "prism", "moebius", "fan",
    "petersen", "k33", "k4",
)
_SIZELESS = ("petersen", "k33", "k4")


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with stable edge indices.

    ``coords`` holds per-vertex fibre coordinates ``(g_index, h_index)`` and
    ``spokes`` the indices of K2-fibre edges, when the family has them.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    family: str = "generic"
    size: int | None = None
    coords: tuple[tuple[int, int], ...] | None = field(default=None, compare=False)
    spokes: frozenset[int] = field(default=frozenset(), compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise StructuralError("vertex count must be non-negative")
        norm = []
        seen = set()
        for idx, (a, b) in enumerate(self.edges):
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise StructuralError(f"edge {idx} ({a},{b}) has an endpoint out of range")
            if a == b:
                raise StructuralError(f"edge {idx} is a loop at {a}")
            key = (a, b) if a < b else (b, a)
            if key in seen:
                raise StructuralError(f"edge {idx} repeats the pair {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))
        if self.coords is not None and len(self.coords) != self.vertex_count:
            raise StructuralError("coords must cover every vertex")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        table = {}
        for i, (a, b) in enumerate(self.edges):
            table[a, b] = i
            table[b, a] = i
        return table

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbour, edge index)`` pairs in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, (a, b) in enumerate(self.edges):
            adj[a].append((b, i))
            adj[b].append((a, i))
        return tuple(tuple(x) for x in adj)

    @cached_property
    def incident_masks(self) -> tuple[int, ...]:
        """Per vertex, the bitmask of incident edge indices."""
        masks = [0] * self.vertex_count
        for i, (a, b) in enumerate(self.edges):
            masks[a] |= 1 << i
            masks[b] |= 1 << i
        return tuple(masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, _ in self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edge_index

    def bfs_order(self) -> tuple[int, ...]:
        """Vertices in BFS order, restarting at the least unvisited vertex."""
        seen = [False] * self.vertex_count
        order = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            queue = deque([s])
            while queue:
                x = queue.popleft()
                order.append(x)
                for y, _ in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
        return tuple(order)

    def labeling(self, far: Iterable[int] = ()) -> NearFarLabeling:
        return NearFarLabeling.from_far(far, self.edge_count)

    def check_labeling(self, lab: NearFarLabeling) -> None:
        if lab.size != self.edge_count:
            raise StructuralError(
                f"labeling covers {lab.size} edges but the graph has {self.edge_count}"
            )


class SquareRef(NamedTuple):
    """A square: vertices ``(v_i, v_{i+1}, u_i, u_{i+1})`` and edges
    ``(top_i, bottom_i, spoke_i, spoke_{i+1})``."""

    index: int
    vertices: tuple[int, int, int, int]
    edges: tuple[int, int, int, int]


# prism coordinate helpers -------------------------------------------------

def pv(n: int, i: int) -> int:
    return i % n


def pu(n: int, i: int) -> int:
    return n + i % n


def ptop(n: int, i: int) -> int:
    return i % n


def pbottom(n: int, i: int) -> int:
    return n + i % n


def pspoke(n: int, i: int) -> int:
    return 2 * n + i % n


# builders -----------------------------------------------------------------

def build_family(tag: str, n: int | None = None) -> Graph:
    """Build a named graph with the indexing described in the module docstring."""
    if tag in _SIZELESS:
        return _build_sizeless(tag)
    if tag not in FAMILIES:
        raise FamilyError(f"unknown family {tag!r}")
    if n is None or isinstance(n, bool) or int(n) != n:
        raise ParameterError(f"family {tag!r} needs an integer size")
    return _build_sized(tag, int(n))


@lru_cache(maxsize=None)
def _build_sized(tag: str, n: int) -> Graph:
    minimum = {"path": 0, "cycle": 3, "complete": 1, "ladder": 0,
               "prism": 3, "moebius": 3, "fan": 1}[tag]
    if n < minimum:
        raise ParameterError(f"{tag} needs n >= {minimum}, got {n}")
    if tag == "path":
        return Graph(n + 1, tuple((i, i + 1) for i in range(n)), "path", n)
    if tag == "cycle":
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), "cycle", n)
    if tag == "complete":
        return Graph(n, tuple(combinations(range(n), 2)), "complete", n)
    if tag == "ladder":
        m = n + 1
        edges = [(i, i + 1) for i in range(n)]
        edges += [(m + i, m + i + 1) for i in range(n)]
        edges += [(i, m + i) for i in range(m)]
        coords = tuple((i, 0) for i in range(m)) + tuple((i, 1) for i in range(m))
        return Graph(2 * m, tuple(edges), "ladder", n, coords,
                     frozenset(range(2 * n, 3 * n + 1)))
    if tag == "prism":
        edges = [(i, (i + 1) % n) for i in range(n)]
        edges += [(n + i, n + (i + 1) % n) for i in range(n)]
        edges += [(i, n + i) for i in range(n)]
        coords = tuple((i, 0) for i in range(n)) + tuple((i, 1) for i in range(n))
        return Graph(2 * n, tuple(edges), "prism", n, coords,
                     frozenset(range(2 * n, 3 * n)))
    if tag == "moebius":
        edges = [(i, (i + 1) % (2 * n)) for i in range(2 * n)]
        edges += [(i, i + n) for i in range(n)]
        coords = tuple((i % n, i // n) for i in range(2 * n))
        return Graph(2 * n, tuple(edges), "moebius", n, coords,
                     frozenset(range(2 * n, 3 * n)))
    # fan
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, i + 1) for i in range(1, n)]
    return Graph(n + 1, tuple(edges), "fan", n)


@lru_cache(maxsize=None)
def _build_sizeless(tag: str) -> Graph:
    if tag == "petersen":
        edges = [((i + 2) % 5, (i + 3) % 5) for i in range(5)]
        edges += [(5 + (i + 1) % 5, 5 + (i + 4) % 5) for i in range(5)]
        edges += [(i, i + 5) for i in range(5)]
        return Graph(10, tuple(edges), "petersen")
    if tag == "k33":
        edges = [(a, b) for a, b in combinations(range(6), 2) if (a - b) % 2]
        return Graph(6, tuple(edges), "k33")
    return Graph(4, tuple(combinations(range(4), 2)), "k4")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """The cartesian product; vertex ``(a, b)`` gets index ``a * |V(h)| + b``.

    Edges of ``h``-fibres come first, then those of ``g``-fibres.  When ``h``
    is ``K2`` the ``h``-fibre edges are tagged as spokes.
    """
    nh = h.vertex_count
    edges = []
    for a in range(g.vertex_count):
        for b, b2 in h.edges:
            edges.append((a * nh + b, a * nh + b2))
    h_fibre_edges = len(edges)
    for b in range(nh):
        for a, a2 in g.edges:
            edges.append((a * nh + b, a2 * nh + b))
    coords = tuple((a, b) for a in range(g.vertex_count) for b in range(nh))
    spokes = frozenset(range(h_fibre_edges)) if (nh == 2 and h.edge_count == 1) else frozenset()
    return Graph(g.vertex_count * nh, tuple(edges), "product", None, coords, spokes)


def squares_of(g: Graph) -> tuple[SquareRef, ...]:
    """All squares of a ladder, prism or Moebius ladder, in index order."""
    n = g.size
    if g.family == "ladder":
        m = n + 1
        return tuple(
            SquareRef(i, (i, i + 1, m + i, m + i + 1), (i, n + i, 2 * n + i, 2 * n + i + 1))
            for i in range(n)
        )
    if g.family == "prism":
        return tuple(
            SquareRef(i, (pv(n, i), pv(n, i + 1), pu(n, i), pu(n, i + 1)),
                      (ptop(n, i), pbottom(n, i), pspoke(n, i), pspoke(n, i + 1)))
            for i in range(n)
        )
    if g.family == "moebius":
        out = []
        for i in range(n):
            verts = (i, i + 1, i + n, (i + n + 1) % (2 * n))
            out.append(SquareRef(i, verts, (i, n + i, 2 * n + i, 2 * n + (i + 1) % n)))
        return tuple(out)
    raise FamilyError(f"squares are defined for ladders, prisms and Moebius ladders, not {g.family}")


def components_without(g: Graph, removed: Iterable[int] = ()) -> tuple[tuple[int, ...], ...]:
    """Connected components of ``g`` minus the given edges, ordered by least vertex."""
    removed_mask = 0
    for e in removed:
        if not 0 <= e < g.edge_count:
            raise StructuralError(f"edge index {e} out of range")
        removed_mask |= 1 << e
    return components_of_mask(g, ((1 << g.edge_count) - 1) & ~removed_mask)


def components_of_mask(g: Graph, kept: int) -> tuple[tuple[int, ...], ...]:
    """Components of the spanning subgraph whose edges are the bits of ``kept``."""
    n = g.vertex_count
    comp = [-1] * n
    out = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        members = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y, e in g.adjacency[x]:
                if comp[y] < 0 and kept >> e & 1:
                    comp[y] = comp[s]
                    members.append(y)
                    stack.append(y)
        out.append(tuple(sorted(members)))
    return tuple(out)


def contract_square_near_edges(
    g: Graph, lab: NearFarLabeling, i: int
) -> tuple[Graph, NearFarLabeling, tuple[int, ...]]:
    """Contract the two near peripheral edges of a far-spoke parallel square.

    Returns the prism over ``C_{n-1}``, its inherited labeling, and the merge
    record mapping every original vertex to its contracted image.
    """
    if g.family != "prism":
        raise FamilyError("contraction is defined on prisms only")
    g.check_labeling(lab)
    n = g.size
    if n < 4:
        raise PreconditionError("contraction needs a prism with n >= 4")
    i %= n
    top, bottom, s0, s1 = ptop(n, i), pbottom(n, i), pspoke(n, i), pspoke(n, i + 1)
    if not (lab.is_near(top) and lab.is_near(bottom) and lab.is_far(s0) and lab.is_far(s1)):
        raise PreconditionError(
            f"square {i} is not balanced parallel with far spokes", diagnostics=i
        )
    # old column c -> new column; column i+1 merges into column i
    def col(c: int) -> int:
        c %= n
        if i == n - 1:
            return n - 2 if c == 0 else c - 1
        return c if c <= i else c - 1

    m = n - 1
    record = tuple(col(c) for c in range(n)) + tuple(m + col(c) for c in range(n))
    h = build_family("prism", m)
    bits = 0
    for c in range(n):
        if c != i:
            if lab.is_far(ptop(n, c)):
                bits |= 1 << ptop(m, col(c))
            if lab.is_far(pbottom(n, c)):
                bits |= 1 << pbottom(m, col(c))
        if lab.is_far(pspoke(n, c)):
            bits |= 1 << pspoke(m, col(c))
    return h, NearFarLabeling(bits, h.edge_count), record
