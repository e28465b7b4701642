"""Zigzag colorer from an ``(A, B, M)`` decomposition, plus fans and ladders.

Conditions on the instance:

(i)   every edge inside ``A`` is near;
(ii)  every cycle of ``G[B]`` has an even number of far edges;
(iii) ``M`` is an induced matching of ``A``-``B`` edges;
(iv)  at each ``b`` in ``B`` the non-``M`` edges to ``A`` share one label.

Under them ``A`` gets color 0, ``B`` gets colors in ``{-2,-1,1,2}`` and the
result is a ``(5,1)``-coloring, or ``(13,4)`` after tripling when ``M`` is used.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import ConstructionBugError, PreconditionError, StructuralError
from .graphs import Graph, build_family
from .labeling import NearFarLabeling
from .threshold import ParamPair, ThresholdColoring, verify

PAIR_PLAIN = ParamPair(5, 1)
PAIR_MATCHED = ParamPair(13, 4)


@dataclass(frozen=True)
class ZigzagInstance:
    A: frozenset[int]
    B: frozenset[int]
    M: frozenset[int] = frozenset()

    @classmethod
    def from_a(cls, g: Graph, A: Iterable[int], M: Iterable[int] = ()) -> ZigzagInstance:
        A = frozenset(A)
        return cls(A, frozenset(range(g.vertex_count)) - A, frozenset(M))


@dataclass(frozen=True)
class ZigzagDiagnostics:
    """``None`` for a passing condition, otherwise a witness of the failure.

    Witnesses: (i) an edge index; (ii) a vertex cycle of ``G[B]``; (iii) an
    edge index or a pair of them; (iv) a ``B`` vertex.
    """

    inner_near: int | None
    even_cycles: tuple[int, ...] | None
    matching: int | tuple[int, int] | None
    uniform: int | None

    @property
    def ok(self) -> bool:
        return all(w is None for w in (self.inner_near, self.even_cycles, self.matching, self.uniform))

    def lines(self) -> list[str]:
        out = []
        for name, w in (("(i)", self.inner_near), ("(ii)", self.even_cycles),
                        ("(iii)", self.matching), ("(iv)", self.uniform)):
            out.append(f"{name} {'pass' if w is None else f'fail: {w}'}")
        return out


def check_conditions(g: Graph, lab: NearFarLabeling, inst: ZigzagInstance) -> ZigzagDiagnostics:
    """Check (i)-(iv) independently, returning a witness for each failure."""
    g.check_labeling(lab)
    n = g.vertex_count
    if inst.A & inst.B or (inst.A | inst.B) != frozenset(range(n)):
        raise StructuralError("A and B must partition the vertex set")
    for e in inst.M:
        if not 0 <= e < g.edge_count:
            raise StructuralError(f"M refers to edge {e} outside the graph")
    in_a = [v in inst.A for v in range(n)]

    inner = next((e for e, (x, y) in enumerate(g.edges) if in_a[x] and in_a[y] and lab.is_far(e)), None)
    return ZigzagDiagnostics(inner, _odd_cycle(g, lab, in_a), _matching_fault(g, inst.M, in_a),
                             _uniform_fault(g, lab, inst.M, in_a))


def _odd_cycle(g: Graph, lab: NearFarLabeling, in_a) -> tuple[int, ...] | None:
    """A cycle of ``G[B]`` with an odd number of far edges, if any."""
    n = g.vertex_count
    parity = [-1] * n
    parent = [-1] * n
    for s in range(n):
        if in_a[s] or parity[s] >= 0:
            continue
        parity[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, e in g.adjacency[x]:
                if in_a[y]:
                    continue
                want = parity[x] ^ (lab.bits >> e & 1)
                if parity[y] < 0:
                    parity[y] = want
                    parent[y] = x
                    queue.append(y)
                elif parity[y] != want:
                    return _tree_cycle(parent, x, y)
    return None


def _tree_cycle(parent, x, y) -> tuple[int, ...]:
    up_x = [x]
    while parent[up_x[-1]] >= 0:
        up_x.append(parent[up_x[-1]])
    on_x = {v: i for i, v in enumerate(up_x)}
    up_y = [y]
    while up_y[-1] not in on_x:
        up_y.append(parent[up_y[-1]])
    meet = on_x[up_y[-1]]
    return tuple(up_x[: meet + 1]) + tuple(reversed(up_y[:-1]))


def _matching_fault(g: Graph, M, in_a):
    ends = []
    for e in sorted(M):
        x, y = g.edges[e]
        if in_a[x] == in_a[y]:
            return e
        ends.append((e, {x, y}))
    for k, (e, ve) in enumerate(ends):
        for f, vf in ends[k + 1:]:
            if ve & vf or any(g.has_edge(p, q) for p in ve for q in vf):
                return (e, f)
    return None


def _uniform_fault(g: Graph, lab: NearFarLabeling, M, in_a) -> int | None:
    for b in range(g.vertex_count):
        if in_a[b]:
            continue
        labels = {lab.is_far(e) for a, e in g.adjacency[b] if in_a[a] and e not in M}
        if len(labels) > 1:
            return b
    return None


def effective_matching(g: Graph, lab: NearFarLabeling, inst: ZigzagInstance) -> frozenset[int]:
    """The ``M``-edges whose label disagrees with the other ``A``-edges at their ``B`` end.

    Only these need relabeling; flipping an ``M``-edge that already agrees
    would itself break (iv).
    """
    out = set()
    for e in inst.M:
        x, y = g.edges[e]
        b = y if x in inst.A else x
        others = {lab.is_far(f) for a, f in g.adjacency[b] if a in inst.A and f != e}
        if others and lab.is_far(e) not in others:
            out.add(e)
    return frozenset(out)


def zigzag_color(g: Graph, lab: NearFarLabeling, inst: ZigzagInstance) -> ThresholdColoring:
    """Color ``g`` from a decomposition satisfying (i)-(iv).

    Signed colors are returned (``{-2..2}`` or ``{-6..6}``); the pair is
    ``(5,1)`` when ``M`` is empty and ``(13,4)`` otherwise.
    """
    diag = check_conditions(g, lab, inst)
    if not diag.ok:
        raise PreconditionError("zigzag conditions fail: " + "; ".join(diag.lines()), diag)
    n = g.vertex_count
    eff = effective_matching(g, lab, inst)
    relabeled = lab.flipped(eff)
    far = relabeled.bits
    in_a = [v in inst.A for v in range(n)]

    def magnitude(b: int) -> int:
        return 2 if any(in_a[a] and far >> e & 1 for a, e in g.adjacency[b]) else 1

    color = [0] * n
    seen = list(in_a)
    tree_edges = set()
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        color[root] = magnitude(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, e in g.adjacency[x]:
                if seen[y]:
                    continue
                seen[y] = True
                tree_edges.add(e)
                sign = 1 if color[x] > 0 else -1
                if far >> e & 1:
                    sign = -sign
                color[y] = sign * magnitude(y)
                queue.append(y)
    for e, (x, y) in enumerate(g.edges):
        if in_a[x] or in_a[y] or e in tree_edges:
            continue
        if ((color[x] > 0) != (color[y] > 0)) != bool(far >> e & 1):
            raise ConstructionBugError(f"non-tree edge {x}-{y} disagrees with the tree signs")

    pair = PAIR_PLAIN
    if inst.M:
        pair = PAIR_MATCHED
        color = [3 * c for c in color]
        for e in sorted(eff):
            x, y = g.edges[e]
            a, b = (x, y) if in_a[x] else (y, x)
            sign = 1 if color[b] > 0 else -1
            if lab.is_near(e):
                color[b], color[a] = 5 * sign, sign
            else:
                color[b], color[a] = 4 * sign, -sign
    col = ThresholdColoring(tuple(color), pair, "zigzag")
    bad = verify(g, lab, pair, col)
    if bad:
        raise ConstructionBugError(f"zigzag output fails verification: {bad[0].detail}")
    return col


def fan_color(n: int, lab: NearFarLabeling) -> ThresholdColoring:
    """``(5,1)``-coloring of ``F_n``: apex 0, spine colored left to right.

    ``|c(v_i)|`` is 1 or 2 as the apex edge is near or far; the sign
    persists across near spine edges and flips across far ones.
    """
    g = build_family("fan", n)
    g.check_labeling(lab)
    color = [0] * (n + 1)
    sign = 1
    for i in range(1, n + 1):
        if i > 1 and lab.is_far(n + i - 2):
            sign = -sign
        color[i] = sign * (2 if lab.is_far(i - 1) else 1)
    col = ThresholdColoring(tuple(color), PAIR_PLAIN, "fan")
    bad = verify(g, lab, PAIR_PLAIN, col)
    if bad:
        raise ConstructionBugError(f"fan output fails verification: {bad[0].detail}")
    return col


def ladder_instance(n: int) -> ZigzagInstance:
    """``A = {v_0, v_4, v_8, ..., u_2, u_6, ...}``; ``G[B]`` is a single path."""
    g = build_family("ladder", n)
    m = n + 1
    A = [i for i in range(0, m, 4)] + [m + i for i in range(2, m, 4)]
    return ZigzagInstance.from_a(g, A)


def ladder_color(n: int, lab: NearFarLabeling) -> ThresholdColoring:
    """``(5,1)``-coloring of ``L_n`` through the fixed zigzag decomposition."""
    g = build_family("ladder", n)
    return zigzag_color(g, lab, ladder_instance(n)).tagged("ladder")


# sweep adapters (module level so worker processes can unpickle them)

def fan_constructor(g: Graph, lab: NearFarLabeling) -> ThresholdColoring:
    return fan_color(g.size, lab)


def ladder_constructor(g: Graph, lab: NearFarLabeling) -> ThresholdColoring:
    return ladder_color(g.size, lab)
