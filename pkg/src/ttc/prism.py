"""Total threshold colorings of prisms ``C_n x K2`` at ``(31,4)``.

Pipeline: contract far-spoke parallel squares while ``n >= 4``; otherwise
relabel all-far vertices near (the ``W`` trick), then either split along two
disjoint half-cuts into two ladders (``(11,1)``) or place a square-wave
zigzag decomposition (``(13,4)``).  Every result is re-verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import ConstructionBugError, PreconditionError, ProofGapError, StructuralError
from .graphs import (
    Graph, build_family, components_of_mask, contract_square_near_edges,
    pbottom, pspoke, ptop, pu, pv,
)
from .labeling import NearFarLabeling
from .threshold import ParamPair, ThresholdColoring, embed_coloring, is_valid, verify
from .zigzag import ZigzagInstance, _matching_fault, ladder_color, zigzag_color

PAIR_CUT = ParamPair(11, 1)
PAIR_WAVE = ParamPair(13, 4)
PAIR_MERGED = ParamPair(26, 4)
PAIR_PRISM = ParamPair(31, 4)
W_COLOR = 30


def prism_size(lab: NearFarLabeling) -> int:
    n, rest = divmod(lab.size, 3)
    if rest or n < 3:
        raise StructuralError(f"a labeling of {lab.size} edges does not fit a prism")
    return n


# squares --------------------------------------------------------------------

class SquareClass(NamedTuple):
    index: int
    kind: str  # balanced-parallel | balanced-nonparallel | unbalanced-even | unbalanced-odd
    deviator: int | None
    spokes: tuple[str, str]

    @property
    def far_spoke_parallel(self) -> bool:
        return self.kind == "balanced-parallel" and self.spokes == ("far", "far")


def _square_edges(n: int, i: int) -> tuple[int, int, int, int]:
    return ptop(n, i), pbottom(n, i), pspoke(n, i), pspoke(n, i + 1)


def classify_square(n: int, lab: NearFarLabeling, i: int) -> SquareClass:
    top, bottom, s0, s1 = edges = _square_edges(n, i)
    far = [lab.is_far(e) for e in edges]
    spokes = (lab.label(s0), lab.label(s1))
    k = sum(far)
    if k == 2:
        # the near edges form a matching iff they are opposite sides
        parallel = far[0] == far[1]
        return SquareClass(i, "balanced-parallel" if parallel else "balanced-nonparallel", None, spokes)
    if k % 2 == 0:
        return SquareClass(i, "unbalanced-even", None, spokes)
    minority = k == 1
    deviator = next(e for e, f in zip(edges, far) if f == minority)
    return SquareClass(i, "unbalanced-odd", deviator, spokes)


def classify_squares(lab: NearFarLabeling) -> tuple[SquareClass, ...]:
    n = prism_size(lab)
    return tuple(classify_square(n, lab, i) for i in range(n))


# half-cuts and useful cuts --------------------------------------------------

class HalfCut(NamedTuple):
    """Far edges across squares ``start .. start+span-1``.

    ``low``: bottom edge at the first square, top edge at the last;
    ``high`` is the mirror.  A one-square half-cut is ``low`` only.
    """

    start: int
    span: int
    variant: str
    mask: int

    @property
    def end(self) -> int:
        return self.start + self.span - 1

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.mask.bit_length()) if self.mask >> e & 1)


@lru_cache(maxsize=None)
def all_half_cuts(n: int) -> tuple[HalfCut, ...]:
    """Every potential half-cut of the prism over ``C_n`` in (span, start, variant) order."""
    out = []
    for span in range(1, n + 1):
        for i in range(n):
            k = i + span - 1
            spokes = 0
            for c in range(i + 1, k + 1):
                spokes |= 1 << pspoke(n, c)
            low = spokes | 1 << pbottom(n, i) | 1 << ptop(n, k)
            out.append(HalfCut(i, span, "low", low))
            if span > 1:
                out.append(HalfCut(i, span, "high", spokes | 1 << ptop(n, i) | 1 << pbottom(n, k)))
    return tuple(out)


def find_half_cuts(lab: NearFarLabeling) -> tuple[HalfCut, ...]:
    n = prism_size(lab)
    return tuple(h for h in all_half_cuts(n) if h.mask & ~lab.bits == 0)


def disjoint_half_cut_pair(lab: NearFarLabeling) -> tuple[HalfCut, HalfCut] | None:
    """The first edge-disjoint pair of half-cuts, the longer one first."""
    cuts = find_half_cuts(lab)
    for b, h2 in enumerate(cuts):
        for h1 in cuts[:b]:
            if h1.mask & h2.mask == 0:
                return h2, h1
    return None


@dataclass(frozen=True)
class UsefulCut:
    """A far cut ``S`` between ``A`` and ``B``, each side embedded in ``L_m``.

    ``witness`` maps every prism vertex to a ladder vertex; its restrictions
    to ``A`` and to ``B`` are the two embeddings.
    """

    A: frozenset[int]
    B: frozenset[int]
    S: frozenset[int]
    ladder_size: int
    witness: tuple[int, ...]


def unroll(n: int, h: HalfCut) -> tuple[int, tuple[int, ...]]:
    """Embed ``G - h`` into ``L_m``: returns ``m`` and the vertex map."""
    i, k, span = h.start, h.end, h.span
    m = n + span - 2
    lifted = [(c - k - 1) % n + span - 1 for c in range(n)]
    flat = [(c - i - 1) % n for c in range(n)]
    top, bottom = (lifted, flat) if h.variant == "low" else (flat, lifted)
    row = m + 1
    return m, tuple(top) + tuple(row + x for x in bottom)


def check_embedding(g: Graph, kept: frozenset[int], m: int, witness, vertices) -> bool:
    """Injective on ``vertices`` and maps every kept edge inside them to a ladder edge."""
    ladder = build_family("ladder", m)
    image = [witness[v] for v in vertices]
    if len(set(image)) != len(image):
        return False
    inside = set(vertices)
    return all(
        ladder.has_edge(witness[x], witness[y])
        for e, (x, y) in enumerate(g.edges)
        if e in kept and x in inside and y in inside
    )


def useful_cut_from_half_cuts(lab: NearFarLabeling, h1: HalfCut, h2: HalfCut) -> UsefulCut:
    """Turn two disjoint half-cuts into a useful cut.

    The sides are the two color classes of the components of
    ``G - (h1 | h2)``; the union must be exactly the set of crossing edges.
    """
    n = prism_size(lab)
    g = build_family("prism", n)
    if h1.mask & h2.mask:
        raise PreconditionError("half-cuts share an edge")
    union = h1.mask | h2.mask
    if union & ~lab.bits:
        raise PreconditionError("half-cut edges must be far")
    full = (1 << g.edge_count) - 1
    comps = components_of_mask(g, full & ~union)
    which = [0] * g.vertex_count
    for k, comp in enumerate(comps):
        for v in comp:
            which[v] = k
    side = [-1] * len(comps)
    side[0] = 0
    changed = True
    while changed:
        changed = False
        for e in range(g.edge_count):
            if union >> e & 1:
                x, y = g.edges[e]
                a, b = which[x], which[y]
                if a == b:
                    raise ProofGapError("half-cut union is not a cut", (f"edge {e} inside a component",))
                for p, q in ((a, b), (b, a)):
                    if side[p] >= 0 and side[q] < 0:
                        side[q] = 1 - side[p]
                        changed = True
                    elif side[p] >= 0 and side[q] == side[p]:
                        raise ProofGapError("half-cut union is not bipartite", (f"edge {e}",))
    if min(side) < 0:
        raise ProofGapError("half-cut union leaves a component unattached", tuple(map(str, comps)))
    A = frozenset(v for v in range(g.vertex_count) if side[which[v]] == 0)
    B = frozenset(range(g.vertex_count)) - A
    longer = h1 if (h1.span, -all_half_cuts(n).index(h1)) >= (h2.span, -all_half_cuts(n).index(h2)) else h2
    m, witness = unroll(n, longer)
    kept = frozenset(e for e in range(g.edge_count) if not union >> e & 1)
    for part in (A, B):
        if not check_embedding(g, kept, m, witness, sorted(part)):
            raise ProofGapError("side does not embed into the unrolled ladder", (str(sorted(part)),))
    return UsefulCut(A, B, frozenset(e for e in range(g.edge_count) if union >> e & 1), m, witness)


def color_via_useful_cut(lab: NearFarLabeling, cut: UsefulCut) -> ThresholdColoring:
    """Ladder-color each side: ``A`` in ``0..4``, ``B`` in ``6..10``; valid at ``(11,1)``."""
    n = prism_size(lab)
    g = build_family("prism", n)
    for e in cut.S:
        if lab.is_near(e):
            raise PreconditionError(f"useful cut contains near edge {e}")
    ladder = build_family("ladder", cut.ladder_size)
    colors = [0] * g.vertex_count
    for part, offset in ((cut.A, 2), (cut.B, 8)):
        bits = 0
        for e, (x, y) in enumerate(g.edges):
            if x in part and y in part and lab.is_far(e):
                bits |= 1 << ladder.edge_index[cut.witness[x], cut.witness[y]]
        side = ladder_color(cut.ladder_size, NearFarLabeling(bits, ladder.edge_count))
        for v in part:
            colors[v] = side[cut.witness[v]] + offset
    col = ThresholdColoring(tuple(colors), PAIR_CUT, "useful-cut")
    bad = verify(g, lab, PAIR_CUT, col)
    if bad:
        raise ConstructionBugError(f"useful-cut coloring fails: {bad[0].detail}")
    return col


# square-wave templates ------------------------------------------------------

# step -> (columns advanced, side flips)
_STEPS = {"anchor": (1, True), "near": (1, False), "std": (2, True), "square": (3, True)}


def wave_templates(n: int) -> tuple[tuple[str, tuple[str, ...]], ...]:
    """Step sequences in the order the case analysis tries them."""
    out = []
    q, r = divmod(n - 3, 4)
    if n % 4 == 3:
        out.append(("n=3 mod 4", ("anchor",) + ("std",) * (2 * q + 1)))
    elif n % 4 == 0:
        k = (n - 4) // 4
        out.append(("n=0 mod 4", ("anchor", "near") + ("std",) * (2 * k + 1)))
    elif n % 4 == 2:
        k = (n - 6) // 4
        out.append(("n=2 mod 4", ("anchor", "std", "anchor") + ("std",) * (2 * k + 1)))
    else:
        k = (n - 5) // 4
        tail = ("std",) * (2 * k + 1)
        out.append(("n=1 mod 4, double delay", ("anchor", "near", "near") + tail))
        out.append(("n=1 mod 4, split delay", ("near", "anchor", "near") + tail))
        if n >= 9:
            for m in range(2 * k + 2):
                out.append((f"n=1 mod 4, near delay after {m}",
                            ("anchor", "near") + ("std",) * m + ("near",) + ("std",) * (2 * k + 1 - m)))
            for m in range(2 * k + 1):
                out.append((f"n=1 mod 4, even square after {m}",
                            ("anchor", "near") + ("std",) * m + ("square",) + ("std",) * (2 * k - m)))
    return tuple(out)


class WaveCandidate(NamedTuple):
    name: str
    A: frozenset[int]
    inner_mask: int  # edges inside A
    anchors: tuple[int, ...]  # square indices
    b_masks: tuple[int, ...]  # per B vertex, its edges to A
    cycle_masks: tuple[int, ...]  # cycle basis of G[B]


def _walk(n: int, steps) -> tuple[list[tuple[int, int]], list[int]]:
    cells, anchors = [], []
    col, side = 0, 0
    for s in steps:
        adv, flip = _STEPS[s]
        if s == "anchor":
            anchors.append(col)
        col += adv
        side ^= flip
        cells.append((col % n, side))
    if col != n or side != 0:
        raise ConstructionBugError(f"template {steps} does not close on C_{n}")
    return cells, anchors


def _cycle_basis(g: Graph, B: frozenset[int]) -> tuple[int, ...]:
    parent_edge = {}
    seen = set()
    tree = set()
    for s in sorted(B):
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y, e in g.adjacency[x]:
                if y in B and y not in seen:
                    seen.add(y)
                    parent_edge[y] = (x, e)
                    tree.add(e)
                    stack.append(y)

    def path_mask(v):
        out = 0
        while v in parent_edge:
            v, e = parent_edge[v]
            out ^= 1 << e
        return out

    basis = []
    for e, (x, y) in enumerate(g.edges):
        if x in B and y in B and e not in tree:
            basis.append(path_mask(x) ^ path_mask(y) ^ 1 << e)
    return tuple(basis)


@lru_cache(maxsize=None)
def wave_candidates(n: int) -> tuple[WaveCandidate, ...]:
    """All templates under all ``4n`` prism symmetries, identity first."""
    g = build_family("prism", n)
    out = []
    seen = set()
    for name, steps in wave_templates(n):
        cells, anchor_cols = _walk(n, steps)
        for swap in (0, 1):
            for sgn in (1, -1):
                for rot in range(n):
                    def img(c, s):
                        c2 = (rot + sgn * c) % n
                        return pv(n, c2) if s ^ swap == 0 else pu(n, c2)
                    A = frozenset(img(c, s) for c, s in cells)
                    anchors = tuple(sorted(
                        (rot + sgn * c) % n if sgn == 1 else (rot - c - 1) % n for c in anchor_cols
                    ))
                    key = (A, anchors)
                    if key in seen:
                        continue
                    seen.add(key)
                    B = frozenset(range(g.vertex_count)) - A
                    inner = 0
                    bmask = {b: 0 for b in B}
                    for e, (x, y) in enumerate(g.edges):
                        if x in A and y in A:
                            inner |= 1 << e
                        elif x in A:
                            bmask[y] |= 1 << e
                        elif y in A:
                            bmask[x] |= 1 << e
                    out.append(WaveCandidate(name, A, inner, anchors,
                                             tuple(bmask[b] for b in sorted(B)), _cycle_basis(g, B)))
    return tuple(out)


def _fits(c: WaveCandidate, far: int, M: int) -> bool:
    if c.inner_mask & far:
        return False
    for cyc in c.cycle_masks:
        if (cyc & far).bit_count() & 1:
            return False
    for bm in c.b_masks:
        m = bm & ~M
        f = m & far
        if f and f != m:
            return False
    return True


def _parity_deviators(n: int, lab: NearFarLabeling, anchors) -> frozenset[int]:
    return frozenset(
        cls.deviator for cls in (classify_square(n, lab, i) for i in anchors) if cls.deviator is not None
    )


def claim3_hypotheses(lab: NearFarLabeling) -> list[str]:
    """Which of the three hypotheses fail (empty list: all hold)."""
    n = prism_size(lab)
    g = build_family("prism", n)
    out = []
    if disjoint_half_cut_pair(lab) is not None:
        out.append("(i) two disjoint half-cuts")
    near = lab.near_bits
    if any(not m & near for m in g.incident_masks):
        out.append("(ii) a vertex without near edges")
    if n > 3 and any(c.far_spoke_parallel for c in classify_squares(lab)):
        out.append("(iii) a parallel square with far spokes")
    return out


def claim3_color(lab: NearFarLabeling, trace: list | None = None, *, check: bool = True) -> ThresholdColoring:
    """``(13,4)``-coloring under the three hypotheses, via square-wave zigzags.

    Falls back to the fibre 2-coloring for the all-parallel ``n = 3`` case
    and to the near-path coloring for ``n = 5``; anything else is a proof gap.
    """
    n = prism_size(lab)
    g = build_family("prism", n)
    if check:
        failed = claim3_hypotheses(lab)
        if failed:
            raise PreconditionError("hypotheses fail: " + "; ".join(failed), failed)
    far = lab.bits
    for cand in wave_candidates(n):
        M = _parity_deviators(n, lab, cand.anchors)
        mmask = sum(1 << e for e in M)
        if not _fits(cand, far, mmask):
            continue
        in_a = [v in cand.A for v in range(g.vertex_count)]
        if len(M) > 1 and _matching_fault(g, M, in_a) is not None:
            continue
        if trace is not None:
            trace.append(f"wave {cand.name}: A={sorted(cand.A)} M={sorted(M)}")
        col = zigzag_color(g, lab, ZigzagInstance.from_a(g, cand.A, M))
        return embed_coloring(col, PAIR_WAVE).tagged(f"wave {cand.name}")
    classes = classify_squares(lab)
    if n == 3 and all(c.far_spoke_parallel for c in classes):
        if trace is not None:
            trace.append("fibre 2-coloring")
        col = ThresholdColoring((0,) * n + (1,) * n, ParamPair(2, 0))
        return _checked(g, lab, embed_coloring(col, PAIR_WAVE).tagged("fibre"))
    if n == 5:
        col = _near_path_coloring(g, lab)
        if col is not None:
            if trace is not None:
                trace.append("near Hamiltonian path")
            return _checked(g, lab, embed_coloring(col, PAIR_WAVE).tagged("near path"))
    raise ProofGapError(
        f"no case applies on C_{n} x K2, labeling {lab.to_hex()}",
        tuple(f"square {c.index}: {c.kind}" for c in classes),
    )


def _near_path_coloring(g: Graph, lab: NearFarLabeling) -> ThresholdColoring | None:
    """Colors ``0,1,1,2,2,...`` along a Hamiltonian path of near edges."""
    near = lab.near_bits
    deg = [(m & near).bit_count() for m in g.incident_masks]
    if sorted(deg) != [1, 1] + [2] * (g.vertex_count - 2) or lab.far_count() != g.edge_count - g.vertex_count + 1:
        return None
    ends = [v for v in range(g.vertex_count) if deg[v] == 1]
    pair = ParamPair((g.vertex_count + 2) // 2, 1)
    for start in ends:
        order = [start]
        prev = -1
        while len(order) < g.vertex_count:
            x = order[-1]
            nxt = [y for y, e in g.adjacency[x] if near >> e & 1 and y != prev]
            if not nxt:
                break
            prev = x
            order.append(nxt[0])
        if len(order) != g.vertex_count:
            return None
        colors = [0] * g.vertex_count
        for k, v in enumerate(order):
            colors[v] = (k + 1) // 2
        if is_valid(g, lab, pair, colors):
            return ThresholdColoring(tuple(colors), pair)
    return None


def _checked(g, lab, col):
    bad = verify(g, lab, col.pair, col)
    if bad:
        raise ConstructionBugError(f"{col.branch} coloring fails: {bad[0].detail}")
    return col


# all-far vertices and the contraction induction --------------------------

def all_far_independent(g: Graph, lab: NearFarLabeling) -> tuple[int, ...]:
    """Greedy maximal independent set of vertices with no near edge."""
    near = lab.near_bits
    chosen = []
    blocked = set()
    for v in range(g.vertex_count):
        if g.incident_masks[v] & near or v in blocked:
            continue
        chosen.append(v)
        blocked.update(g.neighbors(v))
    return tuple(chosen)


def claim4_color(lab: NearFarLabeling, trace: list | None = None) -> ThresholdColoring:
    """``(31,4)``-coloring when no far-spoke parallel square exists (or ``n = 3``)."""
    n = prism_size(lab)
    g = build_family("prism", n)
    if n > 3 and any(c.far_spoke_parallel for c in classify_squares(lab)):
        raise PreconditionError("a parallel square with far spokes is present")
    W = all_far_independent(g, lab)
    D = set()
    for w in W:
        D.update(e for _, e in g.adjacency[w])
    relabeled = lab.with_near(D)
    if trace is not None and W:
        trace.append(f"all-far vertices W={list(W)} relabeled near")
    pair = disjoint_half_cut_pair(relabeled)
    if pair is not None:
        if trace is not None:
            trace.append(f"useful cut from half-cuts {pair[0][:3]} and {pair[1][:3]}")
        base = color_via_useful_cut(relabeled, useful_cut_from_half_cuts(relabeled, *pair))
    else:
        base = claim3_color(relabeled, trace, check=False)
    col = embed_coloring(base, PAIR_MERGED)
    colors = list(col.colors)
    for w in W:
        colors[w] = W_COLOR
    return _checked(g, lab, ThresholdColoring(tuple(colors), PAIR_PRISM, base.branch))


def prism_color(lab: NearFarLabeling, trace: list | None = None) -> ThresholdColoring:
    """``(31,4)``-coloring of the prism for any labeling.

    Far-spoke parallel squares (least index first) are contracted while
    ``n >= 4``; the coloring of the smaller prism is lifted back.
    """
    n = prism_size(lab)
    g = build_family("prism", n)
    if n >= 4:
        for cls in classify_squares(lab):
            if cls.far_spoke_parallel:
                if trace is not None:
                    trace.append(f"contract square {cls.index} of C_{n}")
                _, small, record = contract_square_near_edges(g, lab, cls.index)
                inner = prism_color(small, trace)
                lifted = ThresholdColoring(tuple(inner[record[v]] for v in range(2 * n)),
                                           PAIR_PRISM, "contracted " + inner.branch)
                return _checked(g, lab, lifted)
    return claim4_color(lab, trace)


def prism_constructor(g: Graph, lab: NearFarLabeling) -> ThresholdColoring:
    if g.family != "prism":
        raise StructuralError("prism constructor needs a prism")
    return prism_color(lab)
