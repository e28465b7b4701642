"""Threshold colorings of the Petersen graph for every labeling.

Three structures drive the construction: a far-edge-cut (recurse with the
cut relabeled near, then shift one side), an xxyyzz 6-cycle (zigzag at
``(5,1)``) and an Nxxyy 5-cycle (``(5,1)``, or ``(14,4)`` after a parity
repair).  Every labeling has at least one of them.
"""

from __future__ import annotations

from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import ConstructionBugError, FamilyError, PreconditionError, ProofGapError
from .graphs import Graph, build_family, components_of_mask
from .labeling import NearFarLabeling
from .solver import resolve_jobs
from .threshold import (
    ParamPair, ThresholdColoring, canonicalize, embed_coloring, fold_upper_bound, verify,
)
from .zigzag import ZigzagInstance, check_conditions, zigzag_color

PAIR_SIX = ParamPair(5, 1)
PAIR_FIVE = ParamPair(14, 4)


def petersen() -> Graph:
    return build_family("petersen")


def _require_petersen(lab: NearFarLabeling) -> Graph:
    g = petersen()
    if lab.size != g.edge_count:
        raise FamilyError(f"a Petersen labeling has 15 edges, got {lab.size}")
    return g


# cycle catalogs -------------------------------------------------------------

def simple_cycles(g: Graph, length: int) -> tuple[tuple[int, ...], ...]:
    """Each cycle of the given length once: least vertex first, then the smaller neighbor."""
    out = []

    def extend(path, on_path):
        x = path[-1]
        if len(path) == length:
            if g.has_edge(x, path[0]) and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for y in g.neighbors(x):
            if y > path[0] and y not in on_path:
                on_path.add(y)
                path.append(y)
                extend(path, on_path)
                path.pop()
                on_path.discard(y)

    for s in range(g.vertex_count):
        extend([s], {s})
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def cycle_catalog() -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """All 5-cycles and 6-cycles of the Petersen graph, self-checked by count."""
    g = petersen()
    fives, sixes = simple_cycles(g, 5), simple_cycles(g, 6)
    if len(fives) != 12 or len(sixes) != 10:
        raise ConstructionBugError(f"expected 12 five-cycles and 10 six-cycles, found {len(fives)}, {len(sixes)}")
    return fives, sixes


class CycleWitness(NamedTuple):
    """``vertices[k] vertices[k+1]`` is edge ``k`` of ``edges``.

    xxyyzz: edges pair as (0,1), (2,3), (4,5).  Nxxyy: edge 0 is the near
    edge and (1,2), (3,4) are the pairs.
    """

    kind: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def pairs(self) -> tuple[tuple[int, int], ...]:
        e = self.edges
        if self.kind == "xxyyzz":
            return (e[0], e[1]), (e[2], e[3]), (e[4], e[5])
        return (e[1], e[2]), (e[3], e[4])

    def holds(self, lab: NearFarLabeling) -> bool:
        if self.kind == "Nxxyy" and lab.is_far(self.edges[0]):
            return False
        return all(lab.is_far(a) == lab.is_far(b) for a, b in self.pairs())


def _witness(g: Graph, kind: str, cyc) -> CycleWitness:
    k = len(cyc)
    return CycleWitness(kind, tuple(cyc), tuple(g.edge_index[cyc[j], cyc[(j + 1) % k]] for j in range(k)))


@lru_cache(maxsize=None)
def witness_catalog() -> tuple[tuple[CycleWitness, ...], tuple[CycleWitness, ...]]:
    """Every way to read a catalog cycle as a structure: 2 pairings per
    6-cycle, 5 choices of the near edge per 5-cycle."""
    g = petersen()
    fives, sixes = cycle_catalog()
    six = tuple(_witness(g, "xxyyzz", c[s:] + c[:s]) for c in sixes for s in (0, 1))
    five = tuple(_witness(g, "Nxxyy", c[s:] + c[:s]) for c in fives for s in range(5))
    return six, five


@lru_cache(maxsize=None)
def _witness_masks():
    six, five = witness_catalog()

    def masks(w):
        return tuple((1 << a) | (1 << b) for a, b in w.pairs())

    return tuple(masks(w) for w in six), tuple((1 << w.edges[0], masks(w)) for w in five)


@dataclass(frozen=True)
class FarEdgeCut:
    S: frozenset[int]
    side: frozenset[int]  # the near-component of vertex 0
    other: frozenset[int]


@dataclass(frozen=True)
class Detection:
    kind: str  # far-edge-cut | xxyyzz | Nxxyy | none
    cut: FarEdgeCut | None = None
    witness: CycleWitness | None = None
    counts: dict = field(default_factory=dict, compare=False)


def far_edge_cut(lab: NearFarLabeling) -> FarEdgeCut | None:
    """The cut around the near-component of vertex 0, if the near-graph is disconnected."""
    g = _require_petersen(lab)
    comps = components_of_mask(g, lab.near_bits)
    if len(comps) == 1:
        return None
    side = frozenset(comps[0])
    S = frozenset(e for e, (x, y) in enumerate(g.edges) if (x in side) != (y in side))
    return FarEdgeCut(S, side, frozenset(range(g.vertex_count)) - side)


def detect_structures(lab: NearFarLabeling) -> Detection:
    """First structure in the order far-edge-cut, xxyyzz, Nxxyy, with counts of all."""
    cut = far_edge_cut(lab)
    six, five = witness_catalog()
    six_m, five_m = _witness_masks()
    far = lab.bits
    six_hits = [k for k, ms in enumerate(six_m) if all(far & m in (0, m) for m in ms)]
    five_hits = [k for k, (e0, ms) in enumerate(five_m)
                 if not far & e0 and all(far & m in (0, m) for m in ms)]
    counts = {"far-edge-cut": int(cut is not None), "xxyyzz": len(six_hits), "Nxxyy": len(five_hits)}
    if cut is not None:
        return Detection("far-edge-cut", cut=cut, counts=counts)
    if six_hits:
        return Detection("xxyyzz", witness=six[six_hits[0]], counts=counts)
    if five_hits:
        return Detection("Nxxyy", witness=five[five_hits[0]], counts=counts)
    return Detection("none", counts=counts)


# colorers -------------------------------------------------------------------

def color_via_xxyyzz(lab: NearFarLabeling, w: CycleWitness) -> ThresholdColoring:
    """``A`` = the three vertices where pairs meet; ``G[B]`` is a tree; ``(5,1)``."""
    g = _require_petersen(lab)
    if w.kind != "xxyyzz" or not w.holds(lab):
        raise PreconditionError("not an xxyyzz witness for this labeling")
    A = (w.vertices[0], w.vertices[2], w.vertices[4])
    return zigzag_color(g, lab, ZigzagInstance.from_a(g, A)).tagged("xxyyzz")


def _nxxyy_raw(g: Graph, lab: NearFarLabeling, w: CycleWitness) -> ThresholdColoring:
    c = w.vertices
    A = frozenset((c[0], c[1], c[3]))
    inst = ZigzagInstance.from_a(g, A)
    diag = check_conditions(g, lab, inst)
    if diag.inner_near is not None or diag.uniform is not None:
        raise ConstructionBugError(f"Nxxyy decomposition fails: {diag.lines()}")
    B = sorted(inst.B)
    free = [b for b in B if not any(a in A for a in g.neighbors(b))]
    if len(free) != 2 or not g.has_edge(*free):
        raise ConstructionBugError(f"unexpected shape of G[B]: free vertices {free}")
    v1, v6 = free
    cut_edge = g.edge_index[v1, v6]
    far = lab.bits

    def magnitude(b):
        return 2 if any(a in A and far >> e & 1 for a, e in g.adjacency[b]) else 1

    color = {a: 0 for a in A}
    color[v1] = 1
    queue = deque([v1])
    while queue:
        x = queue.popleft()
        for y, e in g.adjacency[x]:
            if y in color or e == cut_edge:
                continue
            sign = 1 if color[x] > 0 else -1
            if far >> e & 1:
                sign = -sign
            color[y] = (2 if sign > 0 else -1) if y == v6 else sign * magnitude(y)
            queue.append(y)
    colors = [color[v] for v in range(g.vertex_count)]
    signs_agree = (colors[v1] > 0) == (colors[v6] > 0)
    if signs_agree != bool(far >> cut_edge & 1):
        return ThresholdColoring(tuple(colors), PAIR_SIX, "Nxxyy")
    # odd number of far edges on the cycle of G[B]
    colors = [3 * x for x in colors]
    colors[v1] = 2
    colors[v6] = 7 if lab.is_far(cut_edge) else -2
    return ThresholdColoring(tuple(colors), PAIR_FIVE, "Nxxyy repaired")


def color_via_Nxxyy(lab: NearFarLabeling, w: CycleWitness) -> ThresholdColoring:
    """``A`` = ends of the near edge plus the middle vertex; valid at ``(14,4)``."""
    g = _require_petersen(lab)
    if w.kind != "Nxxyy" or not w.holds(lab):
        raise PreconditionError("not an Nxxyy witness for this labeling")
    col = _nxxyy_raw(g, lab, w)
    col = _checked(g, lab, col)
    return embed_coloring(col, PAIR_FIVE) if col.pair != PAIR_FIVE else col


def _checked(g, lab, col):
    bad = verify(g, lab, col.pair, col)
    if bad:
        raise ConstructionBugError(f"{col.branch or 'petersen'} coloring fails: {bad[0].detail}")
    return col


def split_and_lift(lab: NearFarLabeling, cut: FarEdgeCut, child: ThresholdColoring) -> ThresholdColoring:
    """Shift the side away from vertex 0 by ``r + t``; valid at ``(2r+t, t)``."""
    g = _require_petersen(lab)
    if any(lab.is_near(e) for e in cut.S):
        raise PreconditionError("far-edge-cut contains a near edge")
    r, t = child.pair
    base = canonicalize(child)
    delta = r + t
    colors = tuple(c + delta if v in cut.other else c for v, c in enumerate(base.colors))
    return _checked(g, lab, ThresholdColoring(colors, ParamPair(2 * r + t, t), child.branch))


def petersen_color(
    lab: NearFarLabeling, *, uniform: bool = False, trace: list | None = None
) -> tuple[ThresholdColoring, ParamPair]:
    """Color any labeling; returns the coloring and the pair it achieves.

    With ``uniform`` the cycle colorers always report ``(14,4)``, so ``t``
    stays 4 through the cut recursion and only ``r`` compounds.
    """
    g = _require_petersen(lab)
    col = _petersen(g, lab, uniform, trace)
    return col, col.pair


def _petersen(g, lab, uniform, trace) -> ThresholdColoring:
    if lab.bits == 0:
        if trace is not None:
            trace.append("no far edges: constant coloring")
        return ThresholdColoring((0,) * g.vertex_count, ParamPair(1, 0), "constant")
    det = detect_structures(lab)
    if trace is not None:
        trace.append(f"{det.kind} on {lab.to_hex()}")
    if det.kind == "far-edge-cut":
        child = _petersen(g, lab.with_near(det.cut.S), uniform, trace)
        return split_and_lift(lab, det.cut, child)
    if det.kind == "xxyyzz":
        col = color_via_xxyyzz(lab, det.witness)
    elif det.kind == "Nxxyy":
        col = _checked(g, lab, _nxxyy_raw(g, lab, det.witness))
    else:
        raise ProofGapError(f"labeling {lab.to_hex()} has no cut, xxyyzz or Nxxyy structure")
    if uniform and col.pair != PAIR_FIVE:
        col = embed_coloring(col, PAIR_FIVE)
    return col


def petersen_constructor(g: Graph, lab: NearFarLabeling) -> ThresholdColoring:
    return petersen_color(lab)[0]


# exhaustive runs ------------------------------------------------------------

def _audit_chunk(bounds):
    lo, hi = bounds
    hist = Counter()
    counts = Counter()
    uncovered = []
    matchings = 0
    perfect = _perfect_matchings()
    for bits in range(lo, hi):
        det = detect_structures(NearFarLabeling(bits, 15))
        hist[det.kind] += 1
        for k, v in det.counts.items():
            counts[k] += bool(v)
        if det.kind == "none":
            uncovered.append(bits)
        if bits in perfect and det.kind == "far-edge-cut":
            matchings += 1
    return hist, counts, uncovered, matchings


@lru_cache(maxsize=None)
def _perfect_matchings() -> frozenset[int]:
    g = petersen()
    out = set()

    def grow(used, chosen, start):
        if len(chosen) == 5:
            out.add(sum(1 << e for e in chosen))
            return
        for e in range(start, g.edge_count):
            x, y = g.edges[e]
            if x not in used and y not in used:
                grow(used | {x, y}, chosen + [e], e + 1)

    grow(frozenset(), [], 0)
    return frozenset(out)


@dataclass
class AuditReport:
    histogram: dict
    labelings_with: dict
    uncovered: tuple[int, ...]
    perfect_matchings: int
    perfect_matchings_cut: int

    def lines(self) -> list[str]:
        out = ["labelings: 32768"]
        for k in ("far-edge-cut", "xxyyzz", "Nxxyy", "none"):
            out.append(f"first structure {k}: {self.histogram.get(k, 0)}")
        for k in ("far-edge-cut", "xxyyzz", "Nxxyy"):
            out.append(f"labelings admitting {k}: {self.labelings_with.get(k, 0)}")
        out.append(f"perfect matchings cutting: {self.perfect_matchings_cut}/{self.perfect_matchings}")
        out.extend(f"uncovered {b:04x}" for b in self.uncovered)
        out.append(f"uncovered: {len(self.uncovered)}")
        return out


def _chunks(total, jobs):
    pieces = max(1, jobs * 8)
    b = [(total * k) // pieces for k in range(pieces + 1)]
    return [(b[k], b[k + 1]) for k in range(pieces)]


def _run(fn, work, jobs):
    if jobs == 1:
        return [fn(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, work))


def audit_case_analysis(jobs: int | None = 1) -> AuditReport:
    """Classify all 2^15 labelings by their first structure; ``uncovered`` must be empty."""
    jobs = resolve_jobs(jobs)
    hist, counts, uncovered, cut = Counter(), Counter(), [], 0
    for h, c, u, m in _run(_audit_chunk, _chunks(1 << 15, jobs), jobs):
        hist += h
        counts += c
        uncovered += u
        cut += m
    return AuditReport(dict(hist), dict(counts), tuple(uncovered), len(_perfect_matchings()), cut)


def _sweep_chunk(args):
    (lo, hi), uniform = args
    g = petersen()
    pairs = Counter()
    branches = Counter()
    gaps = []
    for bits in range(lo, hi):
        lab = NearFarLabeling(bits, 15)
        try:
            col, pair = petersen_color(lab, uniform=uniform)
        except ProofGapError:
            gaps.append(bits)
            continue
        if verify(g, lab, pair, col):
            raise ConstructionBugError(f"labeling {bits:04x} fails verification")
        pairs[pair.r, pair.t] += 1
        branches[col.branch] += 1
    return pairs, branches, gaps


@dataclass
class PetersenSweep:
    pairs: dict
    branches: dict
    proof_gaps: tuple[int, ...]
    uniform_pair: ParamPair | None
    uniform: bool

    def lines(self) -> list[str]:
        out = ["labelings: 32768", f"pair policy: {'uniform' if self.uniform else 'exact'}"]
        for (r, t), k in sorted(self.pairs.items()):
            out.append(f"pair {r},{t}: {k}")
        for name, k in sorted(self.branches.items()):
            out.append(f"base {name}: {k}")
        out.extend(f"proof-gap {b:04x}" for b in self.proof_gaps)
        out.append(f"proof-gaps: {len(self.proof_gaps)}")
        out.append(f"uniform pair: {self.uniform_pair}")
        return out


def petersen_sweep(jobs: int | None = 1, uniform: bool = True) -> PetersenSweep:
    """Color and verify every labeling; fold all achieved pairs into one."""
    jobs = resolve_jobs(jobs)
    pairs, branches, gaps = Counter(), Counter(), []
    for p, b, gp in _run(_sweep_chunk, [(c, uniform) for c in _chunks(1 << 15, jobs)], jobs):
        pairs += p
        branches += b
        gaps += gp
    folded = fold_upper_bound(ParamPair(r, t) for r, t in sorted(pairs))
    return PetersenSweep(dict(pairs), dict(branches), tuple(gaps), folded, uniform)
