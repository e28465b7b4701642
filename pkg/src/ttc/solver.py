"""Exact threshold-coloring search, exhaustive labeling sweeps, and
machine-checkable impossibility certificates."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .errors import StructuralError, SweepLimitError, TTCError
from .graphs import Graph, build_family
from .labeling import NearFarLabeling
from .threshold import ParamPair, ThresholdColoring, embed_coloring, is_valid, pair_leq

Constructor = Callable[[Graph, NearFarLabeling], ThresholdColoring]

DEFAULT_SWEEP_LIMIT = 24


# exact search ---------------------------------------------------------------

def _dilate(dom: int, t: int, full: int) -> int:
    out = dom
    for s in range(1, t + 1):
        out |= (dom << s) | (dom >> s)
    return out & full


def _far_support(dom: int, t: int, r: int, full: int) -> int:
    lo = (dom & -dom).bit_length() - 1
    hi = dom.bit_length() - 1
    below = (1 << max(0, hi - t)) - 1
    above = full & ~((1 << min(r, lo + t + 1)) - 1)
    return below | above


def find_coloring(g: Graph, lab: NearFarLabeling, pair: ParamPair) -> ThresholdColoring | None:
    """A canonical ``pair``-coloring for ``lab``, or ``None`` if none exists.

    Complete backtracking over bitmask domains with arc-consistency
    propagation.  Vertices are branched in BFS order, colors ascending.  Each
    component is required to use color 0 (any solution can be translated
    down), which prunes branches whose domains have all lost color 0.
    """
    g.check_labeling(lab)
    r, t = pair.r, pair.t
    n = g.vertex_count
    if n == 0:
        return ThresholdColoring((), pair)
    full = (1 << r) - 1
    bits = lab.bits
    adj = [tuple((y, bool(bits >> e & 1)) for y, e in g.adjacency[x]) for x in range(n)]

    def revise(dom: list[int], queue: list[int]) -> bool:
        while queue:
            x = queue.pop()
            dx = dom[x]
            near_sup = far_sup = None
            for y, far in adj[x]:
                if far:
                    if far_sup is None:
                        far_sup = _far_support(dx, t, r, full)
                    new = dom[y] & far_sup
                else:
                    if near_sup is None:
                        near_sup = _dilate(dx, t, full)
                    new = dom[y] & near_sup
                if new != dom[y]:
                    if not new:
                        return False
                    dom[y] = new
                    queue.append(y)
        return True

    colors = [0] * n
    done = [False] * n
    for start in g.bfs_order():
        if done[start]:
            continue
        comp = _component_bfs(g, start)
        for v in comp:
            done[v] = True
        dom = [full] * n
        if not revise(dom, list(comp)):
            return None
        sol = _search(comp, dom, revise)
        if sol is None:
            return None
        for v in comp:
            colors[v] = sol[v].bit_length() - 1
    return ThresholdColoring(tuple(colors), pair)


def _component_bfs(g: Graph, s: int) -> tuple[int, ...]:
    seen = {s}
    order = [s]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y, _ in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
    return tuple(order)


def _search(comp, dom, revise):
    if not any(dom[v] & 1 for v in comp):
        return None
    for v in comp:
        d = dom[v]
        if d & (d - 1):
            break
    else:
        return dom
    d = dom[v]
    while d:
        low = d & -d
        d ^= low
        child = dom[:]
        child[v] = low
        if revise(child, [v]):
            sol = _search(comp, child, revise)
            if sol is not None:
                return sol
    return None


# sweeps ---------------------------------------------------------------------

@dataclass
class SweepReport:
    """Outcome of testing every labeling of a graph at one pair."""

    family: str
    size: int | None
    pair: ParamPair
    examined: int
    failures: tuple[int, ...]
    constructor_failures: tuple[int, ...] = ()
    constructive: bool = False
    max_width: int = 0
    wall_time: float = field(default=0.0, compare=False)
    stats: dict = field(default_factory=dict)

    def summary(self) -> str:
        return f"{self.examined} labelings, {len(self.failures)} failures"

    def lines(self) -> list[str]:
        """Deterministic text form; wall time is deliberately left out."""
        size = "" if self.size is None else f" {self.size}"
        out = [
            f"family: {self.family}{size}",
            f"pair: {self.pair}",
            f"mode: {'constructive' if self.constructive else 'exact-search'}",
            f"labelings: {self.examined}",
            f"failures: {len(self.failures)}",
        ]
        if self.constructive:
            out.append(f"constructor-failures: {len(self.constructor_failures)}")
        out.append(f"max-window: {self.max_width}")
        for key in sorted(self.stats):
            out.append(f"stat {key}: {self.stats[key]}")
        for bits in self.failures:
            out.append(f"failure {bits:x}")
        for bits in self.constructor_failures:
            out.append(f"constructor-failure {bits:x}")
        out.append(f"outcome: {self.summary()}")
        return out


def _sweep_chunk(args):
    g, pair, constructor, lo, hi = args
    failures = []
    cfail = []
    width = 0
    stats: dict[str, int] = {}
    m = g.edge_count
    for bits in range(lo, hi):
        lab = NearFarLabeling(bits, m)
        col = None
        if constructor is not None:
            try:
                col = constructor(g, lab)
                if col.branch:
                    stats[col.branch] = stats.get(col.branch, 0) + 1
                if col.pair != pair:
                    col = _lift_to(col, pair)
            except TTCError:
                col = None
            if col is not None and not is_valid(g, lab, pair, col.colors):
                col = None
            if col is None:
                cfail.append(bits)
        if col is None:
            col = find_coloring(g, lab, pair)
        if col is None:
            failures.append(bits)
        else:
            width = max(width, col.width)
    return failures, cfail, width, stats


def _lift_to(col: ThresholdColoring, pair: ParamPair) -> ThresholdColoring | None:
    """Re-express a coloring at a larger pair, or ``None`` if not below it."""
    if pair_leq(col.pair, pair) is None:
        return None
    return embed_coloring(col, pair)


def resolve_jobs(jobs: int | None) -> int:
    env = os.environ.get("TTC_JOBS")
    if env:
        jobs = int(env)
    return max(1, jobs or 1)


def total_check(
    g: Graph,
    pair: ParamPair,
    constructor: Constructor | None = None,
    *,
    jobs: int | None = 1,
    limit: int = DEFAULT_SWEEP_LIMIT,
) -> SweepReport:
    """Test all ``2^|E|`` labelings of ``g`` at ``pair``.

    With a constructor, its output is re-verified; a constructor that raises
    or returns an invalid coloring is recorded and the exact search decides
    that labeling instead.  Work is split into index ranges and merged in
    index order, so the report does not depend on the worker count.
    """
    m = g.edge_count
    if m > limit:
        raise SweepLimitError(f"{2 ** m} labelings: needs a sweep limit of at least {m} edges (limit {limit})")
    jobs = resolve_jobs(jobs)
    total = 1 << m
    started = time.perf_counter()
    pieces = max(1, min(total, jobs * 8))
    bounds = [(total * k) // pieces for k in range(pieces + 1)]
    work = [(g, pair, constructor, bounds[k], bounds[k + 1]) for k in range(pieces)]
    if jobs == 1:
        results = [_sweep_chunk(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_chunk, work))
    failures: list[int] = []
    cfail: list[int] = []
    width = 0
    stats: dict[str, int] = {}
    for f, c, w, s in results:
        failures += f
        cfail += c
        width = max(width, w)
        for k, v in s.items():
            stats[k] = stats.get(k, 0) + v
    return SweepReport(
        g.family, g.size, pair, total, tuple(failures), tuple(cfail),
        constructor is not None, width, time.perf_counter() - started, stats,
    )


def minimal_pair_frontier(
    g: Graph, lab: NearFarLabeling, r_max: int, t_max: int
) -> tuple[ParamPair, ...]:
    """The pair_leq-minimal pairs (``r <= r_max``, ``t <= t_max``) admitting a coloring.

    For fixed ``t`` solvability is monotone in ``r``, so only the least
    solvable ``r`` per threshold can be minimal.
    """
    candidates = []
    for t in range(t_max + 1):
        for r in range(t + 1, r_max + 1):
            if find_coloring(g, lab, ParamPair(r, t)) is not None:
                candidates.append(ParamPair(r, t))
                break
    # (r, t) with t >= r collapse onto (r, r - 1); drop the duplicates
    candidates = list(dict.fromkeys(candidates))
    return tuple(
        p for p in candidates
        if not any(q != p and pair_leq(q, p) is not None for q in candidates)
    )


# certificates ---------------------------------------------------------------

class CertificateStep(NamedTuple):
    """A 4-cycle ``w x y z`` with ``wx, yz`` far and ``xy, zw`` near.

    Premise ``c(w) > c(x)``; conclusion ``c(z) > c(y)``.
    """

    w: int
    x: int
    y: int
    z: int

    @property
    def premise(self) -> tuple[int, int]:
        return self.w, self.x

    @property
    def conclusion(self) -> tuple[int, int]:
        return self.z, self.y

    def describe(self) -> str:
        return (f"cycle {self.w}-{self.x}-{self.y}-{self.z}: "
                f"c({self.w})>c({self.x}) => c({self.z})>c({self.y})")


@dataclass(frozen=True)
class ImpossibilityCertificate:
    """Cyclic chain of sign propagations ending in the reverse of its premise.

    The first premise sits on a far edge, so its two colors differ; negating
    every color swaps the orientation, hence the premise loses no generality.
    """

    steps: tuple[CertificateStep, ...]
    note: str = ""

    def lines(self) -> list[str]:
        out = [f"step {k}: {s.describe()}" for k, s in enumerate(self.steps)]
        if self.steps:
            a, b = self.steps[0].premise
            z, y = self.steps[-1].conclusion
            out.append(f"closing: c({z})>c({y}) contradicts c({a})>c({b})")
        if self.note:
            out.append(f"note: {self.note}")
        return out


def moebius_certificate(n: int) -> ImpossibilityCertificate:
    """Chain for the spoke-far labeling of ``M_n``: ``c(v_k) > c(v_{n+k})`` for all k."""
    if n < 3:
        raise StructuralError("Moebius ladders need n >= 3")
    m = 2 * n
    steps = tuple(
        CertificateStep(k % m, (n + k) % m, (n + k + 1) % m, (k + 1) % m) for k in range(n)
    )
    return ImpossibilityCertificate(steps, f"spoke-far labeling of M_{n}")


def k4_certificate() -> ImpossibilityCertificate:
    """Two steps on ``K4`` with ``w,x,y,z = 0,1,2,3`` and ``F = {wx, yz}``."""
    return ImpossibilityCertificate(
        (CertificateStep(0, 1, 2, 3), CertificateStep(3, 2, 0, 1)),
        "K4 with two opposite far edges of the spanning cycle 0-1-2-3",
    )


def spoke_far_labeling(g: Graph) -> NearFarLabeling:
    """Labeling in which exactly the spokes are far."""
    if not g.spokes:
        raise StructuralError(f"{g.family} has no spokes")
    return g.labeling(sorted(g.spokes))


def k4_labeling() -> NearFarLabeling:
    g = build_family("k4")
    return g.labeling([g.edge_index[0, 1], g.edge_index[2, 3]])


def check_certificate(g: Graph, lab: NearFarLabeling, cert: ImpossibilityCertificate) -> bool:
    """True iff the chain is a valid impossibility proof for ``lab`` on ``g``.

    A true verdict rules out threshold colorings at every pair.
    """
    g.check_labeling(lab)
    if not cert.steps:
        return False
    for s in cert.steps:
        for v in s:
            if not isinstance(v, int) or not 0 <= v < g.vertex_count:
                raise StructuralError(f"certificate refers to vertex {v!r} outside the graph")
    for s in cert.steps:
        if len(set(s)) != 4:
            return False
        ids = [g.edge_index.get(p) for p in ((s.w, s.x), (s.x, s.y), (s.y, s.z), (s.z, s.w))]
        if any(e is None for e in ids):
            return False
        wx, xy, yz, zw = ids
        if not (lab.is_far(wx) and lab.is_far(yz) and lab.is_near(xy) and lab.is_near(zw)):
            return False
    for a, b in zip(cert.steps, cert.steps[1:]):
        if a.conclusion != b.premise:
            return False
    first = cert.steps[0].premise
    return cert.steps[-1].conclusion == (first[1], first[0])
