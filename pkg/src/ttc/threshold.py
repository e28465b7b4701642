"""Threshold colorings, their verifier, and the parameter-pair calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import ParameterError, StructuralError
from .graphs import Graph
from .labeling import NearFarLabeling

__all__ = [
    "ParamPair", "ThresholdColoring", "MonotoneEmbedding", "Violation",
    "verify", "is_valid", "pair_leq", "common_upper_bound", "scale_coloring",
    "scaled_thresholds", "translate_coloring", "canonicalize", "embed_coloring",
    "fold_upper_bound",
]


@dataclass(frozen=True)
class ParamPair:
    """Range ``r`` (number of consecutive colors) and threshold ``t``.

    ``t`` is clamped to ``r - 1`` on construction: with ``t >= r - 1`` every
    pair of colors is near, so all such pairs are equivalent.
    """

    r: int
    t: int

    def __post_init__(self):
        if self.r < 1:
            raise ParameterError(f"range must be >= 1, got {self.r}")
        if self.t < 0:
            raise ParameterError(f"threshold must be >= 0, got {self.t}")
        if self.t > self.r - 1:
            object.__setattr__(self, "t", self.r - 1)

    @classmethod
    def parse(cls, text: str) -> ParamPair:
        try:
            r, t = (int(x) for x in text.split(","))
        except ValueError:
            raise ParameterError(f"pair must look like 'r,t', got {text!r}") from None
        return cls(r, t)

    def __iter__(self):
        yield self.r
        yield self.t

    def __str__(self) -> str:
        return f"{self.r},{self.t}"


@dataclass(frozen=True)
class ThresholdColoring:
    """Per-vertex integer colors (possibly signed) and the pair they target."""

    colors: tuple[int, ...]
    pair: ParamPair
    branch: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    def tagged(self, branch: str) -> ThresholdColoring:
        return ThresholdColoring(self.colors, self.pair, branch)

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    @property
    def low(self) -> int:
        return min(self.colors) if self.colors else 0

    @property
    def width(self) -> int:
        """Number of consecutive integers spanned by the colors."""
        return max(self.colors) - min(self.colors) + 1 if self.colors else 0


class MonotoneEmbedding(NamedTuple):
    """Witness ``phi(0..r1-1)`` for ``source <= target``."""

    source: ParamPair
    target: ParamPair
    values: tuple[int, ...]

    def __call__(self, color: int) -> int:
        return self.values[color]


class Violation(NamedTuple):
    edge: int | None
    kind: str  # near-too-far | far-too-near | range-overflow
    detail: str


def verify(
    g: Graph, lab: NearFarLabeling, pair: ParamPair, col: ThresholdColoring | Sequence[int]
) -> list[Violation]:
    """Every violation of the coloring against the labeling at ``pair``.

    An empty list means the coloring is valid.  Colors may live in any window
    of ``r`` consecutive integers.
    """
    colors = col.colors if isinstance(col, ThresholdColoring) else tuple(col)
    g.check_labeling(lab)
    if len(colors) != g.vertex_count:
        raise StructuralError(
            f"coloring has {len(colors)} entries for {g.vertex_count} vertices"
        )
    r, t = pair
    out = []
    bits = lab.bits
    for i, (a, b) in enumerate(g.edges):
        d = abs(colors[a] - colors[b])
        if bits >> i & 1:
            if d <= t:
                out.append(Violation(i, "far-too-near", f"edge {a}-{b}: |{colors[a]}-{colors[b]}| <= {t}"))
        elif d > t:
            out.append(Violation(i, "near-too-far", f"edge {a}-{b}: |{colors[a]}-{colors[b]}| > {t}"))
    if colors:
        width = max(colors) - min(colors) + 1
        if width > r:
            out.append(Violation(None, "range-overflow", f"colors span {width} > {r}"))
    return out


def is_valid(g: Graph, lab: NearFarLabeling, pair: ParamPair, colors: Sequence[int]) -> bool:
    """Fast boolean form of :func:`verify`, no diagnostics."""
    if len(colors) != g.vertex_count:
        return False
    r, t = pair.r, pair.t
    if colors and max(colors) - min(colors) >= r:
        return False
    bits = lab.bits
    for i, (a, b) in enumerate(g.edges):
        d = colors[a] - colors[b]
        if d < 0:
            d = -d
        if (d > t) != bool(bits >> i & 1):
            return False
    return True


def pair_leq(p1: ParamPair, p2: ParamPair) -> MonotoneEmbedding | None:
    """Decide ``p1 <= p2``; on success return the greedy-minimal witness.

    ``phi(0) = 0`` and each next value is the least integer above the previous
    one that keeps every near/far relation with the values already placed.
    Only two earlier values matter: ``phi(a - t1)`` caps ``phi(a)`` from
    above and ``phi(a - t1 - 1)`` bounds it from below.
    """
    r1, t1 = p1
    r2, t2 = p2
    if r1 > r2:
        return None
    phi = [0]
    for a in range(1, r1):
        x = phi[a - 1] + 1
        if a - t1 - 1 >= 0:
            x = max(x, phi[a - t1 - 1] + t2 + 1)
        cap = phi[max(0, a - t1)] + t2 if t1 else r2 - 1
        if x > cap or x > r2 - 1:
            return None
        phi.append(x)
    return MonotoneEmbedding(p1, p2, tuple(phi))


def common_upper_bound(p1: ParamPair, p2: ParamPair) -> ParamPair:
    """A pair above both inputs whose threshold is the larger threshold."""
    if p1.t > p2.t:
        p1, p2 = p2, p1
    r1, t1 = p1
    r2, t2 = p2
    r = max(r2, (r1 // (t1 + 1)) * (t2 + 1) + r1 % (t1 + 1))
    return ParamPair(r, t2)


def fold_upper_bound(pairs) -> ParamPair | None:
    """Left fold of :func:`common_upper_bound` over ``pairs`` in order."""
    acc = None
    for p in pairs:
        acc = p if acc is None else common_upper_bound(acc, p)
    return acc


def scaled_thresholds(pair: ParamPair, factor: int) -> range:
    """Thresholds at which a coloring valid at ``pair`` stays valid after scaling."""
    return range(factor * pair.t, factor * pair.t + factor)


def scale_coloring(col: ThresholdColoring, factor: int) -> ThresholdColoring:
    """Multiply all colors by ``factor``.

    The result is valid at ``(factor*(r-1)+1, t')`` for every ``t'`` in
    :func:`scaled_thresholds`; the recorded pair uses the largest such ``t'``.
    """
    if factor < 1:
        raise ParameterError(f"scale factor must be a positive integer, got {factor}")
    r, t = col.pair
    return ThresholdColoring(
        tuple(factor * c for c in col.colors),
        ParamPair(factor * (r - 1) + 1, factor * t + factor - 1),
        col.branch,
    )


def translate_coloring(col: ThresholdColoring, delta: int) -> ThresholdColoring:
    return ThresholdColoring(tuple(c + delta for c in col.colors), col.pair, col.branch)


def canonicalize(col: ThresholdColoring) -> ThresholdColoring:
    """Shift so that the least color is 0."""
    return translate_coloring(col, -col.low) if col.colors else col


def embed_coloring(col: ThresholdColoring, target: ParamPair) -> ThresholdColoring:
    """Push a coloring through the witness of ``col.pair <= target``.

    The coloring is canonicalized first, so its colors index the witness.
    """
    emb = pair_leq(col.pair, target)
    if emb is None:
        raise ParameterError(f"({col.pair}) is not below ({target})")
    base = canonicalize(col)
    if base.colors and max(base.colors) >= col.pair.r:
        raise ParameterError(f"coloring spans {base.width} colors, more than r={col.pair.r}")
    return ThresholdColoring(tuple(emb.values[c] for c in base.colors), target, col.branch)
