"""Line-oriented graph and coloring files, and DOT export.

Graph file (``#`` starts a comment)::

    graph <name>
    vertices <n>
    edge <u> <v> [near|far]

Coloring file::

    pair <r>,<t>
    color <vertex> <integer>
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import GraphFileError, ParameterError, StructuralError
from .graphs import Graph
from .labeling import NearFarLabeling
from .threshold import ParamPair, ThresholdColoring


class GraphDocument(NamedTuple):
    name: str
    graph: Graph
    labeling: NearFarLabeling


def _tokens(line: str):
    """``(column, token)`` pairs of a line with its comment removed."""
    body = line.split("#", 1)[0]
    out = []
    col = 0
    for part in body.split():
        col = body.index(part, col)
        out.append((col + 1, part))
        col += len(part)
    return out


def _int(token: str, lineno: int, col: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFileError(f"expected {what}, got {token!r}", lineno, col) from None


def parse_graph_file(text: str) -> GraphDocument:
    name = None
    n = None
    edges: list[tuple[int, int]] = []
    far: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        col, word = toks[0]
        args = toks[1:]
        if word == "graph":
            if name is not None:
                raise GraphFileError("repeated 'graph' line", lineno, col)
            if len(args) != 1:
                raise GraphFileError("'graph' takes exactly one name", lineno, col)
            name = args[0][1]
        elif word == "vertices":
            if n is not None:
                raise GraphFileError("repeated 'vertices' line", lineno, col)
            if len(args) != 1:
                raise GraphFileError("'vertices' takes exactly one count", lineno, col)
            n = _int(args[0][1], lineno, args[0][0], "a vertex count")
            if n < 0:
                raise GraphFileError("vertex count must be non-negative", lineno, args[0][0])
        elif word == "edge":
            if n is None:
                raise GraphFileError("'edge' before 'vertices'", lineno, col)
            if len(args) not in (2, 3):
                raise GraphFileError("'edge' takes two endpoints and an optional label", lineno, col)
            ends = []
            for c, tok in args[:2]:
                v = _int(tok, lineno, c, "a vertex index")
                if not 0 <= v < n:
                    raise GraphFileError(f"vertex {v} out of range 0..{n - 1}", lineno, c)
                ends.append(v)
            u, v = ends
            if u == v:
                raise GraphFileError(f"loop at vertex {u}", lineno, args[0][0])
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFileError(f"duplicate edge {u} {v} (first on line {seen[key]})", lineno, col)
            seen[key] = lineno
            label = args[2][1] if len(args) == 3 else "near"
            if label not in ("near", "far"):
                raise GraphFileError(f"label must be near or far, got {label!r}", lineno, args[2][0])
            if label == "far":
                far.append(len(edges))
            edges.append((u, v))
        else:
            raise GraphFileError(f"unknown directive {word!r}", lineno, col)
    if n is None:
        raise GraphFileError("missing 'vertices' line", max(1, len(text.splitlines())), 1)
    g = Graph(n, tuple(edges))
    return GraphDocument(name or "g", g, NearFarLabeling.from_far(far, len(edges)))


def serialize_graph(name: str, g: Graph, lab: NearFarLabeling | None = None) -> str:
    lab = lab or NearFarLabeling.all_near(g.edge_count)
    g.check_labeling(lab)
    lines = [f"graph {name}", f"vertices {g.vertex_count}"]
    lines += [f"edge {u} {v} {lab.label(e)}" for e, (u, v) in enumerate(g.edges)]
    return "\n".join(lines) + "\n"


def parse_coloring_file(text: str, vertex_count: int | None = None) -> ThresholdColoring:
    pair = None
    colors: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        col, word = toks[0]
        if word == "pair" and len(toks) == 2:
            try:
                pair = ParamPair.parse(toks[1][1])
            except ParameterError as exc:
                raise GraphFileError(str(exc), lineno, toks[1][0]) from None
        elif word == "color" and len(toks) == 3:
            v = _int(toks[1][1], lineno, toks[1][0], "a vertex index")
            if v in colors:
                raise GraphFileError(f"vertex {v} colored twice", lineno, col)
            colors[v] = _int(toks[2][1], lineno, toks[2][0], "an integer color")
        else:
            raise GraphFileError(f"cannot parse {line.strip()!r}", lineno, col)
    if pair is None:
        raise GraphFileError("missing 'pair' line", 1, 1)
    n = len(colors) if vertex_count is None else vertex_count
    missing = [v for v in range(n) if v not in colors]
    if missing or len(colors) != n:
        raise StructuralError(f"coloring must cover vertices 0..{n - 1} exactly (missing {missing[:5]})")
    return ThresholdColoring(tuple(colors[v] for v in range(n)), pair)


def serialize_coloring(col: ThresholdColoring) -> str:
    lines = [f"pair {col.pair}"] + [f"color {v} {c}" for v, c in enumerate(col.colors)]
    return "\n".join(lines) + "\n"


def to_dot(name: str, g: Graph, lab: NearFarLabeling, col: ThresholdColoring | None = None) -> str:
    """Near edges solid, far edges dashed; vertex labels show colors when given."""
    g.check_labeling(lab)
    lines = [f'graph "{name}" {{']
    for v in range(g.vertex_count):
        label = f"{v}" if col is None else f"{v}: {col[v]}"
        lines.append(f'  {v} [label="{label}"];')
    for e, (u, v) in enumerate(g.edges):
        style = "dashed" if lab.is_far(e) else "solid"
        lines.append(f"  {u} -- {v} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
