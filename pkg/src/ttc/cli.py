"""``ttc`` command line.

Exit status: 0 on success, 1 when a run finds a failure (UNSAT, invalid
coloring, incomparable pairs, sweep failures), 2 on usage or input errors.
Reports go to stdout and are byte-identical across runs and worker counts;
elapsed time goes to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path

from . import petersen as pet
from .errors import ConstructionBugError, ProofGapError, TTCError
from .fileio import (
    parse_coloring_file, parse_graph_file, serialize_coloring, serialize_graph, to_dot,
)
from .graphs import FAMILIES, build_family
from .labeling import NearFarLabeling
from .prism import prism_color, prism_constructor
from .solver import (
    check_certificate, find_coloring, moebius_certificate, spoke_far_labeling, total_check,
)
from .threshold import ParamPair, canonicalize, common_upper_bound, pair_leq, verify
from .zigzag import fan_color, fan_constructor, ladder_color, ladder_constructor

CONSTRUCTORS = {
    "prism": prism_constructor,
    "ladder": ladder_constructor,
    "fan": fan_constructor,
    "petersen": pet.petersen_constructor,
}


def _pair(text: str) -> ParamPair:
    try:
        return ParamPair.parse(text)
    except TTCError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ttc", description="threshold colorings of near-far labeled graphs")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="print a family graph as a graph file")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--labeling", help="hex bits, bit i set = edge i far")

    s = sub.add_parser("solve", help="exact search at one pair")
    s.add_argument("--pair", type=_pair, required=True)
    s.add_argument("--labeling")
    s.add_argument("file")

    s = sub.add_parser("construct", help="run a constructive colorer")
    s.add_argument("family", choices=sorted(CONSTRUCTORS))
    s.add_argument("--labeling")
    s.add_argument("--trace", action="store_true")
    s.add_argument("file")

    s = sub.add_parser("verify", help="check a coloring file")
    s.add_argument("--pair", type=_pair, required=True)
    s.add_argument("--labeling")
    s.add_argument("graph")
    s.add_argument("coloring")

    s = sub.add_parser("total-check", help="test every labeling of a family graph")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--pair", type=_pair, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--constructive", action="store_true")
    s.add_argument("--limit", type=int, default=24)

    s = sub.add_parser("petersen", help="Petersen audits")
    s.add_argument("action", choices=("audit", "sweep"))
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--exact-pairs", action="store_true", help="sweep: keep (5,1) results unembedded")

    s = sub.add_parser("moebius", help="impossibility certificates")
    s.add_argument("action", choices=("certify",))
    s.add_argument("n", type=int)

    s = sub.add_parser("poset", help="parameter-pair queries")
    s.add_argument("action", choices=("leq", "cub"))
    s.add_argument("p1", type=_pair)
    s.add_argument("p2", type=_pair)

    s = sub.add_parser("export-dot", help="DOT drawing, far edges dashed")
    s.add_argument("--labeling")
    s.add_argument("--coloring")
    s.add_argument("file")
    return p


def _echo(argv: list[str]) -> str:
    kept = []
    skip = False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--jobs":
            skip = True
            continue
        if a.startswith("--jobs="):
            continue
        kept.append(a)
    return "# ttc " + " ".join(kept)


def _load(path: str, labeling: str | None):
    text = Path(path).read_text(encoding="utf-8")
    doc = parse_graph_file(text)
    lab = doc.labeling
    if labeling is not None:
        lab = NearFarLabeling.from_hex(labeling, doc.graph.edge_count)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
    return doc, lab, digest


def _family_labeling(family: str, doc, lab):
    """Re-index a file labeling onto the built-in family graph of the same size."""
    n = doc.graph.vertex_count
    size = {"prism": n // 2, "ladder": n // 2 - 1, "fan": n - 1, "petersen": None}[family]
    g = build_family(family, size)
    if g.vertex_count != n or g.edge_count != doc.graph.edge_count or any(
        not g.has_edge(u, v) for u, v in doc.graph.edges
    ):
        raise TTCError(f"the file graph is not the {family} on {n} vertices")
    far = [g.edge_index[doc.graph.edges[e]] for e in lab.far_edges()]
    return g, NearFarLabeling.from_far(far, g.edge_count)


def _coloring_lines(col) -> list[str]:
    return serialize_coloring(canonicalize(col)).splitlines()


def run(argv: list[str], out=sys.stdout) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    lines = [_echo(argv)]
    code = 0
    cmd = args.command

    if cmd == "gen":
        g = build_family(args.family, args.n)
        lab = NearFarLabeling.from_hex(args.labeling, g.edge_count) if args.labeling else None
        name = args.family if args.n is None else f"{args.family}-{args.n}"
        out.write(serialize_graph(name, g, lab))
        return 0

    if cmd == "solve":
        doc, lab, digest = _load(args.file, args.labeling)
        lines.append(f"input: {digest}")
        col = find_coloring(doc.graph, lab, args.pair)
        if col is None:
            lines.append(f"outcome: UNSAT at {args.pair}")
            code = 1
        else:
            lines.append(f"outcome: SAT at {args.pair}")
            lines += _coloring_lines(col)

    elif cmd == "construct":
        doc, lab, digest = _load(args.file, args.labeling)
        lines.append(f"input: {digest}")
        g, lab = _family_labeling(args.family, doc, lab)
        trace: list[str] = []
        if args.family == "prism":
            col = prism_color(lab, trace)
        elif args.family == "ladder":
            col = ladder_color(g.size, lab)
        elif args.family == "fan":
            col = fan_color(g.size, lab)
        else:
            col, _ = pet.petersen_color(lab, trace=trace)
        bad = verify(g, lab, col.pair, col)
        if args.trace:
            lines += [f"trace: {t}" for t in trace]
        lines.append(f"branch: {col.branch}")
        lines.append(f"outcome: {'verified' if not bad else 'INVALID'} at {col.pair}")
        lines += _coloring_lines(col)
        code = 1 if bad else 0

    elif cmd == "verify":
        doc, lab, digest = _load(args.graph, args.labeling)
        col = parse_coloring_file(Path(args.coloring).read_text(encoding="utf-8"), doc.graph.vertex_count)
        lines.append(f"input: {digest}")
        bad = verify(doc.graph, lab, args.pair, col)
        for v in bad:
            lines.append(f"violation {v.kind}: {v.detail}")
        lines.append(f"outcome: {'valid' if not bad else 'invalid'} at {args.pair}")
        code = 1 if bad else 0

    elif cmd == "total-check":
        g = build_family(args.family, args.n)
        constructor = None
        if args.constructive:
            if args.family not in CONSTRUCTORS:
                raise TTCError(f"no constructive colorer for {args.family}")
            constructor = CONSTRUCTORS[args.family]
        started = time.perf_counter()
        report = total_check(g, args.pair, constructor, jobs=args.jobs, limit=args.limit)
        print(f"elapsed: {time.perf_counter() - started:.2f}s", file=sys.stderr)
        lines += report.lines()
        code = 1 if report.failures else 0

    elif cmd == "petersen":
        started = time.perf_counter()
        if args.action == "audit":
            rep = pet.audit_case_analysis(args.jobs)
            code = 1 if rep.uncovered else 0
        else:
            rep = pet.petersen_sweep(args.jobs, uniform=not args.exact_pairs)
            code = 1 if rep.proof_gaps else 0
        print(f"elapsed: {time.perf_counter() - started:.2f}s", file=sys.stderr)
        lines += rep.lines()

    elif cmd == "moebius":
        g = build_family("moebius", args.n)
        lab = spoke_far_labeling(g)
        cert = moebius_certificate(args.n)
        lines += cert.lines()
        ok = check_certificate(g, lab, cert)
        lines.append(f"check: {'pass' if ok else 'FAIL'}")
        code = 0 if ok else 1

    elif cmd == "poset":
        p1, p2 = args.p1, args.p2
        if args.action == "cub":
            lines.append(f"upper bound: {common_upper_bound(p1, p2)}")
        else:
            fwd, back = pair_leq(p1, p2), pair_leq(p2, p1)
            if fwd is not None:
                lines.append(f"{p1} <= {p2}: witness {' '.join(map(str, fwd.values))}")
            elif back is not None:
                lines.append(f"{p1} is not below {p2}; {p2} <= {p1}")
                code = 1
            else:
                lines.append(f"{p1} and {p2} are incomparable")
                code = 1

    elif cmd == "export-dot":
        doc, lab, _ = _load(args.file, args.labeling)
        col = None
        if args.coloring:
            col = parse_coloring_file(Path(args.coloring).read_text(encoding="utf-8"), doc.graph.vertex_count)
        out.write(to_dot(doc.name, doc.graph, lab, col))
        return 0

    out.write("\n".join(lines) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except (ConstructionBugError, ProofGapError) as exc:
        print(f"finding: {exc}", file=sys.stderr)
        return 1
    except (TTCError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
