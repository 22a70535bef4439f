"""Command-line interface: ``python -m tridecomp <command> ...``.

Graph arguments are a file path, ``-`` for stdin, or ``name:<fixture>``
(for example ``name:octahedron`` or ``name:double(k4)``).

Exit codes: 0 success, 1 "none" or invalid certificate, 2 search truncated,
64 usage error, 65 malformed input data, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import io as gio
from .decompose import (
    ExactCertificate,
    StructuralCertificate,
    check_partition,
    decompose_exact,
    theorem1_search,
    verify_structural,
)
from .embedding import embed, is_planar, is_two_connected, to_dot
from .errors import CertificateError, GraphError, InconsistentCover, ParseError, UnknownName
from .generators import generate_named, generate_random_maximal_planar
from .graph import double, enumerate_triangles, is_eulerian, is_k3_divisible, is_strongly_k3_divisible
from .k4 import (
    K4Profile,
    construct_k4_decomposition,
    construct_k4_rational,
    decide_k4_exact,
    decide_k4_rational,
    decide_profile,
)
from .rational import ONE, RationalCertificate, rational_decompose, verify_rational
from .structure import faceless_condition, is_duplicate, is_separating

EX_OK, EX_NONE, EX_TRUNCATED = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_IOERR = 64, 65, 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(src: str) -> bytes:
    try:
        if src == "-":
            return sys.stdin.buffer.read()
        with open(src, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EX_IOERR, f"cannot read {src}: {exc.strerror or exc}") from None


def load_graph(src: str, fmt: str = "auto"):
    if src.startswith("name:"):
        try:
            return generate_named(src[5:])
        except UnknownName as exc:
            raise _Exit(EX_USAGE, f"unknown fixture {exc.args[0]!r}") from None
    data = _read(src)
    if fmt == "auto":
        fmt = gio.guess_format(src, data)
    return gio.parse_graph(data, fmt)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise _Exit(EX_IOERR, f"cannot write {out}: {exc.strerror or exc}") from None


def cmd_analyze(args) -> int:
    G = load_graph(args.graph, args.format)
    planar = is_planar(G)
    report = {
        "vertices": G.vertex_count,
        "edges": G.edge_count,
        "simple": G.is_simple(),
        "eulerian": is_eulerian(G),
        "k3_divisible": is_k3_divisible(G),
        "strongly_k3_divisible": is_strongly_k3_divisible(G),
        "planar": planar,
        "two_connected": is_two_connected(G),
        "triangles": [],
    }
    seen = set()
    for t in enumerate_triangles(G):
        if t.vertices in seen:
            continue
        seen.add(t.vertices)
        report["triangles"].append(
            {
                "vertices": list(t.vertices),
                "count": _triangle_count(G, t.vertices),
                "faceless": faceless_condition(G, t.vertices) if planar else None,
                "duplicate": is_duplicate(G, t.vertices),
                "separating": is_separating(G, t.vertices),
            }
        )
    if args.json:
        _emit(json.dumps(report, indent=1), args.output)
        return EX_OK
    lines = []
    for key, val in report.items():
        if key != "triangles":
            lines.append(f"{key}: {_fmt(val)}")
    for tri in report["triangles"]:
        flags = [k for k in ("faceless", "duplicate", "separating") if tri[k]]
        v = " ".join(map(str, tri["vertices"]))
        lines.append(f"triangle {v}: {', '.join(flags) if flags else 'plain'}")
    _emit("\n".join(lines), args.output)
    return EX_OK


def _triangle_count(G, triple) -> int:
    u, v, w = triple
    return len(G.edges_between(u, v)) * len(G.edges_between(v, w)) * len(G.edges_between(u, w))


def _fmt(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)


def cmd_decompose(args) -> int:
    G = load_graph(args.graph, args.format)
    if args.engine == "exact":
        cert = decompose_exact(G)
        if cert is None:
            _emit("none", args.output)
            return EX_NONE
        _emit(gio.write_certificate(G, cert), args.output)
        return EX_OK
    kwargs = {}
    if args.cap is not None:
        kwargs = {"depletion_cap": args.cap, "embedding_cap": args.cap}
    res = theorem1_search(G, **kwargs)
    if not res:
        _emit("none (search truncated)" if res.truncated else "none", args.output)
        return EX_TRUNCATED if res.truncated else EX_NONE
    _emit(gio.write_certificate(G, res), args.output)
    return EX_OK


def cmd_rational(args) -> int:
    G = load_graph(args.graph, args.format)
    cert = rational_decompose(G)
    if cert is None:
        _emit("none", args.output)
        return EX_NONE
    _emit(gio.write_certificate(G, cert), args.output)
    return EX_OK


def cmd_k4(args) -> int:
    profile = K4Profile.of(args.multiplicities)
    G = profile.realize()
    zeros = profile.zeros()
    if not zeros:
        if args.rational:
            n_prime = decide_k4_rational(profile)
            if n_prime is None:
                _emit("none", args.output)
                return EX_NONE
            cert = construct_k4_rational(profile, n_prime)
            print(f"# n' = {n_prime}", file=sys.stderr)
        else:
            sol = decide_k4_exact(profile)
            if sol is None:
                _emit("none", args.output)
                return EX_NONE
            cert = construct_k4_decomposition(profile, sol.n, sol.apex)
            print(f"# n = {sol.n} at apex {sol.apex}", file=sys.stderr)
        _emit(gio.write_certificate(G, cert), args.output)
        return EX_OK
    # off K4 the rational and exact decisions coincide, so weight-1 triangles
    # of an exact decomposition are the rational answer
    exact = decide_profile(profile)
    if exact is None:
        _emit("none", args.output)
        return EX_NONE
    cert = RationalCertificate({t: ONE for t in exact.triangles}) if args.rational else exact
    _emit(gio.write_certificate(G, cert), args.output)
    return EX_OK


def cmd_certify(args) -> int:
    G = load_graph(args.graph, args.format)
    data = _read(args.certificate)
    try:
        doc = gio.read_certificate(data, G)
        cert = doc.certificate
        if isinstance(cert, ExactCertificate):
            check_partition(G, cert.triangles)
        elif isinstance(cert, RationalCertificate):
            verdict = verify_rational(G, cert)
            if not verdict:
                raise InconsistentCover(f"edge {verdict.edge} carries total weight {verdict.total}")
        elif isinstance(cert, StructuralCertificate):
            verify_structural(G, cert)
    except CertificateError as exc:
        _emit(f"invalid: {exc.violation}: {exc}", args.output)
        return EX_NONE
    _emit(f"valid {doc.kind} certificate", args.output)
    return EX_OK


def cmd_generate(args) -> int:
    spec = args.spec
    if spec[0] == "random-maximal-planar":
        if len(spec) != 3:
            raise _Exit(EX_USAGE, "usage: generate random-maximal-planar N SEED")
        try:
            n, seed = int(spec[1]), int(spec[2])
        except ValueError:
            raise _Exit(EX_USAGE, "N and SEED must be integers") from None
        if n < 3:
            raise _Exit(EX_USAGE, "N must be at least 3")
        G = generate_random_maximal_planar(n, seed, flips=args.flips)
    elif len(spec) == 1:
        try:
            G = generate_named(spec[0])
        except UnknownName as exc:
            raise _Exit(EX_USAGE, f"unknown fixture {exc.args[0]!r}") from None
    else:
        raise _Exit(EX_USAGE, "generate takes a fixture name or random-maximal-planar N SEED")
    if args.double:
        G = double(G)
    text = gio.write_edge_list(G) if args.to == "edge-list" else gio.write_graph_json(G)
    _emit(text, args.output)
    return EX_OK


def cmd_export_dot(args) -> int:
    G = load_graph(args.graph, args.format)
    rs = embed(G) if args.embed else None
    _emit(to_dot(G, rs), args.output)
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tridecomp", description="Triangle decompositions of planar multigraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("graph", help="file path, '-' for stdin, or name:<fixture>")
        sp.add_argument("--format", choices=("auto",) + gio.FORMATS, default="auto")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        return sp

    sp = graph_cmd("analyze", "divisibility, planarity and triangle classification")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_analyze)

    sp = graph_cmd("decompose", "find a triangle decomposition")
    sp.add_argument("--engine", choices=("exact", "theorem1"), default="exact")
    sp.add_argument("--cap", type=int, help="depletion and embedding cap for the theorem1 engine")
    sp.set_defaults(func=cmd_decompose)

    sp = graph_cmd("rational", "find a rational decomposition of a simple planar graph")
    sp.set_defaults(func=cmd_rational)

    sp = sub.add_parser("k4", help="closed form for a K4-underlying profile r s t x y z")
    sp.add_argument("multiplicities", nargs=6, type=int, metavar="M")
    sp.add_argument("--rational", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_k4)

    sp = graph_cmd("certify", "verify a certificate against a graph")
    sp.add_argument("certificate", help="certificate JSON file")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("generate", help="emit a fixture or random triangulation")
    sp.add_argument("spec", nargs="+", metavar="NAME | random-maximal-planar N SEED")
    sp.add_argument("--double", action="store_true", help="double every edge")
    sp.add_argument("--flips", type=int, default=0, help="random edge flips after stacking")
    sp.add_argument("--to", choices=("json", "edge-list"), default="json")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    sp = graph_cmd("export-dot", "Graphviz DOT output")
    sp.add_argument("--embed", action="store_true", help="annotate faces of a plane embedding")
    sp.set_defaults(func=cmd_export_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"tridecomp: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"tridecomp: parse error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except (GraphError, ValueError) as exc:
        print(f"tridecomp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EX_DATAERR
