"""Graph and certificate serialization.

Formats:

* edge-list: ``u v [multiplicity]`` per line, ``#`` comments, blank lines
  ignored. A ``# vertices: N`` comment fixes the vertex count (otherwise it
  is one more than the largest index). Non-integer tokens are vertex labels,
  numbered in order of first appearance.
* graph6: read-only, simple graphs, decoded by networkx.
* json: ``{"schema": 1, "type": "graph", ...}``; certificates use
  ``"type": "certificate"`` and carry the hash of the graph they belong to.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import networkx as nx

from .decompose import ExactCertificate, StructuralCertificate
from .embedding import RotationSystem
from .errors import GraphError, GraphMismatch, InvalidEmbedding, LoopEdge, ParseError
from .graph import Multigraph, Triangle
from .rational import RationalCertificate
from .structure import Deletion, Depletion, TriangleKind

SCHEMA = 1
FORMATS = ("edge-list", "graph6", "json")
_VERTICES = re.compile(r"#\s*vertices\s*:\s*(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class GraphDocument:
    graph: Multigraph
    format: str = "json"
    labels: tuple[str, ...] = field(default=())

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


def _text(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text: {exc}", None) from None
    return data


def parse_edge_list(text: str) -> GraphDocument:
    declared = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        m = _VERTICES.match(raw.strip())
        if m:
            declared = int(m.group(1))
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'u v [multiplicity]', got {line!r}", lineno)
        mult = 1
        if len(parts) == 3:
            try:
                mult = int(parts[2])
            except ValueError:
                raise ParseError(f"multiplicity {parts[2]!r} is not an integer", lineno) from None
            if mult < 1:
                raise ParseError(f"multiplicity must be positive, got {mult}", lineno)
        rows.append((lineno, parts[0], parts[1], mult))

    tokens = [t for _, u, v, _ in rows for t in (u, v)]
    numeric = all(re.fullmatch(r"\d+", t) for t in tokens)
    if numeric:
        index = {t: int(t) for t in tokens}
        labels: tuple[str, ...] = ()
        n = max(index.values(), default=-1) + 1
    else:
        order = list(dict.fromkeys(tokens))
        index = {t: i for i, t in enumerate(order)}
        labels = tuple(order)
        n = len(order)
    if declared is not None:
        if declared < n:
            raise ParseError(f"declared {declared} vertices but vertex {n - 1} is used", None)
        if labels:
            labels += tuple(str(i) for i in range(n, declared))
        n = declared
    edges = []
    for lineno, u, v, mult in rows:
        if index[u] == index[v]:
            raise LoopEdge(f"line {lineno}: loop at vertex {u}")
        edges += [(index[u], index[v])] * mult
    return GraphDocument(Multigraph(n, tuple(edges)), "edge-list", labels)


def parse_graph6(text: str) -> GraphDocument:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    lines = [ln for ln in s.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ParseError(f"expected one graph6 line, found {len(lines)}", None)
    try:
        g = nx.from_graph6_bytes(lines[0].strip().encode("ascii"))
    except (ValueError, nx.NetworkXError, UnicodeEncodeError) as exc:
        raise ParseError(f"bad graph6 data: {exc}", 1) from None
    edges = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    return GraphDocument(Multigraph(g.number_of_nodes(), tuple(edges)), "graph6")


def _graph_from_obj(obj: dict) -> GraphDocument:
    if obj.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {obj.get('schema')!r}", None)
    try:
        n = int(obj["vertex_count"])
        edges = []
        for item in obj["edges"]:
            u, v, *rest = item
            edges += [(int(u), int(v))] * (int(rest[0]) if rest else 1)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph document: {exc}", None) from None
    labels = tuple(str(x) for x in obj.get("labels") or ())
    if labels and len(labels) != n:
        raise ParseError(f"{len(labels)} labels for {n} vertices", None)
    return GraphDocument(Multigraph(n, tuple(edges)), "json", labels)


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None


def parse_document(data: bytes | str, format: str) -> GraphDocument:
    text = _text(data)
    if format == "edge-list":
        return parse_edge_list(text)
    if format == "graph6":
        return parse_graph6(text)
    if format == "json":
        obj = _load_json(text)
        if not isinstance(obj, dict):
            raise ParseError("graph document must be a JSON object", None)
        return _graph_from_obj(obj)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def parse_graph(data: bytes | str, format: str = "edge-list") -> Multigraph:
    """Multigraph with edge ids in file order."""
    return parse_document(data, format).graph


def guess_format(path: str, data: bytes | str) -> str:
    low = path.lower()
    if low.endswith(".json"):
        return "json"
    if low.endswith((".g6", ".graph6")):
        return "graph6"
    if _text(data).lstrip().startswith("{"):
        return "json"
    return "edge-list"


def write_edge_list(G: Multigraph, labels: tuple[str, ...] = ()) -> str:
    """One line per edge so ids survive a round trip."""
    lines = [f"# vertices: {G.vertex_count}"]
    name = (lambda v: labels[v]) if labels else str
    lines += [f"{name(u)} {name(v)}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def graph_to_obj(G: Multigraph, labels: tuple[str, ...] = ()) -> dict:
    obj = {"schema": SCHEMA, "type": "graph", "vertex_count": G.vertex_count, "edges": [list(e) for e in G.edges]}
    if labels:
        obj["labels"] = list(labels)
    return obj


def write_graph_json(G: Multigraph, labels: tuple[str, ...] = ()) -> str:
    return json.dumps(graph_to_obj(G, labels), indent=1)


def graph_hash(G: Multigraph) -> str:
    """sha256 of the vertex count and the ordered edge list."""
    canon = json.dumps([G.vertex_count, [list(e) for e in G.edges]], separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


# certificates


@dataclass(frozen=True)
class CertificateDocument:
    kind: str
    graph_hash: str
    certificate: Any

    def check_graph(self, G: Multigraph) -> None:
        if graph_hash(G) != self.graph_hash:
            raise GraphMismatch("certificate was issued for a different graph")


def _tri_obj(t: Triangle) -> dict:
    return {"edges": list(t.edges), "vertices": list(t.vertices)}


def _tri_from(obj) -> Triangle:
    if isinstance(obj, dict):
        return Triangle(tuple(sorted(int(e) for e in obj["edges"])), tuple(sorted(int(v) for v in obj["vertices"])))
    raise TypeError("triangle must be an object with edges and vertices")


def certificate_to_obj(G: Multigraph, cert) -> dict:
    out = {"schema": SCHEMA, "type": "certificate", "graph_hash": graph_hash(G)}
    if isinstance(cert, ExactCertificate):
        out["kind"] = "exact"
        out["triangles"] = [_tri_obj(t) for t in cert.triangles]
    elif isinstance(cert, RationalCertificate):
        out["kind"] = "rational"
        out["weights"] = [{**_tri_obj(t), "weight": [w.numerator, w.denominator]} for t, w in cert.weights.items()]
    elif isinstance(cert, StructuralCertificate):
        dep = cert.depletion
        out["kind"] = "structural"
        out["depletion"] = [{"vertices": list(d.vertices), "kind": d.kind.value, "edges": list(d.edges)} for d in dep.deletions]
        out["rotation"] = [list(r) for r in cert.embedding.rotation]
        out["A"] = list(cert.A)
        out["B"] = list(cert.B)
        out["triangles"] = [_tri_obj(t) for t in cert.decomposition.triangles]
    else:
        raise TypeError(f"cannot serialize {type(cert).__name__}")
    return out


def write_certificate(G: Multigraph, cert) -> str:
    return json.dumps(certificate_to_obj(G, cert), indent=1)


def certificate_from_obj(obj: dict, G: Multigraph | None = None) -> CertificateDocument:
    """Decode a certificate. Structural certificates need G to rebuild the
    depletion; when G is given its hash is checked first."""
    if not isinstance(obj, dict) or obj.get("schema") != SCHEMA or obj.get("type") != "certificate":
        raise ParseError("not a schema-1 certificate document", None)
    ghash = obj.get("graph_hash", "")
    doc_kind = obj.get("kind")
    if G is not None and graph_hash(G) != ghash:
        raise GraphMismatch("certificate was issued for a different graph")
    try:
        if doc_kind == "exact":
            cert = ExactCertificate(tuple(_tri_from(t) for t in obj["triangles"]))
        elif doc_kind == "rational":
            cert = RationalCertificate({_tri_from(t): Fraction(int(t["weight"][0]), int(t["weight"][1])) for t in obj["weights"]})
        elif doc_kind == "structural":
            if G is None:
                raise ParseError("structural certificates need the graph to decode", None)
            deletions = tuple(
                Deletion(tuple(int(v) for v in d["vertices"]), TriangleKind(d["kind"]), tuple(int(e) for e in d["edges"]))
                for d in obj["depletion"]
            )
            gone = {e for d in deletions for e in d.edges}
            result, emap = G.spanning_subgraph(e for e in range(G.edge_count) if e not in gone)
            try:
                rs = RotationSystem(result, tuple(tuple(int(d) for d in r) for r in obj["rotation"]))
            except GraphError as exc:
                raise InvalidEmbedding(str(exc)) from None
            cert = StructuralCertificate(
                Depletion(G, deletions, result, emap),
                rs,
                tuple(int(f) for f in obj["A"]),
                tuple(int(f) for f in obj["B"]),
                ExactCertificate(tuple(_tri_from(t) for t in obj["triangles"])),
            )
        else:
            raise ParseError(f"unknown certificate kind {doc_kind!r}", None)
    except (ParseError, InvalidEmbedding):
        raise
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed certificate: {exc}", None) from None
    return CertificateDocument(doc_kind, ghash, cert)


def read_certificate(data: bytes | str, G: Multigraph | None = None) -> CertificateDocument:
    obj = _load_json(_text(data))
    return certificate_from_obj(obj, G)
