"""The versioned graph-document format and DOT export.

A graph document is a JSON object::

    {
      "version": 1,
      "vertices": ["v1", "v2"],
      "edges": [{"from": "v1", "to": "v2", "weight": "1/l"}]
    }

Weight strings use the weight-expression grammar (integers, fractions,
the symbol ``l``, ``+ - * / ^``, parentheses).  Emission canonicalises the
weights, so parse/emit round-trips are stable byte-for-byte.
"""

from __future__ import annotations

import json

from .errors import DocumentSyntaxError
from .graph import WeightedDigraph, build
from .ratfun import format_weight

DOCUMENT_VERSION = 1


def parse_document(text: str | bytes) -> dict:
    """JSON text to a validated document dict."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from None
    _validate_document(doc)
    return doc


def _validate_document(doc) -> None:
    if not isinstance(doc, dict):
        raise DocumentSyntaxError("graph document must be a JSON object")
    version = doc.get("version", DOCUMENT_VERSION)
    if version != DOCUMENT_VERSION:
        raise DocumentSyntaxError(f"unsupported document version {version!r}")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) and v for v in vertices):
        raise DocumentSyntaxError("'vertices' must be a list of nonempty strings")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise DocumentSyntaxError("'edges' must be a list")
    for i, edge in enumerate(edges):
        if not isinstance(edge, dict):
            raise DocumentSyntaxError(f"edge #{i} must be an object")
        for key in ("from", "to", "weight"):
            if key not in edge or not isinstance(edge[key], str):
                raise DocumentSyntaxError(f"edge #{i} is missing string field {key!r}")


def document_to_graph(doc: dict) -> WeightedDigraph:
    edges = [(e["from"], e["to"], e["weight"]) for e in doc.get("edges", [])]
    return build(doc["vertices"], edges)


def parse_graph(text: str | bytes) -> WeightedDigraph:
    """Parse a graph document into a canonical graph."""
    return document_to_graph(parse_document(text))


def graph_to_document(g: WeightedDigraph) -> dict:
    return {
        "version": DOCUMENT_VERSION,
        "vertices": list(g.vertices),
        "edges": [{"from": u, "to": v, "weight": format_weight(w)}
                  for u, v, w in g.edge_list()],
    }


def emit_document(g: WeightedDigraph) -> str:
    return json.dumps(graph_to_document(g), indent=2) + "\n"


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: WeightedDigraph) -> str:
    """Deterministic DOT text: vertices in declaration order, edges by
    (source order, target order), weight expressions as labels."""
    lines = ["digraph reduced {"]
    for v in g.vertices:
        lines.append(f"  {_dot_quote(v)};")
    for u, v, w in g.edge_list():
        lines.append(f"  {_dot_quote(u)} -> {_dot_quote(v)} "
                     f"[label={_dot_quote(format_weight(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
