"""JSON and DOT serialization of bigraphs.

The JSON document carries the signature, both interfaces, nodes with their
parents and attributes, edges, site placement and the full link map; importing
it reproduces the bigraph exactly (same identifiers).  DOT output renders the
place hierarchy as nested clusters and the link map as directed arcs.
"""

from __future__ import annotations

import json

from .bigraph import (
    Bigraph, Control, Edge, InnerName, OuterName, Port, Root, Signature,
)
from .interfaces import LocalInterface
from .sorting import Pattern

__all__ = [
    "bigraph_to_json", "bigraph_from_json", "dumps", "loads",
    "patterns_from_json", "to_dot",
]


def _interface_to_json(i: LocalInterface) -> list:
    return [{"plus": sorted(p), "minus": sorted(m)} for p, m in i.localities]


def _interface_from_json(data) -> LocalInterface:
    return LocalInterface(tuple(
        (frozenset(loc.get("plus", ())), frozenset(loc.get("minus", ())))
        for loc in data))


def _control_to_json(c: Control) -> dict:
    return {"name": c.name, "plus": c.plus, "minus": c.minus}


def _ref_to_json(x) -> dict:
    if isinstance(x, InnerName):
        return {"kind": "inner", "locality": x.locality, "text": x.text}
    if isinstance(x, OuterName):
        return {"kind": "outer", "locality": x.locality, "text": x.text}
    if isinstance(x, Port):
        return {"kind": "port", "node": x.node, "index": x.index}
    if isinstance(x, Edge):
        return {"kind": "edge", "id": x.ident}
    raise TypeError(f"not serializable: {x!r}")


def _ref_from_json(data):
    kind = data["kind"]
    if kind == "inner":
        return InnerName(data["locality"], data["text"])
    if kind == "outer":
        return OuterName(data["locality"], data["text"])
    if kind == "port":
        return Port(data["node"], data["index"])
    if kind == "edge":
        return Edge(data["id"])
    raise ValueError(f"unknown reference kind {kind!r}")


def _parent_to_json(p) -> dict:
    return {"root": p.index} if isinstance(p, Root) else {"node": p}


def _parent_from_json(data):
    return Root(data["root"]) if "root" in data else data["node"]


def bigraph_to_json(b: Bigraph) -> dict:
    nodes = []
    for v in sorted(b.nodes):
        entry = {"id": v, "control": _control_to_json(b.nodes[v]),
                 "parent": _parent_to_json(b.node_parent.get(v))}
        if b.attrs(v):
            entry["attrs"] = dict(b.attrs(v))
        nodes.append(entry)
    return {
        "signature": {
            "controls": [_control_to_json(c) for c in b.signature.fixed],
            "parametric": sorted(b.signature.parametric),
        },
        "inner": _interface_to_json(b.inner),
        "outer": _interface_to_json(b.outer),
        "nodes": nodes,
        "edges": sorted(b.edges),
        "sites": [{"index": s, "parent": _parent_to_json(p)}
                  for s, p in sorted(b.site_parent.items())],
        "links": [{"point": _ref_to_json(p), "link": _ref_to_json(t)}
                  for p, t in sorted(b.link.items(), key=lambda kv: str(kv[0]))],
    }


def bigraph_from_json(data: dict) -> Bigraph:
    sig = data.get("signature", {})
    signature = Signature(
        fixed=tuple(Control(c["name"], c["plus"], c["minus"])
                    for c in sig.get("controls", ())),
        parametric=frozenset(sig.get("parametric", ())),
    )
    nodes, node_parent, attrs = {}, {}, {}
    for entry in data.get("nodes", ()):
        v = entry["id"]
        c = entry["control"]
        nodes[v] = Control(c["name"], c["plus"], c["minus"])
        node_parent[v] = _parent_from_json(entry["parent"])
        if entry.get("attrs"):
            attrs[v] = dict(entry["attrs"])
    site_parent = {s["index"]: _parent_from_json(s["parent"])
                   for s in data.get("sites", ())}
    link = {_ref_from_json(e["point"]): _ref_from_json(e["link"])
            for e in data.get("links", ())}
    return Bigraph(signature,
                   _interface_from_json(data["inner"]),
                   _interface_from_json(data["outer"]),
                   nodes, set(data.get("edges", ())),
                   site_parent, node_parent, link, attrs)


def dumps(b: Bigraph, indent: int | None = 2) -> str:
    return json.dumps(bigraph_to_json(b), indent=indent, sort_keys=True)


def loads(text: str) -> Bigraph:
    return bigraph_from_json(json.loads(text))


def patterns_from_json(text: str) -> list[Pattern]:
    """Forbidden-pattern file: a JSON list of {name, bigraph} entries."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("pattern file must be a JSON list")
    out = []
    for i, entry in enumerate(data):
        if "bigraph" not in entry:
            raise ValueError(f"pattern {i}: missing bigraph")
        out.append(Pattern(entry.get("name", f"pattern{i}"),
                           bigraph_from_json(entry["bigraph"]),
                           anchor_at_roots=bool(entry.get("anchor_at_roots",
                                                          False))))
    return out


# -- DOT export ---------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def _dot_id(x) -> str:
    # always quoted: name texts may contain characters DOT ids reject
    if isinstance(x, InnerName):
        return _quote(f"in_{x.locality}_{x.text}")
    if isinstance(x, OuterName):
        return _quote(f"out_{x.locality}_{x.text}")
    if isinstance(x, Port):
        return _quote(f"n{x.node}")
    if isinstance(x, Edge):
        return _quote(f"e{x.ident}")
    raise TypeError(x)


def to_dot(b: Bigraph, title: str = "bigraph") -> str:
    """Render nesting as clusters and the link map as directed arcs."""
    lines = [f"digraph {_quote(title)} {{", "  rankdir=TB;",
             "  node [shape=box, fontsize=10];"]

    def label(v: int) -> str:
        ctrl = b.nodes[v]
        name = b.attrs(v).get("name")
        base = f"{ctrl.name} {name}" if name else ctrl.name
        return f"{base}\\n({ctrl.plus}+,{ctrl.minus}-) #{v}"

    def emit_place(place, indent: str):
        for s in b.sites_under(place):
            lines.append(f"{indent}\"site_{s}\" [label=\"site {s}\", "
                         "shape=box, style=dotted];")
        for v in b.children(place):
            if b.children(v) or b.sites_under(v):
                lines.append(f"{indent}subgraph cluster_n{v} {{")
                lines.append(f"{indent}  label={_quote(label(v))};")
                lines.append(f"{indent}  \"n{v}\" [label=\"\", shape=point];")
                emit_place(v, indent + "  ")
                lines.append(f"{indent}}}")
            else:
                lines.append(f"{indent}\"n{v}\" [label={_quote(label(v))}];")

    for r in range(1, b.outer.width + 1):
        lines.append(f"  subgraph cluster_root_{r} {{")
        lines.append(f"    label=\"root {r}\"; style=dashed;")
        emit_place(Root(r), "    ")
        lines.append("  }")

    for i in range(len(b.inner.localities)):
        for t in sorted(b.inner.plus(i)):
            lines.append(f"  {_dot_id(InnerName(i, t))} "
                         f"[label={_quote(f'{t}@{i}+')}, shape=plaintext];")
        for t in sorted(b.inner.minus(i)):
            lines.append(f"  {_dot_id(InnerName(i, t))} "
                         f"[label={_quote(f'{t}@{i}-')}, shape=plaintext];")
    for i in range(len(b.outer.localities)):
        for t in sorted(b.outer.plus(i)):
            lines.append(f"  {_dot_id(OuterName(i, t))} "
                         f"[label={_quote(f'{t}@{i}+')}, shape=plaintext];")
        for t in sorted(b.outer.minus(i)):
            lines.append(f"  {_dot_id(OuterName(i, t))} "
                         f"[label={_quote(f'{t}@{i}-')}, shape=plaintext];")
    for e in sorted(b.edges):
        lines.append(f"  {_dot_id(Edge(e))} [label=\"e{e}\", shape=diamond, "
                     "fontsize=8];")

    for p, t in sorted(b.link.items(), key=lambda kv: str(kv[0])):
        extras = []
        if isinstance(p, Port):
            extras.append(f"taillabel=\"{p.index}\"")
        if isinstance(t, Port):
            extras.append(f"headlabel=\"{t.index}\"")
        suffix = f" [{', '.join(extras)}]" if extras else ""
        lines.append(f"  {_dot_id(p)} -> {_dot_id(t)}{suffix};")

    lines.append("}")
    return "\n".join(lines) + "\n"
