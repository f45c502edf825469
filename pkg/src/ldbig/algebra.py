"""Categorical operations on bigraphs: composition, tensor product, identity,
support relabelling, and support equivalence (isomorphism)."""

from __future__ import annotations

from collections import Counter

from .bigraph import (
    Bigraph, Edge, InnerName, OuterName, Port, Root, Signature,
    EMPTY_SIGNATURE,
)
from .errors import GlobalNameClash, InterfaceMismatch, LdbError
from .interfaces import LocalInterface, juxtapose_with_renames

__all__ = ["compose", "tensor", "identity", "relabel", "is_isomorphic",
           "place_order"]


def relabel(b: Bigraph, node_map: dict[int, int] | None = None,
            edge_map: dict[int, int] | None = None) -> Bigraph:
    """Rename support identifiers; both maps must be injective."""
    nm = node_map or {}
    em = edge_map or {}

    def n(v):
        return nm.get(v, v)

    def place(p):
        return p if isinstance(p, Root) else n(p)

    def ref(x):
        if isinstance(x, Port):
            return Port(n(x.node), x.index)
        if isinstance(x, Edge):
            return Edge(em.get(x.ident, x.ident))
        return x

    return Bigraph(
        b.signature, b.inner, b.outer,
        {n(v): c for v, c in b.nodes.items()},
        {em.get(e, e) for e in b.edges},
        {s: place(p) for s, p in b.site_parent.items()},
        {n(v): place(p) for v, p in b.node_parent.items()},
        {ref(p): ref(t) for p, t in b.link.items()},
        {n(v): a for v, a in b.node_attrs.items()},
    )


def _support_disjoint(b1: Bigraph, b2: Bigraph) -> Bigraph:
    """Relabel b2 so its node/edge ids avoid b1's (refresh on collision)."""
    ids1 = set(b1.nodes) | set(b1.edges)
    ids2 = set(b2.nodes) | set(b2.edges)
    if not ids1 & ids2:
        return b2
    offset = max(ids1 | ids2, default=0)
    return relabel(b2, {v: v + offset for v in b2.nodes},
                   {e: e + offset for e in b2.edges})


def identity(interface: LocalInterface,
             signature: Signature = EMPTY_SIGNATURE) -> Bigraph:
    """The identity bigraph: each site under its root, every name wired to its
    counterpart on the other interface."""
    link = {}
    for i in range(len(interface.localities)):
        for t in interface.plus(i):
            link[InnerName(i, t)] = OuterName(i, t)
        for t in interface.minus(i):
            link[OuterName(i, t)] = InnerName(i, t)
    site_parent = {i: Root(i) for i in range(1, interface.width + 1)}
    return Bigraph(signature, interface, interface, {}, set(), site_parent,
                   {}, link)


def compose(b2: Bigraph, b1: Bigraph) -> Bigraph:
    """b2 o b1: plug b1's roots into b2's sites and chain the link maps
    through the shared interface.

    Requires b1.outer == b2.inner (same widths and name sets per locality);
    raises InterfaceMismatch otherwise.  Colliding support ids are refreshed
    on b2's side.
    """
    if b1.outer != b2.inner:
        raise InterfaceMismatch(
            f"cannot compose: {b1.outer.pretty()} != {b2.inner.pretty()}")
    b2 = _support_disjoint(b1, b2)
    signature = b1.signature.union(b2.signature)

    def through(parent):
        # a parent inside b1 stays put; a root of b1 lands in b2's site
        if isinstance(parent, Root):
            landing = b2.site_parent.get(parent.index)
            if landing is None:
                raise LdbError(f"b2 has no site {parent.index}")
            return landing
        return parent

    site_parent = {s: through(p) for s, p in b1.site_parent.items()}
    node_parent = {v: through(p) for v, p in b1.node_parent.items()}
    node_parent.update(b2.node_parent)

    # Chasing: a b1 target that is an outer name is a shared-interface name,
    # i.e. a point of b2; a b2 target that is an inner name is a point of b1.
    limit = len(b1.link) + len(b2.link) + 2

    def chase(side: int, val):
        for _ in range(limit):
            if side == 1 and isinstance(val, OuterName):
                nxt = b2.link.get(InnerName(val.locality, val.text))
                if nxt is None:
                    raise LdbError(f"shared name {val} has no link in b2")
                side, val = 2, nxt
            elif side == 2 and isinstance(val, InnerName):
                nxt = b1.link.get(OuterName(val.locality, val.text))
                if nxt is None:
                    raise LdbError(f"shared name {val} has no link in b1")
                side, val = 1, nxt
            else:
                return val
        raise LdbError("link chase through the shared interface did not terminate")

    link = {}
    for p, t in b1.link.items():
        if isinstance(p, (InnerName, Port)):
            link[p] = chase(1, t)
    for p, t in b2.link.items():
        if isinstance(p, (OuterName, Port)):
            link[p] = chase(2, t)

    attrs = {**b1.node_attrs, **b2.node_attrs}
    return Bigraph(signature, b1.inner, b2.outer,
                   {**b1.nodes, **b2.nodes}, b1.edges | b2.edges,
                   site_parent, node_parent, link, attrs)


def tensor(b1: Bigraph, b2: Bigraph, *, tag_globals: bool = True) -> Bigraph:
    """b1 (x) b2: side-by-side juxtaposition.

    b2's localized names, sites and roots shift past b1's; colliding global
    names on b2's side are renamed unless ``tag_globals`` is False, in which
    case GlobalNameClash is raised.
    """
    inner, in_plus, in_minus = juxtapose_with_renames(b1.inner, b2.inner)
    outer, out_plus, out_minus = juxtapose_with_renames(b1.outer, b2.outer)
    if not tag_globals and (in_plus or in_minus or out_plus or out_minus):
        clashes = sorted(set(in_plus) | set(in_minus) | set(out_plus) | set(out_minus))
        raise GlobalNameClash(f"global names collide: {clashes}")
    b2 = _support_disjoint(b1, b2)
    d_in, d_out = b1.inner.width, b1.outer.width

    def place(p):
        return Root(p.index + d_out) if isinstance(p, Root) else p

    def point(x):  # keys: inner names are positive, outer names negative
        if isinstance(x, InnerName):
            if x.locality == 0:
                return InnerName(0, in_plus.get(x.text, x.text))
            return InnerName(x.locality + d_in, x.text)
        if isinstance(x, OuterName):
            if x.locality == 0:
                return OuterName(0, out_minus.get(x.text, x.text))
            return OuterName(x.locality + d_out, x.text)
        return x

    def target(x):  # values: inner names are negative, outer names positive
        if isinstance(x, InnerName):
            if x.locality == 0:
                return InnerName(0, in_minus.get(x.text, x.text))
            return InnerName(x.locality + d_in, x.text)
        if isinstance(x, OuterName):
            if x.locality == 0:
                return OuterName(0, out_plus.get(x.text, x.text))
            return OuterName(x.locality + d_out, x.text)
        return x

    site_parent = dict(b1.site_parent)
    for s, p in b2.site_parent.items():
        site_parent[s + d_in] = place(p)
    node_parent = dict(b1.node_parent)
    for v, p in b2.node_parent.items():
        node_parent[v] = place(p)
    link = dict(b1.link)
    for p, t in b2.link.items():
        link[point(p)] = target(t)

    attrs = {**b1.node_attrs, **b2.node_attrs}
    return Bigraph(b1.signature.union(b2.signature), inner, outer,
                   {**b1.nodes, **b2.nodes}, b1.edges | b2.edges,
                   site_parent, node_parent, link, attrs)


# -- support equivalence ----------------------------------------------------

def place_order(b: Bigraph) -> list[int]:
    """Nodes in parent-before-child order (stragglers on cycles last)."""
    out, seen = [], set()
    frontier = [v for v, p in sorted(b.node_parent.items())
                if isinstance(p, Root)]
    while frontier:
        nxt = []
        for v in frontier:
            if v not in seen:
                seen.add(v)
                out.append(v)
                nxt.extend(b.children(v))
        frontier = nxt
    out.extend(sorted(set(b.nodes) - seen))
    return out


def _fingerprint(b: Bigraph, v: int):
    """Iso-invariant node summary used to cut the candidate sets."""
    ctrl = b.nodes[v]
    parent = b.node_parent.get(v)
    pkind = parent if isinstance(parent, Root) else ("node",)
    targets = []
    for k in range(ctrl.plus):
        t = b.link.get(Port(v, k))
        if isinstance(t, (InnerName, OuterName)):
            targets.append(t)
        elif isinstance(t, Edge):
            targets.append("edge")
        elif isinstance(t, Port):
            targets.append(("port", b.nodes[t.node].name if t.node in b.nodes else "?", t.index))
        else:
            targets.append(None)
    incoming = Counter()
    for p, t in b.link.items():
        if isinstance(t, Port) and t.node == v:
            kind = "port" if isinstance(p, Port) else "name"
            incoming[(t.index, kind)] += 1
    return (ctrl, pkind, tuple(targets), tuple(sorted(incoming.items())),
            len(b.children(v)), tuple(b.sites_under(v)))


def _mapped_point(phi: dict[int, int], p):
    return Port(phi[p.node], p.index) if isinstance(p, Port) else p


def _verify_iso(b1: Bigraph, b2: Bigraph, phi: dict[int, int]) -> bool:
    for v, p in b1.node_parent.items():
        q = b2.node_parent.get(phi[v])
        want = p if isinstance(p, Root) else phi.get(p)
        if q != want:
            return False
    for s, p in b1.site_parent.items():
        q = b2.site_parent.get(s)
        want = p if isinstance(p, Root) else phi.get(p)
        if q != want:
            return False
    emap: dict[int, int] = {}
    bound: set[int] = set()
    for p1, t1 in b1.link.items():
        t2 = b2.link.get(_mapped_point(phi, p1))
        if isinstance(t1, Edge):
            if not isinstance(t2, Edge):
                return False
            if t1.ident in emap:
                if emap[t1.ident] != t2.ident:
                    return False
            elif t2.ident in bound:
                return False
            else:
                emap[t1.ident] = t2.ident
                bound.add(t2.ident)
        elif isinstance(t1, Port):
            if t2 != Port(phi[t1.node], t1.index):
                return False
        else:
            if t2 != t1:
                return False
    return True


def is_isomorphic(b1: Bigraph, b2: Bigraph) -> bool:
    """Support equivalence: a control-preserving node bijection and an edge
    bijection commuting with the parent and link maps, fixing both
    interfaces name-for-name.  Node attributes are not compared.
    """
    if b1.inner != b2.inner or b1.outer != b2.outer:
        return False
    if len(b1.nodes) != len(b2.nodes) or len(b1.edges) != len(b2.edges):
        return False
    if Counter(b1.nodes.values()) != Counter(b2.nodes.values()):
        return False
    if len(b1.link) != len(b2.link):
        return False

    fp2: dict = {}
    for w in b2.nodes:
        fp2.setdefault(_fingerprint(b2, w), []).append(w)
    classes = {}
    for v in b1.nodes:
        key = _fingerprint(b1, v)
        if key not in fp2:
            return False
        classes[v] = fp2[key]

    order = place_order(b1)
    phi: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return _verify_iso(b1, b2, phi)
        v = order[i]
        parent = b1.node_parent.get(v)
        for w in classes[v]:
            if w in used:
                continue
            qp = b2.node_parent.get(w)
            if isinstance(parent, Root):
                if qp != parent:
                    continue
            elif parent in phi and qp != phi[parent]:
                continue
            phi[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    return extend(0)
