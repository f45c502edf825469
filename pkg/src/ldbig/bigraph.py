"""The local directed bigraph structure and its well-formedness check.

A bigraph couples a place forest (nodes and sites nested under roots) with a
directed link map from points to links.  Points are positive inner names,
negative outer names, and positive node ports; links are negative inner
names, positive outer names, edges, and negative node ports.  The classes
``InnerName``/``OuterName``/``Port`` play both roles: polarity follows from
the position (key = point, value = link).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .interfaces import LocalInterface, EMPTY_INTERFACE, check_name


# Frozen dataclasses, not NamedTuples: equality must be class-sensitive
# (an inner and an outer name with the same locality and text are different
# points/links and must not collide as dict keys).

@dataclass(frozen=True, slots=True)
class InnerName:
    """Inner-interface name at a locality (0 = global).

    As a point it is positive; as a link target it is negative.
    """

    locality: int
    text: str

    def __str__(self):
        return f"{self.text}@{self.locality}i"


@dataclass(frozen=True, slots=True)
class OuterName:
    """Outer-interface name at a locality (0 = global).

    As a point it is negative; as a link target it is positive.
    """

    locality: int
    text: str

    def __str__(self):
        return f"{self.text}@{self.locality}o"


@dataclass(frozen=True, slots=True)
class Port:
    """A node port: positive (source) as a point, negative (target) as a link."""

    node: int
    index: int

    def __str__(self):
        return f"{self.node}:{self.index}"


@dataclass(frozen=True, slots=True)
class Edge:
    """A closed link; edges may receive points from any locality."""

    ident: int

    def __str__(self):
        return f"e{self.ident}"


@dataclass(frozen=True, slots=True)
class Root:
    """A root region of the outer interface (index >= 1)."""

    index: int

    def __str__(self):
        return f"r{self.index}"


Point = Union[InnerName, OuterName, Port]
Link = Union[InnerName, OuterName, Port, Edge]
Place = Union[int, Root]  # parent: a node id or a root


@dataclass(frozen=True)
class Control:
    """A node type with a polarized arity: ``plus`` source ports, ``minus``
    target ports."""

    name: str
    plus: int
    minus: int

    def __post_init__(self):
        check_name(self.name)
        if self.plus < 0 or self.minus < 0:
            raise ValueError("port counts must be non-negative")


@dataclass(frozen=True)
class Signature:
    """The set of admissible controls.

    ``fixed`` maps a control name to its single arity; names in
    ``parametric`` admit any arity (each node records its own).
    """

    fixed: tuple[Control, ...] = ()
    parametric: frozenset[str] = frozenset()

    def __post_init__(self):
        by_name = {}
        for c in self.fixed:
            if c.name in by_name:
                raise ValueError(f"duplicate control {c.name!r}")
            by_name[c.name] = c
        if set(by_name) & self.parametric:
            raise ValueError("a control cannot be both fixed and parametric")
        object.__setattr__(self, "fixed", tuple(sorted(self.fixed, key=lambda c: c.name)))
        object.__setattr__(self, "parametric", frozenset(self.parametric))

    def lookup(self, name: str) -> Control | None:
        for c in self.fixed:
            if c.name == name:
                return c
        return None

    def admits(self, control: Control) -> bool:
        if control.name in self.parametric:
            return True
        found = self.lookup(control.name)
        return found == control

    def union(self, other: "Signature") -> "Signature":
        """Merge two signatures; same-name fixed controls must agree."""
        mine = {c.name: c for c in self.fixed}
        for c in other.fixed:
            if c.name in mine and mine[c.name] != c:
                raise ValueError(f"conflicting arities for control {c.name!r}")
            mine[c.name] = c
        parametric = self.parametric | other.parametric
        if set(mine) & parametric:
            raise ValueError("a control cannot be both fixed and parametric")
        return Signature(tuple(mine.values()), parametric)


EMPTY_SIGNATURE = Signature()


@dataclass(frozen=True)
class Violation:
    """One failed well-formedness clause, naming the offending element."""

    clause: str
    subject: str
    detail: str = ""

    def __str__(self):
        msg = f"[{self.clause}] {self.subject}"
        return f"{msg}: {self.detail}" if self.detail else msg


class Bigraph:
    """An immutable local directed bigraph from ``inner`` to ``outer``.

    Construction is permissive: structurally broken values can be built so
    that :func:`validate` can report on them.  All well-formed construction
    should go through :class:`BigraphBuilder` or the algebra operations.
    """

    __slots__ = (
        "signature", "inner", "outer", "nodes", "edges",
        "site_parent", "node_parent", "link", "node_attrs", "_region_cache",
    )

    def __init__(self, signature: Signature, inner: LocalInterface,
                 outer: LocalInterface, nodes: dict[int, Control],
                 edges, site_parent: dict[int, Place],
                 node_parent: dict[int, Place], link: dict[Point, Link],
                 node_attrs: dict[int, dict] | None = None):
        self.signature = signature
        self.inner = inner
        self.outer = outer
        self.nodes = dict(nodes)
        self.edges = frozenset(edges)
        self.site_parent = dict(site_parent)
        self.node_parent = dict(node_parent)
        self.link = dict(link)
        self.node_attrs = {v: dict(a) for v, a in (node_attrs or {}).items() if a}
        self._region_cache = None

    def __eq__(self, other):
        if not isinstance(other, Bigraph):
            return NotImplemented
        return (self.signature == other.signature
                and self.inner == other.inner and self.outer == other.outer
                and self.nodes == other.nodes and self.edges == other.edges
                and self.site_parent == other.site_parent
                and self.node_parent == other.node_parent
                and self.link == other.link
                and self.node_attrs == other.node_attrs)

    __hash__ = None

    def __repr__(self):
        return (f"<Bigraph {self.inner.pretty()} -> {self.outer.pretty()} "
                f"nodes={len(self.nodes)} edges={len(self.edges)}>")

    # -- derived structure -------------------------------------------------

    def attrs(self, node: int) -> dict:
        return self.node_attrs.get(node, {})

    def children(self, place: Place) -> list[int]:
        return sorted(v for v, p in self.node_parent.items() if p == place)

    def sites_under(self, place: Place) -> list[int]:
        return sorted(s for s, p in self.site_parent.items() if p == place)

    def _regions(self) -> dict[int, int | None]:
        """Root index reached from each node by iterating the parent map.

        ``None`` marks nodes on a parent cycle or with a dangling parent;
        those are reported by validate and skipped by locality checks.
        """
        if self._region_cache is None:
            cache: dict[int, int | None] = {}

            def resolve(v: int) -> int | None:
                seen = []
                cur: Place = v
                while isinstance(cur, int):
                    if cur in cache:
                        root = cache[cur]
                        break
                    if cur in seen or cur not in self.node_parent:
                        root = None
                        break
                    seen.append(cur)
                    cur = self.node_parent[cur]
                else:
                    root = cur.index
                for u in seen:
                    cache[u] = root
                return root

            for v in self.nodes:
                resolve(v)
            self._region_cache = cache
        return self._region_cache

    def node_region(self, node: int) -> int | None:
        return self._regions().get(node)

    def site_region(self, site: int) -> int | None:
        parent = self.site_parent.get(site)
        if isinstance(parent, Root):
            return parent.index
        if isinstance(parent, int):
            return self._regions().get(parent)
        return None

    def region_of(self, x: Point | Link) -> int | None:
        """The root region a point or link belongs to; 0 for global names,
        None for edges (region-free) and unresolvable elements."""
        if isinstance(x, Edge):
            return None
        if isinstance(x, Port):
            return self.node_region(x.node)
        if isinstance(x, InnerName):
            return 0 if x.locality == 0 else self.site_region(x.locality)
        if isinstance(x, OuterName):
            return x.locality
        raise TypeError(f"not a point or link: {x!r}")

    def points(self) -> set[Point]:
        """Every point the link map must cover."""
        pts: set[Point] = set()
        for i in range(len(self.inner.localities)):
            pts.update(InnerName(i, t) for t in self.inner.plus(i))
        for i in range(len(self.outer.localities)):
            pts.update(OuterName(i, t) for t in self.outer.minus(i))
        for v, ctrl in self.nodes.items():
            pts.update(Port(v, k) for k in range(ctrl.plus))
        return pts

    def is_link(self, x) -> bool:
        """Whether ``x`` denotes an existing link target of this bigraph."""
        if isinstance(x, Edge):
            return x.ident in self.edges
        if isinstance(x, Port):
            ctrl = self.nodes.get(x.node)
            return ctrl is not None and 0 <= x.index < ctrl.minus
        if isinstance(x, InnerName):
            return (0 <= x.locality <= self.inner.width
                    and x.text in self.inner.minus(x.locality))
        if isinstance(x, OuterName):
            return (0 <= x.locality <= self.outer.width
                    and x.text in self.outer.plus(x.locality))
        return False


def validate(b: Bigraph) -> list[Violation]:
    """Check every well-formedness clause; an empty list means ok."""
    out: list[Violation] = []

    if set(b.nodes) & {e for e in b.edges}:
        shared = sorted(set(b.nodes) & set(b.edges))
        out.append(Violation("support", f"ids {shared}",
                             "node and edge identifiers overlap"))

    for v, ctrl in sorted(b.nodes.items()):
        if not b.signature.admits(ctrl):
            out.append(Violation("control", f"node {v}",
                                 f"control {ctrl.name}:({ctrl.plus}+,{ctrl.minus}-) "
                                 "not in signature"))

    # parent map: totality and range
    sites = set(range(1, b.inner.width + 1))
    roots = set(range(1, b.outer.width + 1))

    def check_parent(kind, key, parent):
        if parent is None:
            out.append(Violation("parent", f"{kind} {key}", "no parent"))
        elif isinstance(parent, Root):
            if parent.index not in roots:
                out.append(Violation("parent", f"{kind} {key}",
                                     f"unknown root {parent.index}"))
        elif isinstance(parent, int):
            if parent not in b.nodes:
                out.append(Violation("parent", f"{kind} {key}",
                                     f"unknown node {parent}"))
        else:
            out.append(Violation("parent", f"{kind} {key}",
                                 f"bad parent {parent!r}"))

    for s in sorted(sites):
        check_parent("site", s, b.site_parent.get(s))
    for s in sorted(set(b.site_parent) - sites):
        out.append(Violation("parent", f"site {s}", "not a site of the inner interface"))
    for v in sorted(b.nodes):
        check_parent("node", v, b.node_parent.get(v))
    for v in sorted(set(b.node_parent) - set(b.nodes)):
        out.append(Violation("parent", f"node {v}", "not a node of this bigraph"))

    for v in sorted(b.nodes):
        if v in b.node_parent and b.node_region(v) is None:
            out.append(Violation("forest", f"node {v}",
                                 "never reaches a root (cycle or dangling parent)"))

    # link map: totality, targets, locality
    points = b.points()
    for p in sorted(points - set(b.link), key=str):
        out.append(Violation("link-total", str(p), "point has no link"))
    for p in sorted(set(b.link) - points, key=str):
        out.append(Violation("link-domain", str(p), "not a point of this bigraph"))

    for p in sorted(set(b.link) & points, key=str):
        target = b.link[p]
        if not b.is_link(target):
            out.append(Violation("link-target", str(p),
                                 f"target {target} is not a link of this bigraph"))
            continue
        if isinstance(target, Edge):
            continue
        lp, lt = b.region_of(p), b.region_of(target)
        if lp is None or lt is None:
            continue  # unresolvable region already reported via forest/parent
        # a link is reachable from its own region or, when global, from all;
        # a global point crossing into one region would break composition
        if lt != 0 and lp != lt:
            out.append(Violation("link-locality", str(p),
                                 f"point in region {lp} targets {target} in region {lt}"))

    # pass-through names must have exactly one point
    preimage: dict[Link, int] = {}
    for p in points:
        t = b.link.get(p)
        if t is not None:
            preimage[t] = preimage.get(t, 0) + 1
    for i in range(len(b.inner.localities)):
        hit = {b.link[InnerName(i, t)] for t in b.inner.plus(i)
               if InnerName(i, t) in b.link}
        for x in sorted(hit, key=str):
            if (isinstance(x, InnerName) and x.locality == i
                    and x.text in b.inner.minus(i) and preimage.get(x, 0) != 1):
                out.append(Violation("passthrough", str(x),
                                     f"{preimage.get(x, 0)} points target a "
                                     "pass-through inner name"))
    for i in range(len(b.outer.localities)):
        hit = {b.link[OuterName(i, t)] for t in b.outer.minus(i)
               if OuterName(i, t) in b.link}
        for y in sorted(hit, key=str):
            if (isinstance(y, OuterName) and y.locality == i
                    and y.text in b.outer.plus(i) and preimage.get(y, 0) != 1):
                out.append(Violation("passthrough", str(y),
                                     f"{preimage.get(y, 0)} points target a "
                                     "pass-through outer name"))
    return out


class BigraphBuilder:
    """Mutable helper that accumulates one bigraph; not thread-safe."""

    def __init__(self, signature: Signature,
                 inner: LocalInterface = EMPTY_INTERFACE,
                 outer: LocalInterface = EMPTY_INTERFACE):
        self.signature = signature
        self.inner = inner
        self.outer = outer
        self._nodes: dict[int, Control] = {}
        self._edges: set[int] = set()
        self._site_parent: dict[int, Place] = {}
        self._node_parent: dict[int, Place] = {}
        self._link: dict[Point, Link] = {}
        self._attrs: dict[int, dict] = {}
        self._next_id = 0

    def _fresh(self) -> int:
        self._next_id += 1
        return self._next_id

    def node(self, control: str | Control, parent: Place,
             plus: int | None = None, minus: int | None = None,
             **attrs) -> int:
        """Add a node; parametric controls take their arity from plus/minus."""
        if isinstance(control, Control):
            ctrl = control
        else:
            found = self.signature.lookup(control)
            if found is not None:
                ctrl = found
            else:
                ctrl = Control(control, plus or 0, minus or 0)
        v = self._fresh()
        self._nodes[v] = ctrl
        self._node_parent[v] = parent
        if attrs:
            self._attrs[v] = dict(attrs)
        return v

    def edge(self) -> Edge:
        e = self._fresh()
        self._edges.add(e)
        return Edge(e)

    def site(self, index: int, parent: Place):
        self._site_parent[index] = parent

    def connect(self, point: Point, link: Link):
        self._link[point] = link

    def set_attrs(self, node: int, **attrs):
        self._attrs.setdefault(node, {}).update(attrs)

    def build(self) -> Bigraph:
        return Bigraph(self.signature, self.inner, self.outer, self._nodes,
                       self._edges, self._site_parent, self._node_parent,
                       self._link, self._attrs)
