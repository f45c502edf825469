"""Static checks over assembled container bigraphs.

Two checks: link reachability (every linked pair of containers shares a
network) and security-level safety (no directed read/write channel from a
higher network to a lower one, through any chain of containers, networks and
volumes).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .bigraph import Bigraph, Port
from .containers import CONTAINER, NETWORK, VOLUME
from .errors import CyclicOrder, NotAComposite, UnknownNetwork

__all__ = [
    "FlowNode", "FlowGraph", "SecurityOrder", "Violation",
    "check_links", "build_flow_graph", "transitive_closure", "find_leaks",
    "check_security", "parse_order_file",
]


class FlowNode(NamedTuple):
    kind: str  # "container" | "network" | "volume"
    name: str

    def __str__(self):
        return f"{self.kind}:{self.name}"


@dataclass(frozen=True)
class FlowGraph:
    """Bipartite read/write graph: arcs join containers and resources."""

    nodes: frozenset[FlowNode]
    arcs: frozenset[tuple[FlowNode, FlowNode]]

    def successors(self, node: FlowNode) -> list[FlowNode]:
        # deterministic expansion: containers first, then by name
        out = [dst for src, dst in self.arcs if src == node]
        return sorted(out, key=lambda n: (n.kind != "container", n.kind, n.name))

    def network(self, name: str) -> FlowNode | None:
        node = FlowNode("network", name)
        return node if node in self.nodes else None


@dataclass(frozen=True)
class SecurityOrder:
    """Strict ordering assertions ``high > low`` over network names."""

    pairs: frozenset[tuple[str, str]]

    @classmethod
    def of(cls, *pairs) -> "SecurityOrder":
        return cls(frozenset((h, l) for h, l in pairs))

    def networks(self) -> set[str]:
        return {n for pair in self.pairs for n in pair}


@dataclass(frozen=True)
class Violation:
    """A finding: an unreachable link target or a security leak."""

    kind: str  # "linksUnreachable" | "securityLeak"
    subject: tuple[str, str]
    path: tuple[FlowNode, ...] = ()

    @property
    def message(self) -> str:
        a, b = self.subject
        if self.kind == "linksUnreachable":
            return (f"service {a!r} links {b!r} but they share no network")
        trail = " -> ".join(str(n) for n in self.path)
        return f"possible leak from {a!r} to {b!r} via {trail}"

    def payload(self) -> dict:
        out = {"kind": self.kind, "subject": list(self.subject)}
        if self.path:
            out["path"] = [{"kind": n.kind, "name": n.name} for n in self.path]
        return out


def _containers(b: Bigraph) -> dict[int, str]:
    found = {v: b.attrs(v).get("name", f"container_{v}")
             for v, ctrl in b.nodes.items() if ctrl.name == CONTAINER}
    if not found:
        raise NotAComposite("the bigraph contains no container nodes")
    return found


def _container_of(b: Bigraph, node: int, containers) -> int | None:
    """Nearest container ancestor of a node, if any."""
    cur = b.node_parent.get(node)
    while isinstance(cur, int):
        if cur in containers:
            return cur
        cur = b.node_parent.get(cur)
    return None


def _resource_links(b: Bigraph, container: int, control: str, containers):
    """Link targets of the given resource control's source ports inside one
    container."""
    out = set()
    for v, ctrl in b.nodes.items():
        if ctrl.name == control and _container_of(b, v, containers) == container:
            target = b.link.get(Port(v, 0))
            if target is not None:
                out.add(target)
    return out


def check_links(b: Bigraph) -> list[Violation]:
    """Report linked container pairs that share no network."""
    containers = _containers(b)
    handles = {Port(c, 0): c for c in containers}

    pairs = set()
    for point, target in b.link.items():
        if target in handles and isinstance(point, Port):
            src = _container_of(b, point.node, containers)
            dst = handles[target]
            if src is not None and src != dst:
                pairs.add((src, dst))

    violations = []
    for src, dst in pairs:
        shared = (_resource_links(b, src, NETWORK, containers)
                  & _resource_links(b, dst, NETWORK, containers))
        if not shared:
            violations.append(Violation("linksUnreachable",
                                        (containers[src], containers[dst])))
    return sorted(violations, key=lambda v: v.subject)


def build_flow_graph(b: Bigraph) -> FlowGraph:
    """One node per container, network and volume; read arcs point into the
    container, write arcs out of it.  Networks are read-write; volume writes
    are dropped for read-only mounts."""
    containers = _containers(b)
    nodes: set[FlowNode] = {FlowNode("container", n) for n in containers.values()}
    arcs: set[tuple[FlowNode, FlowNode]] = set()

    for v, ctrl in b.nodes.items():
        if ctrl.name not in (NETWORK, VOLUME):
            continue
        owner = _container_of(b, v, containers)
        if owner is None:
            continue
        c_node = FlowNode("container", containers[owner])
        kind = "network" if ctrl.name == NETWORK else "volume"
        r_node = FlowNode(kind, b.attrs(v).get("name", f"{kind}_{v}"))
        nodes.add(r_node)
        arcs.add((r_node, c_node))
        if kind == "network" or not b.attrs(v).get("read_only", False):
            arcs.add((c_node, r_node))
    return FlowGraph(frozenset(nodes), frozenset(arcs))


def transitive_closure(order: SecurityOrder) -> SecurityOrder:
    """Close the assertions under transitivity; a reflexive pair is an error."""
    closed = set(order.pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c, d in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    for n, m in closed:
        if n == m:
            raise CyclicOrder(f"network {n!r} is above itself in the closure")
    return SecurityOrder(frozenset(closed))


def _bfs_path(flow: FlowGraph, start: FlowNode, goal: FlowNode):
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            path = []
            while node is not None:
                path.append(node)
                node = parent[node]
            return tuple(reversed(path))
        for nxt in flow.successors(node):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return None


def find_leaks(flow: FlowGraph, order: SecurityOrder) -> list[Violation]:
    """Order-violating directed paths between network nodes of a flow graph."""
    closed = transitive_closure(order)
    missing = sorted(n for n in closed.networks() if flow.network(n) is None)
    if missing:
        raise UnknownNetwork(f"networks not present in the model: {missing}")
    violations = []
    for high, low in sorted(closed.pairs):
        path = _bfs_path(flow, FlowNode("network", high), FlowNode("network", low))
        if path is not None:
            violations.append(Violation("securityLeak", (high, low), path))
    return violations


def check_security(b: Bigraph, order: SecurityOrder) -> list[Violation]:
    """Build the flow graph of ``b`` and report order-violating channels."""
    return find_leaks(build_flow_graph(b), order)


def parse_order_file(text: str) -> SecurityOrder:
    """One assertion per line: ``HIGH > LOW``; '#' comments and blank lines
    are ignored."""
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(">")]
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"order file line {lineno}: expected "
                             f"\"HIGH > LOW\", got {raw.strip()!r}")
        pairs.add((parts[0], parts[1]))
    return SecurityOrder(frozenset(pairs))
