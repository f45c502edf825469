"""Container bigraphs: the container signature and a builder that turns a
declarative container description into a well-formed bigraph.

A built container is one root holding one ``container`` node, with process,
network, volume and request nodes nested inside it, plus an optional site.
Offered service names route to the outer interface when exposed, otherwise
(with a site) to the inner interface; consumed names resolve to sibling
resource nodes, sibling offers, site imports, or fresh outer names.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .bigraph import (
    Bigraph, BigraphBuilder, Control, InnerName, OuterName, Port, Root,
    Signature,
)
from .errors import ArityOverflow, UnresolvedName
from .interfaces import LocalInterface, EMPTY_INTERFACE

__all__ = [
    "CONTAINER", "PROCESS", "REQUEST", "NETWORK", "VOLUME",
    "default_signature", "ProcessSpec", "VolumeMount", "ContainerSpec",
    "build_container", "container_spec_from_json", "census",
]

CONTAINER = "container"
PROCESS = "process"
REQUEST = "request"
NETWORK = "network"
VOLUME = "volume"


def default_signature() -> Signature:
    """The fixed container signature; process arities are per-node."""
    return Signature(
        fixed=(
            Control(CONTAINER, 0, 1),
            Control(REQUEST, 1, 1),
            Control(NETWORK, 1, 1),
            Control(VOLUME, 1, 1),
        ),
        parametric=frozenset({PROCESS}),
    )


@dataclass(frozen=True)
class ProcessSpec:
    """One process: ``offers`` name its target ports, ``consumes`` say what
    each source port points at.  Explicit arities may exceed the lists; the
    spare source ports are closed with fresh edges."""

    offers: tuple[str, ...] = ()
    consumes: tuple[str, ...] = ()
    plus: int | None = None
    minus: int | None = None

    def arity(self) -> tuple[int, int]:
        plus = len(self.consumes) if self.plus is None else self.plus
        minus = len(self.offers) if self.minus is None else self.minus
        if len(self.consumes) > plus:
            raise ArityOverflow(
                f"process consumes {len(self.consumes)} names but has only "
                f"{plus} source ports")
        if len(self.offers) > minus:
            raise ArityOverflow(
                f"process offers {len(self.offers)} names but has only "
                f"{minus} target ports")
        return plus, minus


@dataclass(frozen=True)
class VolumeMount:
    name: str
    host_path: str = ""
    read_only: bool = False


@dataclass(frozen=True)
class ContainerSpec:
    """Declarative description of one container bigraph."""

    name: str
    processes: tuple[ProcessSpec, ...] = ()
    networks: tuple[str, ...] = ()
    volumes: tuple[VolumeMount, ...] = ()
    requests: tuple[str, ...] = ()
    exposed_ports: tuple[str, ...] = ()
    has_site: bool = False
    site_imports: tuple[str, ...] = ()
    feedthroughs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "processes", tuple(self.processes))
        object.__setattr__(self, "networks", tuple(self.networks))
        object.__setattr__(self, "volumes", tuple(self.volumes))
        object.__setattr__(self, "requests", tuple(self.requests))
        object.__setattr__(self, "exposed_ports", tuple(self.exposed_ports))
        object.__setattr__(self, "site_imports", tuple(self.site_imports))
        object.__setattr__(self, "feedthroughs",
                           tuple((a, b) for a, b in self.feedthroughs))


def build_container(spec: ContainerSpec,
                    signature: Signature | None = None) -> Bigraph:
    """Build the container bigraph for ``spec``.

    Raises UnresolvedName when an entry references nothing buildable and
    ArityOverflow when a process wires more names than it has ports.
    """
    signature = signature or default_signature()
    if not spec.has_site and (spec.site_imports or spec.feedthroughs):
        raise UnresolvedName(
            f"{spec.name}: site imports and feedthroughs require has_site")

    # name tables -----------------------------------------------------------
    offers: dict[str, tuple[int, int]] = {}  # name -> (process slot, port)
    for p_idx, proc in enumerate(spec.processes):
        proc.arity()  # arity sanity up front
        for k, name in enumerate(proc.offers):
            if name in offers:
                raise UnresolvedName(
                    f"{spec.name}: handle {name!r} offered twice")
            offers[name] = (p_idx, k)
    for port in spec.exposed_ports:
        if port not in offers:
            raise UnresolvedName(
                f"{spec.name}: exposed port {port!r} is offered by no process")

    exposed = set(spec.exposed_ports)
    services = [n for proc in spec.processes for n in proc.offers
                if n not in exposed]
    imports = set(spec.site_imports)
    net_names = list(spec.networks)
    vol_names = [v.name for v in spec.volumes]

    # every feedthrough in-name is one point and cannot double as a service
    fins = [i for i, _ in spec.feedthroughs]
    fin_clashes = (set(fins) & set(services)) \
        | {n for n in fins if fins.count(n) > 1}
    if fin_clashes:
        raise UnresolvedName(
            f"{spec.name}: feedthrough names clash: {sorted(fin_clashes)}")

    consumed = [n for proc in spec.processes for n in proc.consumes]
    consumed += list(spec.requests)
    # names resolved by nothing inside become demanded outer names
    siblings = set(net_names) | set(vol_names) | set(offers) | imports
    link_outs = {n for n in consumed if n not in siblings}

    outer_plus = set(net_names) | set(vol_names) | set(link_outs)
    outer_plus |= {out for _, out in spec.feedthroughs}
    outer_minus = exposed | {spec.name}
    try:
        outer = LocalInterface.of((frozenset(), frozenset()),
                                  (outer_plus, outer_minus))
        if spec.has_site:
            inner_plus = set(services) | {i for i, _ in spec.feedthroughs}
            inner = LocalInterface.of((frozenset(), frozenset()),
                                      (inner_plus, imports))
        else:
            inner = EMPTY_INTERFACE
    except ValueError as exc:
        raise UnresolvedName(f"{spec.name}: {exc}") from exc

    # build -----------------------------------------------------------------
    b = BigraphBuilder(signature, inner=inner, outer=outer)
    root = Root(1)
    box = b.node(CONTAINER, parent=root, name=spec.name)
    b.connect(OuterName(1, spec.name), Port(box, 0))

    nets: dict[str, int] = {}
    for name in net_names:
        v = b.node(NETWORK, parent=box, name=name)
        b.connect(Port(v, 0), OuterName(1, name))
        nets[name] = v
    vols: dict[str, int] = {}
    for mount in spec.volumes:
        v = b.node(VOLUME, parent=box, name=mount.name,
                   read_only=mount.read_only, host_path=mount.host_path)
        b.connect(Port(v, 0), OuterName(1, mount.name))
        vols[mount.name] = v

    procs: dict[int, int] = {}
    for p_idx, proc in enumerate(spec.processes):
        plus, minus = proc.arity()
        procs[p_idx] = b.node(PROCESS, parent=box, plus=plus, minus=minus)

    def consumed_target(name: str):
        if name in nets:
            return Port(nets[name], 0)
        if name in vols:
            return Port(vols[name], 0)
        if name in offers:
            p_idx, k = offers[name]
            return Port(procs[p_idx], k)
        if name in imports:
            return InnerName(1, name)
        return OuterName(1, name)

    for p_idx, proc in enumerate(spec.processes):
        plus, _ = proc.arity()
        for k, name in enumerate(proc.consumes):
            b.connect(Port(procs[p_idx], k), consumed_target(name))
        for k in range(len(proc.consumes), plus):
            b.connect(Port(procs[p_idx], k), b.edge())

    for name in spec.requests:
        v = b.node(REQUEST, parent=box, consumes=name)
        b.connect(Port(v, 0), consumed_target(name))

    for port in exposed:
        p_idx, k = offers[port]
        b.connect(OuterName(1, port), Port(procs[p_idx], k))
    if spec.has_site:
        b.site(1, parent=box)
        for name in services:
            p_idx, k = offers[name]
            b.connect(InnerName(1, name), Port(procs[p_idx], k))
        for in_name, out_name in spec.feedthroughs:
            b.connect(InnerName(1, in_name), OuterName(1, out_name))

    return b.build()


def container_spec_from_json(data: dict) -> ContainerSpec:
    """Load a ContainerSpec from its JSON document form."""
    procs = tuple(
        ProcessSpec(offers=tuple(p.get("offers", ())),
                    consumes=tuple(p.get("consumes", ())),
                    plus=p.get("plus"), minus=p.get("minus"))
        for p in data.get("processes", ()))
    vols = tuple(
        VolumeMount(name=v["name"], host_path=v.get("host_path", ""),
                    read_only=bool(v.get("read_only", False)))
        for v in data.get("volumes", ()))
    return ContainerSpec(
        name=data["name"],
        processes=procs,
        networks=tuple(data.get("networks", ())),
        volumes=vols,
        requests=tuple(data.get("requests", ())),
        exposed_ports=tuple(data.get("exposed_ports", ())),
        has_site=bool(data.get("has_site", False)),
        site_imports=tuple(data.get("site_imports", ())),
        feedthroughs=tuple((a, b) for a, b in data.get("feedthroughs", ())),
    )


def census(b: Bigraph) -> Counter:
    """Node counts per control name."""
    return Counter(ctrl.name for ctrl in b.nodes.values())
