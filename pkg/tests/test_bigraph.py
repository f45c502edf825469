import random

from ldbig import (
    Bigraph, BigraphBuilder, Control, Edge, InnerName, LocalInterface,
    OuterName, Port, Root, Signature, identity, validate,
)
from genrandom import gen_chain


SIG = Signature(fixed=(Control("A", 1, 1), Control("B", 2, 0)))


def clauses(b):
    return {v.clause for v in validate(b)}


def test_identity_is_well_formed():
    i = LocalInterface.of((set(), set()), ({"a"}, {"b"}))
    ident = identity(i)
    assert validate(ident) == []
    assert ident.site_parent == {1: Root(1)}
    assert ident.link[InnerName(1, "a")] == OuterName(1, "a")
    assert ident.link[OuterName(1, "b")] == InnerName(1, "b")


def test_parent_cycle_is_a_forest_violation():
    b = Bigraph(SIG, LocalInterface.of(), LocalInterface.of((set(), set()), (set(), set())),
                nodes={1: Control("A", 1, 1), 2: Control("A", 1, 1)},
                edges=set(), site_parent={},
                node_parent={1: 2, 2: 1},
                link={Port(1, 0): Port(2, 0), Port(2, 0): Port(1, 0)})
    assert "forest" in clauses(b)


def test_cross_region_port_link_is_a_locality_violation():
    # node under root 1 pointing at a localized name of root 2
    outer = LocalInterface.of((set(), set()), (set(), set()), ({"x"}, set()))
    b = Bigraph(SIG, LocalInterface.of(), outer,
                nodes={1: Control("A", 1, 0)}, edges=set(), site_parent={},
                node_parent={1: Root(1)},
                link={Port(1, 0): OuterName(2, "x")})
    assert b.region_of(Port(1, 0)) == 1
    assert b.region_of(OuterName(2, "x")) == 2
    assert "link-locality" in clauses(b)


def test_edges_and_globals_cross_regions_freely():
    outer = LocalInterface.of(({"g"}, set()), (set(), set()), (set(), set()))
    b = BigraphBuilder(SIG, outer=outer)
    v = b.node("A", parent=Root(1))
    w = b.node("B", parent=Root(2))
    e = b.edge()
    b.connect(Port(v, 0), e)
    b.connect(Port(w, 0), e)
    b.connect(Port(w, 1), OuterName(0, "g"))
    assert validate(b.build()) == []


def test_missing_point_is_reported():
    inner = LocalInterface.of((set(), set()), ({"a"}, set()))
    outer = LocalInterface.of((set(), set()), (set(), set()))
    b = Bigraph(SIG, inner, outer, nodes={}, edges=set(),
                site_parent={1: Root(1)}, node_parent={}, link={})
    assert "link-total" in clauses(b)


def test_unknown_target_is_reported():
    outer = LocalInterface.of((set(), set()), (set(), set()))
    b = Bigraph(SIG, LocalInterface.of(), outer,
                nodes={1: Control("A", 1, 0)}, edges=set(), site_parent={},
                node_parent={1: Root(1)}, link={Port(1, 0): Edge(99)})
    assert "link-target" in clauses(b)


def test_passthrough_needs_exactly_one_point():
    inner = LocalInterface.of((set(), set()), ({"a"}, {"b"}))
    outer = LocalInterface.of((set(), set()), (set(), set()))

    def build(extra_point: bool) -> Bigraph:
        nodes = {1: Control("A", 1, 0)} if extra_point else {}
        link = {InnerName(1, "a"): InnerName(1, "b")}
        node_parent = {}
        if extra_point:
            link[Port(1, 0)] = InnerName(1, "b")
            node_parent = {1: Root(1)}
        return Bigraph(SIG, inner, outer, nodes, set(),
                       {1: Root(1)}, node_parent, link)

    assert validate(build(extra_point=False)) == []
    assert "passthrough" in clauses(build(extra_point=True))


def test_control_must_be_admitted():
    outer = LocalInterface.of((set(), set()), (set(), set()))
    b = Bigraph(SIG, LocalInterface.of(), outer,
                nodes={1: Control("Z", 0, 0)}, edges=set(), site_parent={},
                node_parent={1: Root(1)}, link={})
    assert "control" in clauses(b)


def test_overlapping_node_and_edge_ids():
    outer = LocalInterface.of((set(), set()), (set(), set()))
    b = Bigraph(SIG, LocalInterface.of(), outer,
                nodes={1: Control("A", 0, 0)}, edges={1}, site_parent={},
                node_parent={1: Root(1)}, link={})
    assert "support" in clauses(b)


def test_builder_attrs_and_parametric_arities():
    sig = Signature(fixed=(Control("box", 0, 1),),
                    parametric=frozenset({"proc"}))
    outer = LocalInterface.of((set(), set()), (set(), {"c"}))
    b = BigraphBuilder(sig, outer=outer)
    v = b.node("box", parent=Root(1), name="it")
    p = b.node("proc", parent=v, plus=2, minus=1)
    e = b.edge()
    b.connect(Port(p, 0), e)
    b.connect(Port(p, 1), Port(v, 0))
    b.connect(OuterName(1, "c"), Port(p, 0))
    built = b.build()
    assert validate(built) == []
    assert built.attrs(v) == {"name": "it"}
    assert built.nodes[p] == Control("proc", 2, 1)


def test_random_bigraphs_validate():
    rng = random.Random(7)
    for _ in range(60):
        for b in gen_chain(rng, length=2, max_nodes=6):
            assert validate(b) == [], validate(b)
