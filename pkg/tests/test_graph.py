import random
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folksonomy.aggregate import resolve_conflicts
from folksonomy.errors import ConfigError, UnknownTermError
from folksonomy.graph import (ConceptGraph, PruneConfig, degree_ratio, exact_ratio, export_graph,
                              extract_subgraph, prune_concepts, rank_concepts, read_graphml,
                              read_tsv)


def star(n, hub="hub"):
    return ConceptGraph((hub, f"leaf{i:03d}") for i in range(n))


def test_ratio_examples():
    g = star(438)
    assert degree_ratio("hub", g, PruneConfig(0.01)) == 43801.0
    lone = ConceptGraph(nodes=["z"])
    for eps in (0.01, 0.5, 3.0):
        assert degree_ratio("z", lone, PruneConfig(eps)) == 1.0
    g = ConceptGraph([(f"p{i}", "m") for i in range(10)] + [("m", f"c{i}") for i in range(10)])
    assert degree_ratio("m", g) == 1.0


def test_ratio_unknown_concept():
    with pytest.raises(UnknownTermError):
        degree_ratio("nope", star(2))


def test_prune_config_validation():
    with pytest.raises(ConfigError):
        PruneConfig(0)
    with pytest.raises(ConfigError):
        PruneConfig(0.01, -1)


def test_prune_removes_highest_ratio():
    rels = {("a", "b"), ("a", "c"), ("a", "d"), ("x", "y")}
    # hand-computed: a=(3+e)/e=301, x=(1+e)/e=101, b=c=d=y=e/(1+e)=1/101
    ranked = dict(rank_concepts(ConceptGraph(rels)))
    assert ranked["a"] == 301 and ranked["x"] == 101 and ranked["b"] == Fraction(1, 101)
    g = prune_concepts(rels, PruneConfig(0.01, 1))
    assert "a" not in g
    assert g.edges == {("x", "y")}
    assert g.nodes == {"b", "c", "d", "x", "y"}


def test_prune_identity_and_empty():
    rels = {("a", "b"), ("b", "c")}
    assert prune_concepts(rels, PruneConfig(top_k=0)) == ConceptGraph(rels)
    assert len(prune_concepts(set(), PruneConfig(top_k=5))) == 0


def test_prune_accepts_relation_set():
    rs = resolve_conflicts({("a", "b"): 3, ("a", "c"): 2}, "soft")
    assert prune_concepts(rs, PruneConfig(top_k=1)).edges == frozenset()


def test_tie_break_is_lexicographic():
    g = ConceptGraph([("b", "x"), ("a", "y")])
    assert [t for t, _ in rank_concepts(g)][:2] == ["a", "b"]
    assert prune_concepts(g, PruneConfig(top_k=1)).nodes == {"b", "x", "y"}


edge_lists = st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)).filter(
    lambda e: e[0] != e[1]).map(lambda e: (f"n{e[0]}", f"n{e[1]}")), max_size=60)


@settings(max_examples=100)
@given(edge_lists, st.integers(0, 20), st.sampled_from([0.01, 0.1, 1.0]))
def test_prune_properties(edges, k, eps):
    g0 = ConceptGraph(edges)
    cfg = PruneConfig(eps, k)
    g = prune_concepts(edges, cfg)
    removed = g0.nodes - g.nodes
    assert len(removed) == min(k, len(g0))
    if removed and g.nodes:
        assert min(exact_ratio(n, g0, cfg) for n in removed) >= max(
            exact_ratio(n, g0, cfg) for n in g.nodes)
    assert g.edges == {(a, b) for a, b in g0.edges if a not in removed and b not in removed}
    for n in g.nodes:
        assert g.dout(n) == sum(1 for a, _ in g.edges if a == n)
        assert g.din(n) == sum(1 for _, b in g.edges if b == n)


def chain():
    return ConceptGraph([("animal", "bird"), ("bird", "robin")])


def test_extract_chain():
    v = extract_subgraph(chain(), "bird")
    assert v.parents == {"animal"}
    assert v.children == {"robin"}
    assert v.descendants == set()
    assert v.roles == {"bird": "focus", "animal": "parent", "robin": "child"}
    assert v.edges == {("animal", "bird"), ("bird", "robin")}


def test_extract_cycle_terminates():
    seen = []
    v = extract_subgraph(ConceptGraph([("a", "b"), ("b", "a")]), "a", on_visit=seen.append)
    assert v.children == {"b"}
    assert seen == ["a", "b"]
    assert v.roles["a"] == "focus"


def test_extract_unknown_focus():
    with pytest.raises(UnknownTermError) as e:
        extract_subgraph(chain(), "zzz")
    assert e.value.suggestions


def test_extract_descendants_and_depth():
    g = ConceptGraph([("countri", "franc"), ("franc", "pari"), ("pari", "louvr"),
                      ("travel", "countri"), ("franc", "sport")])
    v = extract_subgraph(g, "countri")
    assert v.descendants == {"pari", "louvr", "sport"}
    assert v.roles["pari"] == "descendant" and v.roles["travel"] == "parent"
    v2 = extract_subgraph(g, "countri", max_depth=2)
    assert v2.descendants == {"pari", "sport"}
    assert extract_subgraph(g, "countri", max_depth=1).descendants == set()
    with pytest.raises(ConfigError):
        extract_subgraph(g, "countri", max_depth=0)


def test_extract_parents_not_expanded():
    g = ConceptGraph([("p", "f"), ("p", "sibling"), ("f", "c")])
    v = extract_subgraph(g, "f")
    assert "sibling" not in v.roles


@settings(max_examples=100)
@given(edge_lists, st.integers(0, 15))
def test_extract_properties(edges, i):
    g = ConceptGraph(edges + [("n0", "n1")])
    focus = sorted(g.nodes)[i % len(g)]
    seen = []
    v = extract_subgraph(g, focus, on_visit=seen.append)
    assert len(seen) == len(set(seen))
    assert v.nodes <= g.nodes
    assert v.parents == g.predecessors(focus)
    assert v.children == g.successors(focus) - {focus}
    assert v.roles[focus] == "focus"
    for a, b in v.edges:
        assert (a, b) in g.edges and a in v.roles and b in v.roles


def test_dot_colors():
    dot = export_graph(extract_subgraph(chain(), "bird"), "dot")
    assert dot.startswith("digraph folksonomy {\n  node [style=filled];")
    assert "bird [fillcolor=yellow]" in dot
    assert "animal [fillcolor=pink]" in dot
    assert "robin [fillcolor=green]" in dot
    g = ConceptGraph([("a", "b"), ("b", "c")])
    assert "c [fillcolor=blue]" in export_graph(extract_subgraph(g, "a"), "dot")


def test_dot_quoting():
    dot = export_graph(ConceptGraph([("south africa", "cape town"), ("graph", "2005")]), "dot")
    assert '"south africa" -> "cape town";' in dot
    assert '"graph" -> 2005;' in dot


def test_empty_exports():
    empty = ConceptGraph()
    assert export_graph(empty, "dot") == "digraph folksonomy {\n  node [style=filled];\n}\n"
    assert export_graph(empty, "tsv") == ""
    assert read_graphml(export_graph(empty, "graphml")) == empty


def test_export_deterministic():
    rng = random.Random(1)
    edges = [(f"t{rng.randrange(30)}", f"t{rng.randrange(30)}") for _ in range(80)]
    v = extract_subgraph(ConceptGraph(edges), edges[0][0])
    shuffled = edges[:]
    rng.shuffle(shuffled)
    v2 = extract_subgraph(ConceptGraph(shuffled), edges[0][0])
    for fmt in ("dot", "graphml", "tsv"):
        assert export_graph(v, fmt) == export_graph(v, fmt) == export_graph(v2, fmt)


def test_graphml_roles():
    xml = export_graph(extract_subgraph(chain(), "bird"), "graphml")
    root = ET.fromstring(xml)
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    key = root.find("g:key", ns)
    assert key.get("attr.name") == "role" and key.get("for") == "node"
    assert root.find("g:graph", ns).get("edgedefault") == "directed"
    roles = {n.get("id"): n.find("g:data", ns).text for n in root.iter(f"{{{ns['g']}}}node")}
    assert roles == {"animal": "parent", "bird": "focus", "robin": "child"}


def test_graphml_keeps_isolated_nodes():
    g = ConceptGraph([("a", "b")], nodes=["lonely", "Ünïcode & <xml>"])
    assert read_graphml(export_graph(g, "graphml")) == g


def test_unknown_format():
    with pytest.raises(ConfigError):
        export_graph(chain(), "png")


@given(edge_lists)
def test_tsv_roundtrip(edges):
    g = ConceptGraph(edges)
    assert read_tsv(export_graph(g, "tsv")).edges == g.edges
