"""Concept graph: degree-ratio pruning, subgraph extraction, export."""
from __future__ import annotations

import bisect
import re
import xml.etree.ElementTree as ET
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import ConfigError, UnknownTermError

ROLE_COLORS = {"focus": "yellow", "parent": "pink", "child": "green", "descendant": "blue"}


class ConceptGraph:
    """Directed broader->narrower graph over terms. Treat as read-only once built."""

    def __init__(self, edges: Iterable = (), nodes: Iterable = ()):
        succ: dict[str, set] = {}
        pred: dict[str, set] = {}
        for n in nodes:
            succ.setdefault(n, set())
            pred.setdefault(n, set())
        for a, b in edges:
            succ.setdefault(a, set()).add(b)
            succ.setdefault(b, set())
            pred.setdefault(b, set()).add(a)
            pred.setdefault(a, set())
        self._succ = {k: frozenset(v) for k, v in succ.items()}
        self._pred = {k: frozenset(v) for k, v in pred.items()}

    @property
    def nodes(self) -> frozenset:
        return frozenset(self._succ)

    @property
    def edges(self) -> frozenset:
        return frozenset((a, b) for a, bs in self._succ.items() for b in bs)

    def __contains__(self, x):
        return x in self._succ

    def __len__(self):
        return len(self._succ)

    def _check(self, x):
        if x not in self._succ:
            raise UnknownTermError(x, self.nearest_names(x))

    def successors(self, x) -> frozenset:
        self._check(x)
        return self._succ[x]

    def predecessors(self, x) -> frozenset:
        self._check(x)
        return self._pred[x]

    def dout(self, x) -> int:
        return len(self.successors(x))

    def din(self, x) -> int:
        return len(self.predecessors(x))

    def without(self, removed: Iterable) -> "ConceptGraph":
        gone = set(removed)
        return ConceptGraph(
            ((a, b) for a, b in self.edges if a not in gone and b not in gone),
            (n for n in self._succ if n not in gone),
        )

    def nearest_names(self, x, n: int = 5) -> list[str]:
        """Nodes adjacent to ``x`` in lexicographic order, for error messages."""
        names = sorted(self._succ)
        i = bisect.bisect_left(names, x)
        lo = max(0, i - n // 2)
        return names[lo:lo + n]

    def __eq__(self, other):
        return isinstance(other, ConceptGraph) and self._succ == other._succ

    def __repr__(self):
        return f"ConceptGraph({len(self)} nodes, {sum(map(len, self._succ.values()))} edges)"


@dataclass(frozen=True)
class PruneConfig:
    epsilon: float = 0.01
    top_k: int = 200

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if isinstance(self.top_k, bool) or not isinstance(self.top_k, int) or self.top_k < 0:
            raise ConfigError(f"top_k must be a non-negative integer, got {self.top_k!r}")


def _exact(x) -> Fraction:
    # decimal reading of floats, so 0.01 means 1/100
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def exact_ratio(x, g: ConceptGraph, cfg: PruneConfig = PruneConfig()) -> Fraction:
    eps = _exact(cfg.epsilon)
    return (g.dout(x) + eps) / (g.din(x) + eps)


def degree_ratio(x, g: ConceptGraph, cfg: PruneConfig = PruneConfig()) -> float:
    """Smoothed out-degree / in-degree; large values flag overly broad concepts."""
    return float(exact_ratio(x, g, cfg))


def rank_concepts(g: ConceptGraph, cfg: PruneConfig = PruneConfig()) -> list[tuple[str, Fraction]]:
    """All nodes, highest ratio first; ties broken by term text."""
    eps = _exact(cfg.epsilon)
    scored = [(n, (len(g._succ[n]) + eps) / (len(g._pred[n]) + eps)) for n in g._succ]
    scored.sort(key=lambda t: (-t[1], t[0]))
    return scored


def select_pruned(g: ConceptGraph, cfg: PruneConfig = PruneConfig()) -> list[tuple[str, Fraction]]:
    return rank_concepts(g, cfg)[:cfg.top_k]


def prune_concepts(relations, cfg: PruneConfig = PruneConfig()) -> ConceptGraph:
    """Build the graph from retained relations and drop the ``top_k`` highest-ratio nodes.

    Ranking happens once on the unpruned graph; degrees are not recomputed
    between removals.
    """
    g = relations if isinstance(relations, ConceptGraph) else ConceptGraph(relations)
    if cfg.top_k == 0:
        return g
    return g.without(n for n, _ in select_pruned(g, cfg))


@dataclass(frozen=True)
class SubgraphView:
    focus: str
    parents: frozenset
    children: frozenset
    descendants: frozenset
    edges: frozenset
    roles: dict = field(hash=False)

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.roles)


def extract_subgraph(g: ConceptGraph, focus: str, max_depth: int | None = None,
                     on_visit: Callable[[str], None] | None = None) -> SubgraphView:
    """Focus concept, its parents, and everything reachable along out-edges.

    Breadth-first with a visited set, so cycles terminate and each node is
    expanded once. ``max_depth`` bounds the number of out-edge hops (1 keeps
    only direct children). A node that is both parent and child of the focus
    is coloured as a parent.
    """
    if max_depth is not None and max_depth < 1:
        raise ConfigError("max_depth must be a positive integer")
    if focus not in g:
        raise UnknownTermError(focus, g.nearest_names(focus))
    parents = g.predecessors(focus) - {focus}
    children = g.successors(focus) - {focus}

    visited = {focus}
    if on_visit:
        on_visit(focus)
    queue = deque([(focus, 0)])
    while queue:
        node, depth = queue.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for nxt in sorted(g.successors(node)):
            if nxt in visited:
                continue
            visited.add(nxt)
            if on_visit:
                on_visit(nxt)
            queue.append((nxt, depth + 1))

    descendants = frozenset(visited - {focus} - parents - children)
    roles = {n: "descendant" for n in descendants}
    roles.update((n, "child") for n in children)
    roles.update((n, "parent") for n in parents)
    roles[focus] = "focus"
    included = set(roles)
    edges = frozenset((a, b) for a in included for b in g.successors(a) if b in included)
    return SubgraphView(focus, frozenset(parents), frozenset(children), descendants, edges, roles)


# --- serialization -------------------------------------------------------

_DOT_ID = re.compile(r"[A-Za-z_][A-Za-z_0-9]*|-?(\.[0-9]+|[0-9]+(\.[0-9]*)?)")
_DOT_KEYWORDS = {"node", "edge", "graph", "digraph", "subgraph", "strict"}


def _dot_id(s: str) -> str:
    if _DOT_ID.fullmatch(s) and s.lower() not in _DOT_KEYWORDS:
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _parts(obj):
    if isinstance(obj, SubgraphView):
        return sorted(obj.roles), sorted(obj.edges), obj.roles
    return sorted(obj.nodes), sorted(obj.edges), {}


def to_dot(obj) -> str:
    nodes, edges, roles = _parts(obj)
    lines = ["digraph folksonomy {", "  node [style=filled];"]
    for n in nodes:
        if n in roles:
            lines.append(f"  {_dot_id(n)} [fillcolor={ROLE_COLORS[roles[n]]}];")
        else:
            lines.append(f"  {_dot_id(n)};")
    for a, b in edges:
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def to_graphml(obj) -> str:
    nodes, edges, roles = _parts(obj)
    root = ET.Element("graphml", {"xmlns": _GRAPHML_NS})
    if roles:
        ET.SubElement(root, "key", {"id": "role", "for": "node", "attr.name": "role",
                                    "attr.type": "string"})
    graph = ET.SubElement(root, "graph", {"id": "folksonomy", "edgedefault": "directed"})
    for n in nodes:
        el = ET.SubElement(graph, "node", {"id": n})
        if n in roles:
            ET.SubElement(el, "data", {"key": "role"}).text = roles[n]
    for i, (a, b) in enumerate(edges):
        ET.SubElement(graph, "edge", {"id": f"e{i}", "source": a, "target": b})
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def to_tsv(obj) -> str:
    _, edges, _ = _parts(obj)
    return "".join(f"{a}\t{b}\n" for a, b in edges)


_EXPORTERS = {"dot": to_dot, "graphml": to_graphml, "tsv": to_tsv}


def export_graph(obj, format: str = "dot") -> str:
    try:
        return _EXPORTERS[format](obj)
    except KeyError:
        raise ConfigError(f"unknown export format {format!r}; expected dot, graphml or tsv") from None


def read_tsv(text: str) -> ConceptGraph:
    edges = []
    for i, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"line {i}: expected 2 tab-separated columns")
        edges.append((cols[0], cols[1]))
    return ConceptGraph(edges)


def read_graphml(text: str) -> ConceptGraph:
    """Parse GraphML written by :func:`to_graphml` (isolated nodes survive, unlike TSV)."""
    root = ET.fromstring(text)
    ns = {"g": _GRAPHML_NS}
    graph = root.find("g:graph", ns)
    if graph is None:
        raise ValueError("no <graph> element")
    nodes = [n.get("id") for n in graph.findall("g:node", ns)]
    edges = [(e.get("source"), e.get("target")) for e in graph.findall("g:edge", ns)]
    return ConceptGraph(edges, nodes)
