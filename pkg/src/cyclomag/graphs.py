"""Immutable graph value types.

Two graph flavours are used throughout the package:

* :class:`DirectedMixedGraph` holds directed and bidirected edges, allows
  directed cycles, and permits up to three parallel edges per node pair
  (``a -> b``, ``b -> a`` and ``a <-> b``).
* :class:`MixedGraph` holds at most one edge per node pair, where an edge
  carries one mark (tail or arrowhead) at each endpoint, giving the four
  edge types ``->``, ``<-``, ``<->`` and ``--``.

All values are frozen after construction; every operation in the package
is a pure function over them, so graphs can be shared freely across
threads and used as dictionary keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union

from .errors import InputError

NodeId = str

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def check_node_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise InputError(f"invalid node name: {name!r}")
    return name


class EdgeMark(Enum):
    TAIL = "tail"
    ARROWHEAD = "arrowhead"

    def __repr__(self) -> str:  # terse reprs keep witnesses readable
        return self.name


TAIL = EdgeMark.TAIL
ARROWHEAD = EdgeMark.ARROWHEAD


@dataclass(frozen=True)
class DirectedEdge:
    """A directed edge ``tail -> head`` of a directed mixed graph."""

    tail: NodeId
    head: NodeId

    def __post_init__(self):
        if self.tail == self.head:
            raise InputError(f"self-loop on {self.tail!r}")

    @property
    def endpoints(self) -> tuple[NodeId, NodeId]:
        return (self.tail, self.head)

    @property
    def is_undirected(self) -> bool:
        return False

    def mark_at(self, v: NodeId) -> EdgeMark:
        if v == self.tail:
            return TAIL
        if v == self.head:
            return ARROWHEAD
        raise InputError(f"{v!r} is not an endpoint of {self}")

    def other(self, v: NodeId) -> NodeId:
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise InputError(f"{v!r} is not an endpoint of {self}")

    def __str__(self) -> str:
        return f"{self.tail} -> {self.head}"


@dataclass(frozen=True)
class BidirectedEdge:
    """A bidirected edge ``a <-> b``; endpoints are stored sorted."""

    a: NodeId
    b: NodeId

    def __post_init__(self):
        if self.a == self.b:
            raise InputError(f"self-loop on {self.a!r}")
        if self.a > self.b:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    @property
    def endpoints(self) -> tuple[NodeId, NodeId]:
        return (self.a, self.b)

    @property
    def is_undirected(self) -> bool:
        return False

    def mark_at(self, v: NodeId) -> EdgeMark:
        if v in (self.a, self.b):
            return ARROWHEAD
        raise InputError(f"{v!r} is not an endpoint of {self}")

    def other(self, v: NodeId) -> NodeId:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise InputError(f"{v!r} is not an endpoint of {self}")

    def __str__(self) -> str:
        return f"{self.a} <-> {self.b}"


@dataclass(frozen=True)
class MixedEdge:
    """The unique edge between two nodes of a :class:`MixedGraph`.

    The two marks encode the edge type: tail/arrowhead is ``a -> b``,
    arrowhead/tail is ``a <- b``, arrowhead/arrowhead is ``a <-> b`` and
    tail/tail is ``a -- b``.  Endpoints are normalised to sorted order,
    so ``(b, a)`` inputs denote the same edge with marks swapped.
    """

    a: NodeId
    mark_a: EdgeMark
    b: NodeId
    mark_b: EdgeMark

    def __post_init__(self):
        if self.a == self.b:
            raise InputError(f"self-loop on {self.a!r}")
        if self.a > self.b:
            a, ma, b, mb = self.a, self.mark_a, self.b, self.mark_b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "mark_a", mb)
            object.__setattr__(self, "b", a)
            object.__setattr__(self, "mark_b", ma)

    @classmethod
    def directed(cls, tail: NodeId, head: NodeId) -> "MixedEdge":
        return cls(tail, TAIL, head, ARROWHEAD)

    @classmethod
    def bidirected(cls, a: NodeId, b: NodeId) -> "MixedEdge":
        return cls(a, ARROWHEAD, b, ARROWHEAD)

    @classmethod
    def undirected(cls, a: NodeId, b: NodeId) -> "MixedEdge":
        return cls(a, TAIL, b, TAIL)

    @property
    def endpoints(self) -> tuple[NodeId, NodeId]:
        return (self.a, self.b)

    @property
    def is_undirected(self) -> bool:
        return self.mark_a is TAIL and self.mark_b is TAIL

    @property
    def is_bidirected(self) -> bool:
        return self.mark_a is ARROWHEAD and self.mark_b is ARROWHEAD

    @property
    def is_directed(self) -> bool:
        return self.mark_a is not self.mark_b

    @property
    def directed_tail(self) -> NodeId:
        """Tail node of a directed edge; raises for other edge types."""
        if not self.is_directed:
            raise InputError(f"{self} is not a directed edge")
        return self.a if self.mark_a is TAIL else self.b

    @property
    def directed_head(self) -> NodeId:
        if not self.is_directed:
            raise InputError(f"{self} is not a directed edge")
        return self.b if self.mark_a is TAIL else self.a

    def mark_at(self, v: NodeId) -> EdgeMark:
        if v == self.a:
            return self.mark_a
        if v == self.b:
            return self.mark_b
        raise InputError(f"{v!r} is not an endpoint of {self}")

    def other(self, v: NodeId) -> NodeId:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise InputError(f"{v!r} is not an endpoint of {self}")

    def render_from(self, v: NodeId) -> str:
        """Arrow as seen when traversing the edge starting at ``v``."""
        m_here, m_there = self.mark_at(v), self.mark_at(self.other(v))
        if m_here is TAIL and m_there is TAIL:
            return "--"
        if m_here is TAIL:
            return "->"
        if m_there is TAIL:
            return "<-"
        return "<->"

    def __str__(self) -> str:
        return f"{self.a} {self.render_from(self.a)} {self.b}"


Edge = Union[DirectedEdge, BidirectedEdge, MixedEdge]

# Sort key used everywhere an edge list must be deterministic: traversal
# from v visits neighbours in name order, breaking parallel-edge ties by
# (mark here, mark there) with tails before arrowheads.
_MARK_RANK = {TAIL: 0, ARROWHEAD: 1}


def _traversal_key(edge: Edge, v: NodeId):
    w = edge.other(v)
    return (w, _MARK_RANK[edge.mark_at(v)], _MARK_RANK[edge.mark_at(w)])


def _parse_edge_spec(spec: str) -> tuple[NodeId, str, NodeId]:
    parts = spec.split()
    if len(parts) != 3 or parts[1] not in ("->", "<-", "<->", "--"):
        raise InputError(f"bad edge spec: {spec!r}")
    return parts[0], parts[1], parts[2]


@dataclass(frozen=True)
class MixedGraph:
    """Mixed graph with at most one edge per node pair and no self-loops."""

    nodes: tuple[NodeId, ...]
    edges: tuple[MixedEdge, ...]
    _pair: dict = field(default=None, compare=False, repr=False)
    _incident: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        nodes = tuple(sorted({check_node_name(n) for n in self.nodes}))
        node_set = set(nodes)
        pair: dict[tuple[NodeId, NodeId], MixedEdge] = {}
        for e in self.edges:
            if not isinstance(e, MixedEdge):
                raise InputError(f"not a mixed edge: {e!r}")
            if e.a not in node_set or e.b not in node_set:
                raise InputError(f"edge {e} uses undeclared node")
            key = (e.a, e.b)
            if key in pair:
                raise InputError(f"more than one edge between {e.a!r} and {e.b!r}")
            pair[key] = e
        edges = tuple(sorted(pair.values(), key=lambda e: (e.a, e.b)))
        incident: dict[NodeId, list[MixedEdge]] = {n: [] for n in nodes}
        for e in edges:
            incident[e.a].append(e)
            incident[e.b].append(e)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_pair", pair)
        object.__setattr__(
            self,
            "_incident",
            {n: tuple(sorted(es, key=lambda e: _traversal_key(e, n))) for n, es in incident.items()},
        )

    @classmethod
    def of(cls, *edge_specs: str, nodes: Iterable[NodeId] = ()) -> "MixedGraph":
        """Build from specs like ``"a -> b"``, ``"a -- b"``, ``"a <-> b"``."""
        node_set = set(nodes)
        edges = []
        for spec in edge_specs:
            u, op, v = _parse_edge_spec(spec)
            node_set.update((u, v))
            if op == "->":
                edges.append(MixedEdge.directed(u, v))
            elif op == "<-":
                edges.append(MixedEdge.directed(v, u))
            elif op == "<->":
                edges.append(MixedEdge.bidirected(u, v))
            else:
                edges.append(MixedEdge.undirected(u, v))
        return cls(tuple(node_set), tuple(edges))

    def __contains__(self, v: NodeId) -> bool:
        return v in self._incident

    def require_nodes(self, vs: Iterable[NodeId]) -> None:
        for v in vs:
            if v not in self._incident:
                raise InputError(f"unknown node: {v!r}")

    def edge(self, a: NodeId, b: NodeId) -> MixedEdge | None:
        if a > b:
            a, b = b, a
        return self._pair.get((a, b))

    def adjacent(self, a: NodeId, b: NodeId) -> bool:
        return self.edge(a, b) is not None

    def incident_edges(self, v: NodeId) -> tuple[MixedEdge, ...]:
        try:
            return self._incident[v]
        except KeyError:
            raise InputError(f"unknown node: {v!r}") from None

    def contains_edge(self, e: Edge) -> bool:
        return isinstance(e, MixedEdge) and self.edge(e.a, e.b) == e

    def neighbors(self, v: NodeId) -> tuple[NodeId, ...]:
        return tuple(e.other(v) for e in self.incident_edges(v))

    def directed_parents(self, v: NodeId) -> tuple[NodeId, ...]:
        """Nodes u with a directed edge u -> v."""
        return tuple(
            e.other(v)
            for e in self.incident_edges(v)
            if e.is_directed and e.directed_head == v
        )

    def directed_children(self, v: NodeId) -> tuple[NodeId, ...]:
        return tuple(
            e.other(v)
            for e in self.incident_edges(v)
            if e.is_directed and e.directed_tail == v
        )

    def undirected_neighbors(self, v: NodeId) -> tuple[NodeId, ...]:
        return tuple(e.other(v) for e in self.incident_edges(v) if e.is_undirected)


@dataclass(frozen=True)
class DirectedMixedGraph:
    """Directed mixed graph; cycles and parallel edges of distinct type allowed."""

    nodes: tuple[NodeId, ...]
    directed: tuple[tuple[NodeId, NodeId], ...]
    bidirected: tuple[tuple[NodeId, NodeId], ...]
    _incident: dict = field(default=None, compare=False, repr=False)
    _parents: dict = field(default=None, compare=False, repr=False)
    _children: dict = field(default=None, compare=False, repr=False)
    _directed_set: frozenset = field(default=None, compare=False, repr=False)
    _bidirected_set: frozenset = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        nodes = tuple(sorted({check_node_name(n) for n in self.nodes}))
        node_set = set(nodes)
        directed = set()
        for t, h in self.directed:
            if t == h:
                raise InputError(f"self-loop on {t!r}")
            if t not in node_set or h not in node_set:
                raise InputError(f"edge {t} -> {h} uses undeclared node")
            directed.add((t, h))
        bidirected = set()
        for a, b in self.bidirected:
            if a == b:
                raise InputError(f"self-loop on {a!r}")
            if a not in node_set or b not in node_set:
                raise InputError(f"edge {a} <-> {b} uses undeclared node")
            bidirected.add((min(a, b), max(a, b)))
        parents: dict[NodeId, list[NodeId]] = {n: [] for n in nodes}
        children: dict[NodeId, list[NodeId]] = {n: [] for n in nodes}
        incident: dict[NodeId, list[Edge]] = {n: [] for n in nodes}
        for t, h in directed:
            e = DirectedEdge(t, h)
            children[t].append(h)
            parents[h].append(t)
            incident[t].append(e)
            incident[h].append(e)
        for a, b in bidirected:
            e = BidirectedEdge(a, b)
            incident[a].append(e)
            incident[b].append(e)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "directed", tuple(sorted(directed)))
        object.__setattr__(self, "bidirected", tuple(sorted(bidirected)))
        object.__setattr__(
            self,
            "_incident",
            {n: tuple(sorted(es, key=lambda e: _traversal_key(e, n))) for n, es in incident.items()},
        )
        object.__setattr__(self, "_parents", {n: tuple(sorted(ps)) for n, ps in parents.items()})
        object.__setattr__(self, "_children", {n: tuple(sorted(cs)) for n, cs in children.items()})
        object.__setattr__(self, "_directed_set", frozenset(directed))
        object.__setattr__(self, "_bidirected_set", frozenset(bidirected))

    @classmethod
    def of(cls, *edge_specs: str, nodes: Iterable[NodeId] = ()) -> "DirectedMixedGraph":
        """Build from specs like ``"a -> b"``, ``"b <- a"``, ``"a <-> b"``."""
        node_set = set(nodes)
        directed = []
        bidirected = []
        for spec in edge_specs:
            u, op, v = _parse_edge_spec(spec)
            node_set.update((u, v))
            if op == "->":
                directed.append((u, v))
            elif op == "<-":
                directed.append((v, u))
            elif op == "<->":
                bidirected.append((u, v))
            else:
                raise InputError(f"undirected edge not allowed here: {spec!r}")
        return cls(tuple(node_set), tuple(directed), tuple(bidirected))

    def __contains__(self, v: NodeId) -> bool:
        return v in self._incident

    def require_nodes(self, vs: Iterable[NodeId]) -> None:
        for v in vs:
            if v not in self._incident:
                raise InputError(f"unknown node: {v!r}")

    def incident_edges(self, v: NodeId) -> tuple[Edge, ...]:
        try:
            return self._incident[v]
        except KeyError:
            raise InputError(f"unknown node: {v!r}") from None

    def contains_edge(self, e: Edge) -> bool:
        if isinstance(e, DirectedEdge):
            return (e.tail, e.head) in self._directed_set
        if isinstance(e, BidirectedEdge):
            return (e.a, e.b) in self._bidirected_set
        return False

    def parents(self, v: NodeId) -> tuple[NodeId, ...]:
        return self._parents[v]

    def children(self, v: NodeId) -> tuple[NodeId, ...]:
        return self._children[v]

    def siblings(self, v: NodeId) -> tuple[NodeId, ...]:
        return tuple(e.other(v) for e in self.incident_edges(v) if isinstance(e, BidirectedEdge))

    def adjacent(self, a: NodeId, b: NodeId) -> bool:
        return any(e.other(a) == b for e in self.incident_edges(a))


@dataclass(frozen=True)
class ContextedDmg:
    """A directed mixed graph together with a designated selection-node set."""

    graph: DirectedMixedGraph
    selection: tuple[NodeId, ...]

    def __post_init__(self):
        selection = tuple(sorted(set(self.selection)))
        for s in selection:
            if s not in self.graph:
                raise InputError(f"selection node {s!r} is not in the graph")
        if len(selection) == len(self.graph.nodes):
            raise InputError("at least one node must be observed")
        object.__setattr__(self, "selection", selection)

    @classmethod
    def of(cls, *edge_specs: str, selection: Iterable[NodeId] = (), nodes: Iterable[NodeId] = ()) -> "ContextedDmg":
        selection = tuple(selection)
        return cls(DirectedMixedGraph.of(*edge_specs, nodes=tuple(nodes) + selection), selection)

    @property
    def observed(self) -> tuple[NodeId, ...]:
        sel = set(self.selection)
        return tuple(n for n in self.graph.nodes if n not in sel)
