"""Family relations and the shared path enumerator.

Ancestor, anterior and strong-component queries are the workhorses of
every other module.  All of them are reflexive where a length-zero walk
makes sense, and all of them return frozen sets so results can be cached
or compared directly.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Iterable, Iterator, Union

from .errors import DomainError, InputError
from .graphs import TAIL, DirectedMixedGraph, MixedGraph, NodeId
from .walks import Walk, _interior_collider_positions, check_walk

Graph = Union[DirectedMixedGraph, MixedGraph]


def _directed_children(graph: Graph, v: NodeId) -> Iterable[NodeId]:
    if isinstance(graph, DirectedMixedGraph):
        return graph.children(v)
    return graph.directed_children(v)


def _directed_parents(graph: Graph, v: NodeId) -> Iterable[NodeId]:
    if isinstance(graph, DirectedMixedGraph):
        return graph.parents(v)
    return graph.directed_parents(v)


@lru_cache(maxsize=4096)
def strongly_connected_components(g: DirectedMixedGraph) -> tuple[frozenset[NodeId], ...]:
    """Partition the nodes into strong components of the directed part.

    Two nodes share a class exactly when each reaches the other over
    directed edges; bidirected edges never contribute.  Components are
    returned sorted by their smallest member.  Graphs are immutable, so
    results are memoised per graph value.
    """
    # Tarjan's algorithm, iterative so deep cycles cannot overflow the stack.
    index: dict[NodeId, int] = {}
    low: dict[NodeId, int] = {}
    on_stack: set[NodeId] = set()
    stack: list[NodeId] = []
    components: list[frozenset[NodeId]] = []
    counter = 0

    for root in g.nodes:
        if root in index:
            continue
        work = [(root, iter(g.children(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, children = work[-1]
            advanced = False
            for w in children:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.children(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                components.append(frozenset(comp))
    components.sort(key=min)
    return tuple(components)


def scc_index(g: DirectedMixedGraph) -> dict[NodeId, frozenset[NodeId]]:
    """Map each node to its strong component."""
    return {v: comp for comp in strongly_connected_components(g) for v in comp}


def ancestors(graph: Graph, targets: Iterable[NodeId]) -> frozenset[NodeId]:
    """All nodes with a directed walk (length >= 0) into ``targets``.

    Reflexive: the targets are their own ancestors.  Works on both graph
    flavours; only directed edges are followed.
    """
    targets = set(targets)
    graph.require_nodes(targets)
    seen = set(targets)
    frontier = deque(targets)
    while frontier:
        v = frontier.popleft()
        for u in _directed_parents(graph, v):
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return frozenset(seen)


def descendants(graph: Graph, sources: Iterable[NodeId]) -> frozenset[NodeId]:
    sources = set(sources)
    graph.require_nodes(sources)
    seen = set(sources)
    frontier = deque(sources)
    while frontier:
        v = frontier.popleft()
        for w in _directed_children(graph, v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def anteriors(h: MixedGraph, targets: Iterable[NodeId]) -> frozenset[NodeId]:
    """All nodes with a path into ``targets`` whose every edge leaves a tail.

    Such a path traverses ``--`` and ``->`` edges forwards only, so on a
    graph without undirected edges anteriors coincide with ancestors.
    Reflexive.
    """
    targets = set(targets)
    h.require_nodes(targets)
    seen = set(targets)
    frontier = deque(targets)
    while frontier:
        v = frontier.popleft()
        for e in h.incident_edges(v):
            u = e.other(v)
            # u joins when the edge has a tail at u (u -- v or u -> v).
            if u not in seen and e.mark_at(u) is TAIL:
                seen.add(u)
                frontier.append(u)
    return frozenset(seen)


def neighborhood(h: MixedGraph, v: NodeId) -> frozenset[NodeId]:
    """Nodes joined to ``v`` by undirected edges."""
    h.require_nodes([v])
    return frozenset(h.undirected_neighbors(v))


def neighborhood_complete(h: MixedGraph, v: NodeId) -> bool:
    """True when the undirected neighborhood of ``v`` forms a clique.

    Vacuously true for neighborhoods with at most one member.
    """
    nbh = sorted(neighborhood(h, v))
    for i, b in enumerate(nbh):
        for c in nbh[i + 1 :]:
            e = h.edge(b, c)
            if e is None or not e.is_undirected:
                return False
    return True


def shortest_directed_path(graph: Graph, source: NodeId, targets: Iterable[NodeId]) -> tuple[NodeId, ...] | None:
    """Node sequence of a shortest directed path from ``source`` into ``targets``.

    Deterministic: breadth-first with children visited in name order.
    Returns None when no target is reachable.
    """
    targets = set(targets)
    graph.require_nodes({source} | targets)
    if source in targets:
        return (source,)
    parent: dict[NodeId, NodeId] = {source: source}
    frontier = deque([source])
    while frontier:
        v = frontier.popleft()
        for w in sorted(_directed_children(graph, v)):
            if w in parent:
                continue
            parent[w] = v
            if w in targets:
                seq = [w]
                while seq[-1] != source:
                    seq.append(parent[seq[-1]])
                return tuple(reversed(seq))
            frontier.append(w)
    return None


def collider_distance_sum(h: MixedGraph, path: Walk, z: Iterable[NodeId]) -> int:
    """Sum over the path's colliders of the shortest directed distance to ``z``.

    Members of ``z`` sit at distance zero.  A collider with no directed
    path into ``z`` leaves the metric undefined and raises
    :class:`DomainError`.
    """
    z = set(z)
    h.require_nodes(z)
    check_walk(h, path)
    if not path.is_path:
        raise InputError("collider distance sum is defined for simple paths only")
    total = 0
    for k in _interior_collider_positions(path):
        v = path.nodes[k]
        seq = shortest_directed_path(h, v, z)
        if seq is None:
            raise DomainError(f"collider {v!r} has no directed path into the target set")
        total += len(seq) - 1
    return total


def enumerate_simple_paths(graph: Graph, a: NodeId, b: NodeId) -> Iterator[Walk]:
    """Yield every simple path between ``a`` and ``b`` exactly once.

    Paths come out in lexicographic order of their node sequences, with
    parallel edges of a directed mixed graph breaking ties by edge type,
    so the stream is deterministic.  This enumerator is the single
    substrate behind all exhaustive oracles in the package.
    """
    if a == b:
        raise InputError("path endpoints must differ")
    graph.require_nodes([a, b])
    edge_stack = []
    on_path = {a}
    node_seq = [a]

    def frames(v):
        return iter(graph.incident_edges(v))

    frame_stack = [frames(a)]
    while frame_stack:
        it = frame_stack[-1]
        advanced = False
        for e in it:
            w = e.other(node_seq[-1])
            if w in on_path:
                continue
            edge_stack.append(e)
            if w == b:
                yield Walk(a, tuple(edge_stack))
                edge_stack.pop()
                continue
            on_path.add(w)
            node_seq.append(w)
            frame_stack.append(frames(w))
            advanced = True
            break
        if not advanced:
            frame_stack.pop()
            if edge_stack:
                edge_stack.pop()
            if len(node_seq) > 1:
                on_path.discard(node_seq.pop())
