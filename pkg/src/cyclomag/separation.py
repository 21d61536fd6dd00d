"""Separation criteria and inducing-path predicates.

Two criteria live here:

* sigma-separation on directed mixed graphs, where a non-collider can
  only block a walk if some of its on-walk out-edges leave its strong
  component, and
* m-separation on mixed graphs, which adds the unconditional rule that
  an arrowhead may never meet an undirected edge along a walk.

Each criterion ships in two independent implementations: a polynomial
reachability engine over (node, incoming edge shape) states, and an
exhaustive simple-path oracle used to audit the engine at desk scale.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError, OracleCapError
from .graphs import (
    ARROWHEAD,
    TAIL,
    DirectedEdge,
    DirectedMixedGraph,
    MixedGraph,
    NodeId,
)
from .relations import (
    ancestors,
    anteriors,
    enumerate_simple_paths,
    scc_index,
    shortest_directed_path,
    strongly_connected_components,
)
from .walks import Walk, check_walk, segment_partition

DEFAULT_PATH_ORACLE_CAP = 12
DEFAULT_GRID_ORACLE_CAP = 8
ORACLE_CAP_ENV = "CYCLOMAG_ORACLE_CAP"


def resolve_oracle_cap(explicit: int | None, default: int) -> int:
    """Explicit argument wins, then the environment override, then the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(ORACLE_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{ORACLE_CAP_ENV} must be an integer, got {env!r}") from None
    return default


def _check_cap(n_nodes: int, explicit: int | None, default: int, what: str) -> None:
    cap = resolve_oracle_cap(explicit, default)
    if n_nodes > cap:
        raise OracleCapError(
            f"{what} is capped at {cap} nodes but the graph has {n_nodes}; "
            f"pass cap= or set {ORACLE_CAP_ENV} to override"
        )


def _as_nodes(v) -> frozenset:
    if isinstance(v, str):
        return frozenset((v,))
    return frozenset(v)


@dataclass(frozen=True)
class SeparationQuery:
    """A separation question: is ``x`` separated from ``y`` given ``z``?

    Members of ``x`` or ``y`` that also lie in ``z`` are permitted; they
    simply contribute no open walks because walk endpoints are blockable.
    """

    x: frozenset
    y: frozenset
    z: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "x", _as_nodes(self.x))
        object.__setattr__(self, "y", _as_nodes(self.y))
        object.__setattr__(self, "z", _as_nodes(self.z))
        if not self.x or not self.y:
            raise InputError("query sets x and y must be nonempty")


@dataclass(frozen=True)
class SeparationVerdict:
    separated: bool
    witness: Walk | None = None


def _validated(graph, query: SeparationQuery):
    graph.require_nodes(query.x | query.y | query.z)
    return set(query.x), set(query.y), set(query.z)


# ---------------------------------------------------------------------------
# sigma-separation (directed mixed graphs)
# ---------------------------------------------------------------------------


def sigma_open_walk(g: DirectedMixedGraph, walk: Walk, z: Iterable[NodeId]) -> bool:
    """Walk-level sigma criterion.

    Open given ``z`` when every collider is an ancestor of ``z`` and no
    blockable non-collider lies in ``z``.  Endpoints are always
    blockable; an interior non-collider is unblockable exactly when all
    of its on-walk out-edges stay inside its strong component.
    """
    z = set(z)
    g.require_nodes(z)
    check_walk(g, walk)
    nodes, edges = walk.nodes, walk.edges
    if nodes[0] in z or nodes[-1] in z:
        return False
    scc = scc_index(g)
    anc_z = ancestors(g, z)
    for k in range(1, len(edges)):
        v = nodes[k]
        m_in = edges[k - 1].mark_at(v)
        m_out = edges[k].mark_at(v)
        if m_in is ARROWHEAD and m_out is ARROWHEAD:
            if v not in anc_z:
                return False
        elif v in z:
            blockable = (m_in is TAIL and nodes[k - 1] not in scc[v]) or (
                m_out is TAIL and nodes[k + 1] not in scc[v]
            )
            if blockable:
                return False
    return True


def sigma_open_path_segments(g: DirectedMixedGraph, path: Walk, z: Iterable[NodeId]) -> bool:
    """Segment-level sigma criterion for simple paths.

    The path is split into maximal same-component segments and blocked
    when (a) an outer endpoint lies in ``z``, (b) a segment endpoint
    with a directed path-edge leaving its segment lies in ``z``, or (c)
    a segment contains a collider while its whole component misses the
    ancestors of ``z``.  Agrees with :func:`sigma_open_walk` on paths.
    """
    z = set(z)
    g.require_nodes(z)
    check_walk(g, path)
    if not path.is_path:
        raise InputError("the segment criterion is defined for simple paths only")
    nodes, edges = path.nodes, path.edges
    if nodes[0] in z or nodes[-1] in z:
        return False
    partition = segment_partition(g, path)
    components = strongly_connected_components(g)
    anc_z = ancestors(g, z)
    pos = {v: i for i, v in enumerate(nodes)}
    n_edges = len(edges)
    for seg in partition:
        li, ri = pos[seg.left], pos[seg.right]
        if li > 0:
            e = edges[li - 1]
            if isinstance(e, DirectedEdge) and e.tail == seg.left and seg.left in z:
                return False
        if ri < n_edges:
            e = edges[ri]
            if isinstance(e, DirectedEdge) and e.tail == seg.right and seg.right in z:
                return False
        if components[seg.scc_index].isdisjoint(anc_z):
            for k in range(max(li, 1), min(ri, n_edges - 1) + 1):
                v = nodes[k]
                if edges[k - 1].mark_at(v) is ARROWHEAD and edges[k].mark_at(v) is ARROWHEAD:
                    return False
    return True


# Reachability state shapes.  For the sigma engine a state records how the
# walk arrived at a node: with an arrowhead, or with a tail whose edge
# stays inside the node's strong component, or with a tail that crosses
# components.  Distinguishing the two tail cases is what makes every
# blocking rule local:
#
#   * a collider is recognised from (arrowhead in, arrowhead out) and only
#     needs the precomputed ancestor set of z;
#   * a non-collider is blockable iff one of its on-walk out-edges leaves
#     its component, and both out-edges are visible here: the arrival
#     tail's crossing bit is stored in the shape, and the departure edge's
#     crossing bit is computed from the neighbour being expanded.
#
# Hence a transition across an interior node depends only on (shape in,
# departure edge, membership of v in z / Anc(z), component membership of
# the departure neighbour), and breadth-first search over the finite state
# space decides exactly whether an open walk exists.
_S_ARROW, _S_TAIL_WITHIN, _S_TAIL_CROSS = 0, 1, 2


def sigma_separated(g: DirectedMixedGraph, query: SeparationQuery) -> SeparationVerdict:
    """Reachability engine for sigma-separation.

    Returns a verdict carrying an open path witness whenever the sets
    are connected.  Walk connectivity and path connectivity coincide, so
    the witness is obtained by reducing the discovered walk to a path.
    """
    x, y, z = _validated(g, query)
    overlap = sorted((x & y) - z)
    if overlap:
        return SeparationVerdict(False, Walk(overlap[0]))
    scc = scc_index(g)
    anc_z = ancestors(g, z)

    def arrival_shape(e, w, frm):
        if e.mark_at(w) is ARROWHEAD:
            return _S_ARROW
        return _S_TAIL_WITHIN if frm in scc[w] else _S_TAIL_CROSS

    parent: dict[tuple, tuple] = {}
    queue: deque[tuple] = deque()
    for a in sorted(x - z):
        for e in g.incident_edges(a):
            w = e.other(a)
            st = (w, arrival_shape(e, w, a))
            if st not in parent:
                parent[st] = (None, e, a)
                queue.append(st)
    goal = None
    while queue:
        st = queue.popleft()
        v, shape = st
        if v in y and v not in z:
            goal = st
            break
        for e in g.incident_edges(v):
            w = e.other(v)
            m_out = e.mark_at(v)
            if shape == _S_ARROW and m_out is ARROWHEAD:
                if v not in anc_z:
                    continue
            elif v in z:
                if shape == _S_TAIL_CROSS or (m_out is TAIL and w not in scc[v]):
                    continue
            nxt = (w, arrival_shape(e, w, v))
            if nxt not in parent:
                parent[nxt] = (st, e, v)
                queue.append(nxt)
    if goal is None:
        return SeparationVerdict(True)
    walk = _reconstruct(parent, goal)
    return SeparationVerdict(False, _sigma_walk_to_path(g, walk, scc))


def _reconstruct(parent: dict, goal: tuple) -> Walk:
    edges_rev = []
    st = goal
    while True:
        prev, e, frm = parent[st]
        edges_rev.append(e)
        if prev is None:
            return Walk(frm, tuple(reversed(edges_rev)))
        st = prev


def _sigma_walk_to_path(g: DirectedMixedGraph, walk: Walk, scc) -> Walk:
    """Reduce an open walk to an open path without losing openness.

    Repeated visits always happen inside one strong component, so the
    detour between the first and last visit of that component can be
    replaced by a shortest directed path within it, oriented to match
    the edge that follows.  Each pass removes at least one repeated
    node, so the loop terminates.
    """
    guard = len(walk.nodes) + 2
    while not walk.is_path:
        guard -= 1
        if guard < 0:  # pragma: no cover - the reduction provably converges
            raise AssertionError("sigma walk-to-path reduction did not converge")
        nodes = walk.nodes
        seen: set = set()
        rep = None
        for v in nodes:
            if v in seen:
                rep = v
                break
            seen.add(v)
        comp = scc[rep]
        i = next(k for k, v in enumerate(nodes) if v in comp)
        j = max(k for k, v in enumerate(nodes) if v in comp)
        vi, vj = nodes[i], nodes[j]
        if j == len(nodes) - 1 or walk.edges[j].mark_at(vj) is TAIL:
            seq = shortest_directed_path(g, vi, {vj})
            mid = tuple(DirectedEdge(seq[t], seq[t + 1]) for t in range(len(seq) - 1))
        else:
            seq = shortest_directed_path(g, vj, {vi})
            mid = tuple(DirectedEdge(seq[t], seq[t + 1]) for t in range(len(seq) - 1))[::-1]
        walk = Walk(nodes[0], walk.edges[:i] + mid + walk.edges[j:])
    return walk


def sigma_separated_oracle(
    g: DirectedMixedGraph, query: SeparationQuery, cap: int | None = None
) -> SeparationVerdict:
    """Exhaustive oracle: scan every simple path with the segment criterion.

    Sound because an open walk exists iff an open path does.  Intended
    for desk-scale verification; refuses graphs above the size cap.
    """
    _check_cap(len(g.nodes), cap, DEFAULT_PATH_ORACLE_CAP, "the sigma path oracle")
    x, y, z = _validated(g, query)
    overlap = sorted((x & y) - z)
    if overlap:
        return SeparationVerdict(False, Walk(overlap[0]))
    for a in sorted(x - z):
        for b in sorted(y - z):
            if a == b:
                continue
            for path in enumerate_simple_paths(g, a, b):
                if sigma_open_path_segments(g, path, z):
                    return SeparationVerdict(False, path)
    return SeparationVerdict(True)


# ---------------------------------------------------------------------------
# m-separation (mixed graphs)
# ---------------------------------------------------------------------------


def m_open_walk(h: MixedGraph, walk: Walk, z: Iterable[NodeId]) -> bool:
    """Walk-level m criterion.

    Open given ``z`` when no non-collider (endpoints included) lies in
    ``z``, every collider is an ancestor of ``z`` over the directed
    edges, and no arrowhead meets an undirected edge along the walk.
    """
    z = set(z)
    h.require_nodes(z)
    check_walk(h, walk)
    nodes, edges = walk.nodes, walk.edges
    if nodes[0] in z or nodes[-1] in z:
        return False
    anc_z = ancestors(h, z)
    for k in range(1, len(edges)):
        v = nodes[k]
        e1, e2 = edges[k - 1], edges[k]
        m1, m2 = e1.mark_at(v), e2.mark_at(v)
        if (m1 is ARROWHEAD and e2.is_undirected) or (e1.is_undirected and m2 is ARROWHEAD):
            return False
        if m1 is ARROWHEAD and m2 is ARROWHEAD:
            if v not in anc_z:
                return False
        elif v in z:
            return False
    return True


# m-engine shapes: arrived with an arrowhead, with the tail of a directed
# edge, or over an undirected edge.  The undirected case must be kept
# apart from the directed tail because the arrowhead/undirected exclusion
# rule looks at the edge type, not just the mark.  All three blocking
# rules are local to (shape in, departure edge) given Anc(z), so state
# search is exact, as for the sigma engine above.
_M_ARROW, _M_TAIL, _M_UNDIR = 0, 1, 2


def m_separated(h: MixedGraph, query: SeparationQuery) -> SeparationVerdict:
    """Reachability engine for m-separation over walks.

    The witness is reduced to a simple path whenever possible (always,
    on graphs that pass validity checking); for badly malformed graphs
    where some connected pair admits open walks but no open path, the
    open walk itself is returned.
    """
    x, y, z = _validated(h, query)
    overlap = sorted((x & y) - z)
    if overlap:
        return SeparationVerdict(False, Walk(overlap[0]))
    anc_z = ancestors(h, z)

    def arrival_shape(e, w):
        if e.mark_at(w) is ARROWHEAD:
            return _M_ARROW
        return _M_UNDIR if e.is_undirected else _M_TAIL

    parent: dict[tuple, tuple] = {}
    queue: deque[tuple] = deque()
    for a in sorted(x - z):
        for e in h.incident_edges(a):
            w = e.other(a)
            st = (w, arrival_shape(e, w))
            if st not in parent:
                parent[st] = (None, e, a)
                queue.append(st)
    goal = None
    while queue:
        st = queue.popleft()
        v, shape = st
        if v in y and v not in z:
            goal = st
            break
        for e in h.incident_edges(v):
            w = e.other(v)
            m_out = e.mark_at(v)
            if shape == _M_ARROW and e.is_undirected:
                continue
            if shape == _M_UNDIR and m_out is ARROWHEAD:
                continue
            if shape == _M_ARROW and m_out is ARROWHEAD:
                if v not in anc_z:
                    continue
            elif v in z:
                continue
            nxt = (w, arrival_shape(e, w))
            if nxt not in parent:
                parent[nxt] = (st, e, v)
                queue.append(nxt)
    if goal is None:
        return SeparationVerdict(True)
    walk = _reconstruct(parent, goal)
    witness = walk if walk.is_path else _m_walk_to_path(h, walk, z, anc_z)
    if witness is None:
        witness = _first_m_open_path(h, walk.start, walk.end, z)
    if witness is None:
        witness = walk
    return SeparationVerdict(False, witness)


def _m_walk_to_path(h: MixedGraph, walk: Walk, z: set, anc_z: frozenset) -> Walk | None:
    """Reduce an m-open walk to an m-open path.

    Works by repeatedly merging the first and last visit of a repeated
    node.  When the merge would put an arrowhead against an undirected
    edge, the undirected run is bypassed through the shortcut edge that
    triples of the form arrowhead-into-undirected force to exist in any
    graph that passes validity checking.  Returns None when a needed
    shortcut is missing (possible only on invalid graphs); the caller
    falls back to path enumeration.
    """
    guard = len(walk.edges) + 2
    while not walk.is_path:
        guard -= 1
        if guard < 0:
            return None
        nodes = walk.nodes
        n_last = len(nodes) - 1
        seen: set = set()
        rep = None
        for v in nodes:
            if v in seen:
                rep = v
                break
            seen.add(v)
        i = nodes.index(rep)
        j = n_last - tuple(reversed(nodes)).index(rep)
        if i == 0 and j == n_last:
            return None
        if i == 0:
            walk = walk.subwalk(j, n_last)
            continue
        if j == n_last:
            walk = walk.subwalk(0, i)
            continue
        e_in, e_out = walk.edges[i - 1], walk.edges[j]
        m_in, m_out = e_in.mark_at(rep), e_out.mark_at(rep)
        if e_in.is_undirected and m_out is ARROWHEAD:
            k = i
            while k > 0 and walk.edges[k - 1].is_undirected:
                k -= 1
            vk, vj1 = nodes[k], nodes[j + 1]
            shortcut = h.edge(vk, vj1) if vk != vj1 else None
            if shortcut is None or shortcut.mark_at(vk) is not ARROWHEAD:
                return None
            walk = Walk(nodes[0], walk.edges[:k] + (shortcut,) + walk.edges[j + 1 :])
            continue
        if m_in is ARROWHEAD and e_out.is_undirected:
            r = j
            while r < n_last and walk.edges[r].is_undirected:
                r += 1
            vi1, vr = nodes[i - 1], nodes[r]
            shortcut = h.edge(vi1, vr) if vi1 != vr else None
            if shortcut is None or shortcut.mark_at(vr) is not ARROWHEAD:
                return None
            walk = Walk(nodes[0], walk.edges[: i - 1] + (shortcut,) + walk.edges[r:])
            continue
        # Plain merge.  If the merged node becomes a collider it is an
        # ancestor of z (an open walk that enters it with an arrowhead
        # continues with directed edges until a collider that is one);
        # if it stays a non-collider it avoided z at one occurrence.
        if m_in is ARROWHEAD and m_out is ARROWHEAD and rep not in anc_z:
            return None
        walk = Walk(nodes[0], walk.edges[:i] + walk.edges[j:])
    return walk if m_open_walk(h, walk, z) else None


def _first_m_open_path(h: MixedGraph, a: NodeId, b: NodeId, z: set, limit: int = 200_000) -> Walk | None:
    if a == b:
        return None
    count = 0
    for path in enumerate_simple_paths(h, a, b):
        count += 1
        if count > limit:
            return None
        if m_open_walk(h, path, z):
            return path
    return None


def m_separated_oracle(
    h: MixedGraph, query: SeparationQuery, cap: int | None = None
) -> SeparationVerdict:
    """Exhaustive oracle: scan every simple path with the walk criterion."""
    _check_cap(len(h.nodes), cap, DEFAULT_PATH_ORACLE_CAP, "the m path oracle")
    x, y, z = _validated(h, query)
    overlap = sorted((x & y) - z)
    if overlap:
        return SeparationVerdict(False, Walk(overlap[0]))
    for a in sorted(x - z):
        for b in sorted(y - z):
            if a == b:
                continue
            for path in enumerate_simple_paths(h, a, b):
                if m_open_walk(h, path, z):
                    return SeparationVerdict(False, path)
    return SeparationVerdict(True)


# ---------------------------------------------------------------------------
# inducing paths
# ---------------------------------------------------------------------------


def _check_inducing_args(graph, s: set, a: NodeId, b: NodeId) -> None:
    graph.require_nodes(s | {a, b})
    if a == b:
        raise InputError("inducing-path endpoints must differ")
    if a in s or b in s:
        raise InputError("inducing-path endpoints may not be selection nodes")


def sigma_inducing_paths(
    g: DirectedMixedGraph, s: Iterable[NodeId], a: NodeId, b: NodeId
) -> tuple[Walk, ...]:
    """Every simple path between ``a`` and ``b`` that no admissible set blocks.

    Qualifying paths have all colliders among the ancestors of the
    endpoints and ``s``, and every interior non-collider unblockable.
    End marks can be read off each returned walk via ``is_into``.
    """
    s = set(s)
    _check_inducing_args(g, s, a, b)
    scc = scc_index(g)
    anc_ends = ancestors(g, {a, b} | s)
    return tuple(p for p in enumerate_simple_paths(g, a, b) if _sigma_inducing(p, anc_ends, scc))


def _sigma_inducing(path: Walk, anc_ends: frozenset, scc) -> bool:
    nodes, edges = path.nodes, path.edges
    for k in range(1, len(edges)):
        v = nodes[k]
        m_in = edges[k - 1].mark_at(v)
        m_out = edges[k].mark_at(v)
        if m_in is ARROWHEAD and m_out is ARROWHEAD:
            if v not in anc_ends:
                return False
        else:
            if m_in is TAIL and nodes[k - 1] not in scc[v]:
                return False
            if m_out is TAIL and nodes[k + 1] not in scc[v]:
                return False
    return True


def sigma_inducing_exists(
    g: DirectedMixedGraph, s: Iterable[NodeId], a: NodeId, b: NodeId
) -> bool:
    """Decide existence without enumeration.

    The endpoints admit such a path exactly when they stay connected
    after conditioning on all ancestors of the endpoints and ``s``
    (other than the endpoints themselves) together with ``s``.  That
    equivalence holds on every directed mixed graph, which keeps this
    check polynomial.
    """
    s = set(s)
    _check_inducing_args(g, s, a, b)
    z = (set(ancestors(g, {a, b} | s)) - {a, b}) | s
    verdict = sigma_separated(g, SeparationQuery((a,), (b,), z))
    return not verdict.separated


def inducing_paths(h: MixedGraph, a: NodeId, b: NodeId) -> tuple[Walk, ...]:
    """Simple paths whose interior nodes are all colliders and all
    ancestors of the endpoints (over the directed edges of ``h``)."""
    return tuple(_iter_inducing_paths(h, a, b))


def _iter_inducing_paths(h: MixedGraph, a: NodeId, b: NodeId) -> Iterator[Walk]:
    _check_inducing_args(h, set(), a, b)
    anc_ends = ancestors(h, {a, b})
    for path in enumerate_simple_paths(h, a, b):
        nodes, edges = path.nodes, path.edges
        ok = True
        for k in range(1, len(edges)):
            v = nodes[k]
            if (
                edges[k - 1].mark_at(v) is not ARROWHEAD
                or edges[k].mark_at(v) is not ARROWHEAD
                or v not in anc_ends
            ):
                ok = False
                break
        if ok:
            yield path


def inducing_exists(h: MixedGraph, a: NodeId, b: NodeId) -> bool:
    """Nonemptiness of :func:`inducing_paths`, with a polynomial pre-check.

    Any inducing path keeps the endpoints connected no matter what the
    conditioning set is, so separation given the anterior set of the
    endpoints rules one out immediately.  Only when that connectivity
    test passes do we enumerate to confirm.
    """
    _check_inducing_args(h, set(), a, b)
    z = set(anteriors(h, {a, b})) - {a, b}
    if m_separated(h, SeparationQuery((a,), (b,), z)).separated:
        return False
    for _ in _iter_inducing_paths(h, a, b):
        return True
    return False


def canonical_inducing_separator(h: MixedGraph, a: NodeId, b: NodeId) -> frozenset:
    """The conditioning set that decides inseparability of a node pair.

    On graphs that pass validity checking, ``a`` and ``b`` stay
    connected given this set exactly when an inducing path joins them.
    The set consists of the anteriors of the two endpoints, the
    endpoints themselves excluded.
    """
    return frozenset(anteriors(h, {a, b}) - {a, b})
