"""Shared graphs and seeded generators for the test suite."""

from __future__ import annotations

import random

from cyclomag import (
    ContextedDmg,
    DirectedMixedGraph,
    GeneratorConfig,
    MixedGraph,
    random_dmg,
    represent,
)

# A four-node directed graph observed through one latent node (u) and one
# selection node (s); the canonical end-to-end example.
SELECTION_DG = ContextedDmg.of(
    "a -> b", "b -> a", "b -> s", "c -> s", "u -> d", "u -> b", selection=("s",)
)

# The same system after projecting the latent node out.
SELECTION_DMG = ContextedDmg.of(
    "a -> b", "b -> a", "b -> s", "c -> s", "b <-> d", selection=("s",)
)

# Its abstraction over the observed nodes.
SELECTION_ABSTRACTION = MixedGraph.of("a -- b", "b -- c", "b -> d", "a -> d")

# A bidirected chain with two directed chords; not a valid abstraction
# because the chain joins the non-adjacent pair (a, d).
INDUCING_CHAIN = MixedGraph.of("a <-> b", "b <-> c", "c <-> d", "b -> d", "c -> a")

# Gallery of valid abstractions and graphs they abstract.
UNDIRECTED_TRIANGLE = MixedGraph.of("a -- b", "b -- c", "c -- a", "a -> d")
TRIANGLE_WITH_HUB = MixedGraph.of(
    "a -- b", "b -- c", "c -- a", "a <-> d", "b <-> d", "c <-> d"
)
UNDIRECTED_FAN = MixedGraph.of("a -- b", "c -- a", "a -> d")

CYCLE_WITH_CHILD = ContextedDmg.of("a -> d", "a -> c", "b -> a", "c -> b")
FORK_WITH_SELECTION = ContextedDmg.of(
    "a -> c", "a -> b", "c -> s_bc", "b -> s_bc", "d <-> a", selection=("s_bc",)
)
HUB_CYCLE_A = ContextedDmg.of("d <-> a", "a -> b", "a -> c", "b -> a", "c -> a")
HUB_CYCLE_B = ContextedDmg.of("a -> c", "c -> b", "b -> a", "d <-> a", "d <-> b")
DOUBLE_SELECTION_FAN = ContextedDmg.of(
    "a -> d", "a -> s_a_b", "b -> s_a_b", "a -> s_a_c", "c -> s_a_c",
    selection=("s_a_c", "s_a_b"),
)
SELECTION_AND_CYCLE = ContextedDmg.of(
    "a -> d", "a -> s_a_b", "b -> s_a_b", "a -> c", "c -> a", selection=("s_a_b",)
)

# Discriminating-path gallery: same skeleton and unshielded colliders,
# opposite status of the discriminated node b.
DISC_TAIL = MixedGraph.of("a <-> q", "q -> c", "q <-> b", "b -> c")
DISC_COLLIDER = MixedGraph.of("a <-> q", "q -> c", "q <-> b", "b <-> c")


def seeded_contexted(seed: int, max_n: int = 6, max_s: int = 2) -> ContextedDmg:
    """Deterministic random graph with size and densities drawn from the seed."""
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    ns = rng.randint(0, min(max_s, n - 1))
    cfg = GeneratorConfig(
        n_nodes=n,
        p_directed=rng.uniform(0.1, 0.5),
        p_bidirected=rng.uniform(0.05, 0.35),
        n_selection=ns,
        seed=seed,
    )
    return random_dmg(cfg)


def seeded_valid_mixed(seed: int, max_n: int = 6, max_s: int = 2) -> MixedGraph:
    """A random graph that passes validity checking, via abstraction."""
    return represent(seeded_contexted(seed, max_n, max_s))


def seeded_mixed_pair(seed: int, max_n: int = 5) -> tuple[ContextedDmg, ContextedDmg]:
    """Two graphs on shared nodes and selection, biased toward equal skeletons."""
    rng = random.Random(seed)
    base = seeded_contexted(seed, max_n=max_n)
    names = list(base.graph.nodes)
    sel = set(base.selection)
    directed = set(base.graph.directed)
    bidirected = set(base.graph.bidirected)
    for _ in range(rng.randint(0, 3)):
        if len(names) < 2:
            break
        u, v = rng.sample(names, 2)
        if rng.random() < 0.6:
            if u in sel:
                continue
            directed ^= {(u, v)}
        else:
            bidirected ^= {(min(u, v), max(u, v))}
    partner = ContextedDmg(
        DirectedMixedGraph(base.graph.nodes, tuple(directed), tuple(bidirected)),
        base.selection,
    )
    return base, partner


def all_subsets(items):
    items = sorted(items)
    for mask in range(1 << len(items)):
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)
