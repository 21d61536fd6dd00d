"""When do two abstractions encode the same separation statements?

Three structural features decide it: the adjacencies, the unshielded
colliders, and the collider status of the pivot node on discriminating
paths present in both graphs.  The demo compares the structural test
against the exhaustive oracle that sweeps every query.
"""

from cyclomag import (
    MixedGraph,
    condition1,
    discriminating_paths,
    m_markov_equivalent_oracle,
)

pairs = [
    ("mark flip on a single edge", MixedGraph.of("a -> b"), MixedGraph.of("a <-> b")),
    (
        "different adjacencies",
        MixedGraph.of("a -- b", "b -- c", "c -- a", "a -> d"),
        MixedGraph.of("a -- b", "b -- c", "c -- a", "a <-> d", "b <-> d", "c <-> d"),
    ),
    (
        "discriminating-path disagreement",
        MixedGraph.of("a <-> q", "q -> c", "q <-> b", "b -> c"),
        MixedGraph.of("a <-> q", "q -> c", "q <-> b", "b <-> c"),
    ),
]

for name, h1, h2 in pairs:
    structural = condition1(h1, h2)
    exhaustive, counterexample = m_markov_equivalent_oracle(h1, h2)
    print(f"{name}:")
    print(f"  structural test: {'equivalent' if structural.equivalent else 'not equivalent'}")
    if structural.failed_clause is not None:
        print(f"    failing clause: {structural.failed_clause.value}")
    print(f"  exhaustive oracle agrees: {structural.equivalent == exhaustive}")
    if counterexample is not None:
        a, b, z = counterexample
        print(f"    first disagreeing query: {a} vs {b} given {sorted(z)}")
    print()

h = pairs[2][1]
print("discriminating paths in the third pair's first graph:")
for dp in discriminating_paths(h):
    status = "collider" if dp.target_is_collider(h) else "non-collider"
    print(f"  {' '.join(dp.nodes)}  pivots on {dp.target} ({status})")
