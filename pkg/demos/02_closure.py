"""
Exploring semantic closures
===========================

Shortest paths, all bounded paths and reachable sets over the ontology.
The Warshall matrix at the end is the same closure computed densely.
"""

import numpy as np

from ltd import all_paths, reachable_set, shortest_path
from ltd import fixtures
from ltd.ontology import reachable_depths

body = fixtures.body_ontology()

print(shortest_path(body, "temperature", "p-aminophenol", max_depth=4))
print(shortest_path(body, "temperature", "ferrous-sulphate", max_depth=4))

# A high temperature also points at influenza, two hops away via fever.
for cid, depth in sorted(reachable_depths(body, "temperature", 4).items(), key=lambda kv: (kv[1], kv[0])):
    print(depth, cid)

for path in all_paths(body, "temperature", "influenza", max_depth=4):
    print(" -> ".join(path.nodes))

# Reachability as a boolean matrix: rows of the transitive closure.
ids = [c.id for c in body.concepts]
pos = {c: i for i, c in enumerate(ids)}
reach = np.eye(len(ids), dtype=bool)
for link in body.links:
    reach[pos[link.source], pos[link.target]] = reach[pos[link.target], pos[link.source]] = True
for k in range(len(ids)):
    reach |= np.outer(reach[:, k], reach[k, :])

for cid in ids:
    dense = {ids[j] for j in np.flatnonzero(reach[pos[cid]])}
    assert dense == reachable_set(body, cid, len(ids))
print("component sizes:", sorted({int(reach[i].sum()) for i in range(len(ids))}))
