"""Independent reference implementations used only by the tests.

None of these import the code paths they check: graphs are plain edge sets,
paths are found by exhaustive enumeration, closure by Warshall's algorithm.
"""

from __future__ import annotations

import itertools
import random
import string

import numpy as np

from ltd.ontology import Concept, Link, Ontology


def undirected_edges(o: Ontology) -> set[frozenset]:
    return {frozenset((l.source, l.target)) for l in o.links}


def permutation_paths(o: Ontology, a: str, b: str, max_depth: int) -> list[tuple[str, ...]]:
    """All simple paths by trying every ordered choice of intermediate nodes."""
    if a == b:
        return [(a,)]
    edges = undirected_edges(o)
    others = [c.id for c in o.concepts if c.id not in (a, b)]
    found = []
    for k in range(0, max_depth):
        for middle in itertools.permutations(others, k):
            seq = (a, *middle, b)
            if all(frozenset(p) in edges for p in zip(seq, seq[1:])):
                found.append(seq)
    return found


def dfs_paths(o: Ontology, a: str, b: str, max_depth: int) -> list[tuple[str, ...]]:
    """All simple paths by exhaustive depth-first search over the edge set."""
    edges = undirected_edges(o)
    nodes = [c.id for c in o.concepts]
    out = []

    def go(path):
        last = path[-1]
        if last == b:
            out.append(tuple(path))
            return
        if len(path) - 1 >= max_depth:
            return
        for n in nodes:
            if n not in path and frozenset((last, n)) in edges:
                go(path + [n])

    go([a])
    return out


def best_path(paths):
    return min(paths, key=lambda p: (len(p), p)) if paths else None


def bfs_distance(o: Ontology, a: str, b: str) -> int | None:
    """Hop distance by frontier expansion; None when disconnected."""
    edges = undirected_edges(o)
    nodes = [c.id for c in o.concepts]
    seen = {a}
    frontier = {a}
    d = 0
    while frontier:
        if b in frontier:
            return d
        nxt = {n for f in frontier for n in nodes if n not in seen and frozenset((f, n)) in edges}
        seen |= nxt
        frontier = nxt
        d += 1
    return None


def warshall_closure(o: Ontology) -> tuple[list[str], np.ndarray]:
    ids = [c.id for c in o.concepts]
    pos = {c: i for i, c in enumerate(ids)}
    n = len(ids)
    reach = np.eye(n, dtype=bool)
    for l in o.links:
        reach[pos[l.source], pos[l.target]] = True
        reach[pos[l.target], pos[l.source]] = True
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    return ids, reach


def closure_row(o: Ontology, a: str) -> set[str]:
    ids, reach = warshall_closure(o)
    i = ids.index(a)
    return {ids[j] for j in range(len(ids)) if reach[i, j]}


def naive_match(terms: dict[tuple[str, ...], str], cell: str):
    """Longest term among all token spans; earliest start on ties.

    Returns (concept, qualifier surface tokens) or None.
    """
    raw = []
    for tok in cell.split():
        stripped = tok.strip(string.punctuation)
        if stripped:
            raw.append(stripped)
    low = [t.lower() for t in raw]
    spans = []
    for i in range(len(low)):
        for j in range(i + 1, len(low) + 1):
            if tuple(low[i:j]) in terms:
                spans.append((-(j - i), i, j))
    if not spans:
        return None
    _, i, j = min(spans)
    return terms[tuple(low[i:j])], raw[:i] + raw[j:]


def brute_discover(o: Ontology, left_cells, right_cells, objects, max_depth, mode="qualifier"):
    """Set of (subject, predicate, object) from every cell pair and every simple path."""
    terms = {}
    label = {}
    for c in o.concepts:
        label[c.id] = c.label
        for t in (c.label, *c.synonyms):
            terms[tuple(t.lower().split())] = c.id
    result = set()
    for lcell in left_cells:
        lm = naive_match(terms, lcell)
        if lm is None:
            continue
        for rcell, obj in zip(right_cells, objects):
            rm = naive_match(terms, rcell)
            if rm is None or not obj:
                continue
            path = best_path(dfs_paths(o, lm[0], rm[0], max_depth))
            if path is None:
                continue
            if mode == "qualifier" and lm[1]:
                pred = " ".join(lm[1])
            elif len(path) > 2:
                pred = "via " + ", ".join(label[c] for c in path[1:-1])
            elif len(path) == 1:
                pred = "same-as"
            else:
                link = next(
                    l for l in o.links if {l.source, l.target} == {path[0], path[1]}
                )
                pred = link.label or "linked-to"
            result.add((label[lm[0]], pred, obj))
    return result


# ---------------------------------------------------------------- generators

QUALIFIERS = ["high", "low", "mild", "Severe"]


def random_ontology(rng: random.Random, max_concepts=12, max_links=20) -> Ontology:
    n = rng.randint(1, max_concepts)
    concepts = []
    for i in range(n):
        label = f"Term{i}" if rng.random() < 0.6 else f"Term{rng.randrange(n)} Part{i}"
        syn = (f"Alias{i}",) if rng.random() < 0.3 else ()
        concepts.append(Concept(f"c{i:02d}", label, syn))
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    rng.shuffle(pairs)
    target = rng.randint(0, max_links)
    chosen, seen = [], set()
    for a, b in pairs:
        if len(chosen) >= target:
            break
        if frozenset((a, b)) in seen:
            continue
        seen.add(frozenset((a, b)))
        label = rng.choice([None, "rel", "part-of"])
        chosen.append(Link(f"c{a:02d}", f"c{b:02d}", label))
    return Ontology(tuple(concepts), tuple(chosen))


def random_cell(rng: random.Random, o: Ontology) -> str:
    r = rng.random()
    if r < 0.15:
        return rng.choice(["", "nothing here", "High"])
    c = rng.choice(o.concepts)
    term = rng.choice((c.label, *c.synonyms))
    parts = [term]
    if rng.random() < 0.6:
        parts.insert(0, rng.choice(QUALIFIERS))
    if rng.random() < 0.2:
        parts.append(rng.choice(QUALIFIERS))
    return " ".join(parts)
