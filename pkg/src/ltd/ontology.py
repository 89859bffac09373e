"""Concept graph: loading, validation and bounded path queries.

An ontology document is JSON::

    {
      "concepts": [{"id": "fever", "label": "Fever", "synonyms": ["Pyrexia"]}],
      "links": [{"source": "temperature", "target": "fever", "label": "indicates"}]
    }

Links are stored with the direction they were written in, but every query
walks them in both directions unless ``directed=True`` is passed.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import BinaryIO, Iterator

from .matcher import normalize

ID_PATTERN = re.compile(r"[A-Za-z0-9_-]+")

_TOP_KEYS = {"concepts", "links"}
_CONCEPT_KEYS = {"id", "label", "synonyms"}
_LINK_KEYS = {"source", "target", "label"}


class OntologyError(ValueError):
    pass


class OntologyParseError(OntologyError):
    """Malformed document. ``problems`` holds every issue found."""

    def __init__(self, problems: list[str], line: int | None = None, column: int | None = None):
        self.problems = problems
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"malformed ontology document{where}: " + "; ".join(problems))


class OntologyValidationError(OntologyError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__(
            f"{len(violations)} ontology violation(s): " + "; ".join(violations)
        )


class UnknownConceptError(OntologyError, LookupError):
    def __init__(self, concept_id: str):
        self.concept_id = concept_id
        super().__init__(f"unknown concept id {concept_id!r}")


@dataclass(frozen=True)
class Concept:
    id: str
    label: str
    synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class Link:
    source: str
    target: str
    label: str | None = None


@dataclass(frozen=True)
class SemanticPath:
    nodes: tuple[str, ...]

    @property
    def depth(self) -> int:
        return len(self.nodes) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[str]:
        return iter(self.nodes)

    def hops(self) -> list[tuple[str, str]]:
        return list(zip(self.nodes, self.nodes[1:]))


@dataclass(frozen=True)
class Ontology:
    """Immutable concept graph. Concept order follows the source document."""

    concepts: tuple[Concept, ...]
    links: tuple[Link, ...] = field(default=())

    @cached_property
    def by_id(self) -> dict[str, Concept]:
        return {c.id: c for c in self.concepts}

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        return self._adjacency(directed=True)

    @cached_property
    def _both(self) -> dict[str, tuple[str, ...]]:
        return self._adjacency(directed=False)

    def _adjacency(self, directed: bool) -> dict[str, tuple[str, ...]]:
        adj: dict[str, set[str]] = {c.id: set() for c in self.concepts}
        for link in self.links:
            if link.source not in adj or link.target not in adj or link.source == link.target:
                continue
            adj[link.source].add(link.target)
            if not directed:
                adj[link.target].add(link.source)
        # sorted neighbour lists make every traversal deterministic
        return {k: tuple(sorted(v)) for k, v in adj.items()}

    @cached_property
    def _link_index(self) -> dict[tuple[str, str], Link]:
        return {(l.source, l.target): l for l in self.links}

    def neighbors(self, concept_id: str, directed: bool = False) -> tuple[str, ...]:
        self._require(concept_id)
        return (self._out if directed else self._both)[concept_id]

    def link_between(self, a: str, b: str) -> tuple[Link, bool] | None:
        """The link joining ``a`` and ``b`` and whether it runs a -> b."""
        link = self._link_index.get((a, b))
        if link is not None:
            return link, True
        link = self._link_index.get((b, a))
        if link is not None:
            return link, False
        return None

    def label(self, concept_id: str) -> str:
        return self._require(concept_id).label

    def __contains__(self, concept_id: object) -> bool:
        return concept_id in self.by_id

    def _require(self, concept_id: str) -> Concept:
        try:
            return self.by_id[concept_id]
        except KeyError:
            raise UnknownConceptError(concept_id) from None


def validate(ontology: Ontology) -> list[str]:
    """Every invariant violation in ``ontology``; empty when valid."""
    problems = []
    seen_ids: set[str] = set()
    for c in ontology.concepts:
        if not isinstance(c.id, str) or not ID_PATTERN.fullmatch(c.id):
            problems.append(f"concept id {c.id!r} must match [A-Za-z0-9_-]+")
        if c.id in seen_ids:
            problems.append(f"duplicate concept id {c.id!r}")
        seen_ids.add(c.id)
        if not normalize(c.label or ""):
            problems.append(f"concept {c.id!r} has an empty label")

    owner: dict[tuple[str, ...], str] = {}
    for c in ontology.concepts:
        own: set[tuple[str, ...]] = set()
        for is_label, text in [(True, c.label)] + [(False, s) for s in c.synonyms]:
            term = tuple(normalize(text or ""))
            if not term:
                if not is_label:
                    problems.append(f"concept {c.id!r} has an empty synonym")
                continue
            if term in own:
                problems.append(
                    f"concept {c.id!r} repeats term {' '.join(term)!r} among its label and synonyms"
                )
                continue
            own.add(term)
            if term in owner and owner[term] != c.id:
                problems.append(
                    f"lexicon collision: term {' '.join(term)!r} used by "
                    f"{owner[term]!r} and {c.id!r}"
                )
            else:
                owner.setdefault(term, c.id)

    pairs: set[tuple[str, str]] = set()
    for link in ontology.links:
        for end in (link.source, link.target):
            if end not in seen_ids:
                problems.append(
                    f"link {link.source!r} -> {link.target!r} references undeclared concept {end!r}"
                )
        if link.source == link.target:
            problems.append(f"self-loop link on {link.source!r}")
        key = (link.source, link.target)
        if key in pairs:
            problems.append(f"duplicate link {link.source!r} -> {link.target!r}")
        pairs.add(key)
    return problems


def _check_keys(obj, allowed: set[str], required: set[str], where: str, problems: list[str]) -> bool:
    if not isinstance(obj, dict):
        problems.append(f"{where} must be an object")
        return False
    for key in obj:
        if key not in allowed:
            problems.append(f"unknown key {key!r} in {where}")
    for key in sorted(required - obj.keys()):
        problems.append(f"missing key {key!r} in {where}")
    return True


def _text(obj: dict, key: str, where: str, problems: list[str], optional=False) -> str | None:
    value = obj.get(key)
    if value is None and optional:
        return None
    if not isinstance(value, str):
        if key in obj:
            problems.append(f"{where}.{key} must be a string")
        return None
    return value


def ontology_from_dict(data) -> Ontology:
    """Build an :class:`Ontology` from decoded JSON, checking the schema only."""
    problems: list[str] = []
    if not _check_keys(data, _TOP_KEYS, {"concepts"}, "document", problems):
        raise OntologyParseError(problems)

    concepts = []
    raw_concepts = data.get("concepts", [])
    if not isinstance(raw_concepts, list):
        problems.append("'concepts' must be a list")
        raw_concepts = []
    for i, item in enumerate(raw_concepts):
        where = f"concepts[{i}]"
        if not _check_keys(item, _CONCEPT_KEYS, {"id", "label"}, where, problems):
            continue
        cid = _text(item, "id", where, problems)
        label = _text(item, "label", where, problems)
        synonyms = item.get("synonyms", [])
        if not isinstance(synonyms, list) or not all(isinstance(s, str) for s in synonyms):
            problems.append(f"{where}.synonyms must be a list of strings")
            synonyms = []
        if cid is not None and label is not None:
            concepts.append(Concept(cid, label, tuple(synonyms)))

    links = []
    raw_links = data.get("links", [])
    if not isinstance(raw_links, list):
        problems.append("'links' must be a list")
        raw_links = []
    for i, item in enumerate(raw_links):
        where = f"links[{i}]"
        if not _check_keys(item, _LINK_KEYS, {"source", "target"}, where, problems):
            continue
        src = _text(item, "source", where, problems)
        dst = _text(item, "target", where, problems)
        label = _text(item, "label", where, problems, optional=True)
        if src is not None and dst is not None:
            links.append(Link(src, dst, label))

    if problems:
        raise OntologyParseError(problems)
    return Ontology(tuple(concepts), tuple(links))


def load_ontology(source: BinaryIO | bytes | str) -> Ontology:
    """Parse and validate an ontology document.

    ``source`` may be a binary stream, raw bytes, or already-decoded text.
    Raises :class:`OntologyParseError` for syntax/schema problems and
    :class:`OntologyValidationError` listing every invariant violation.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise OntologyParseError([f"not UTF-8: {exc}"]) from exc
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise OntologyParseError([exc.msg], line=exc.lineno, column=exc.colno) from exc
    ontology = ontology_from_dict(data)
    violations = validate(ontology)
    if violations:
        raise OntologyValidationError(violations)
    return ontology


def dump_ontology(ontology: Ontology) -> str:
    concepts = []
    for c in ontology.concepts:
        entry = {"id": c.id, "label": c.label}
        if c.synonyms:
            entry["synonyms"] = list(c.synonyms)
        concepts.append(entry)
    links = []
    for l in ontology.links:
        entry = {"source": l.source, "target": l.target}
        if l.label is not None:
            entry["label"] = l.label
        links.append(entry)
    return json.dumps({"concepts": concepts, "links": links}, indent=2, ensure_ascii=False)


# ---------------------------------------------------------------- queries


def _check_depth(max_depth: int, minimum: int) -> None:
    if not isinstance(max_depth, int) or max_depth < minimum:
        raise ValueError(f"max_depth must be an integer >= {minimum}, got {max_depth!r}")


def _bfs_depths(ontology: Ontology, start: str, max_depth: int, reverse=False, directed=False):
    if directed and reverse:
        adj: dict[str, list[str]] = {c.id: [] for c in ontology.concepts}
        for src, targets in ontology._out.items():
            for dst in targets:
                adj[dst].append(src)
    else:
        adj = ontology._out if directed else ontology._both
    depth = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        d = depth[node]
        if d == max_depth:
            continue
        for nxt in adj[node]:
            if nxt not in depth:
                depth[nxt] = d + 1
                queue.append(nxt)
    return depth


def reachable_depths(
    ontology: Ontology, start: str, max_depth: int, directed: bool = False
) -> dict[str, int]:
    """Hop distance of every concept within ``max_depth`` of ``start``."""
    ontology._require(start)
    _check_depth(max_depth, 0)
    return _bfs_depths(ontology, start, max_depth, directed=directed)


def reachable_set(
    ontology: Ontology, start: str, max_depth: int, directed: bool = False
) -> set[str]:
    return set(reachable_depths(ontology, start, max_depth, directed))


def shortest_path(
    ontology: Ontology, start: str, goal: str, max_depth: int, directed: bool = False
) -> SemanticPath | None:
    """Fewest-hop path of at most ``max_depth`` edges, or ``None``.

    Among equally short paths the lexicographically smallest id sequence is
    returned: distances to ``goal`` are computed once, then the path is built
    greedily by always stepping to the smallest neighbour that stays on a
    shortest route.
    """
    ontology._require(start)
    ontology._require(goal)
    _check_depth(max_depth, 1)
    to_goal = _bfs_depths(ontology, goal, max_depth, reverse=True, directed=directed)
    if start not in to_goal:
        return None
    adj = ontology._out if directed else ontology._both
    nodes = [start]
    node = start
    while node != goal:
        remaining = to_goal[node] - 1
        node = next(n for n in adj[node] if to_goal.get(n) == remaining)
        nodes.append(node)
    return SemanticPath(tuple(nodes))


def iter_simple_paths(
    ontology: Ontology, start: str, goal: str, max_depth: int, directed: bool = False
) -> Iterator[SemanticPath]:
    ontology._require(start)
    ontology._require(goal)
    _check_depth(max_depth, 1)
    adj = ontology._out if directed else ontology._both
    if start == goal:
        yield SemanticPath((start,))
        return
    stack = [start]
    on_path = {start}

    def walk(node: str):
        if len(stack) - 1 == max_depth:
            return
        for nxt in adj[node]:
            if nxt in on_path:
                continue
            stack.append(nxt)
            if nxt == goal:
                yield SemanticPath(tuple(stack))
            else:
                on_path.add(nxt)
                yield from walk(nxt)
                on_path.discard(nxt)
            stack.pop()

    yield from walk(start)


def all_paths(
    ontology: Ontology, start: str, goal: str, max_depth: int, directed: bool = False
) -> list[SemanticPath]:
    """Every simple path of at most ``max_depth`` edges, shortest first."""
    paths = list(iter_simple_paths(ontology, start, goal, max_depth, directed))
    paths.sort(key=lambda p: (p.depth, p.nodes))
    return paths
