"""Latent table discovery.

Both correspondence columns are resolved to concepts, every (left, right)
pair of matches is connected by the shortest ontology path within the depth
bound, and each connected pair becomes one ``(subject, predicate, object)``
row of the latent table.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .matcher import ConceptMatch, Lexicon, build_lexicon, match_column
from .ontology import Ontology, OntologyValidationError, SemanticPath, shortest_path, validate
from .tabular import ColumnRef, Table, TableError, column_values

log = logging.getLogger(__name__)

DEFAULT_MAX_DEPTH = 4
PREDICATE_HEADER = "Condition"
PROVENANCE_COLUMNS = ("path", "source_rows")


class PredicateMode(str, Enum):
    QUALIFIER = "qualifier"
    PATH = "path"


@dataclass(frozen=True)
class DiscoveryRequest:
    left: ColumnRef
    right: ColumnRef
    projection: str | None = None
    max_depth: int = DEFAULT_MAX_DEPTH
    predicate_mode: PredicateMode = PredicateMode.QUALIFIER
    # display names for (subject, predicate, object); derived from the columns when unset
    headers: tuple[str, str, str] | None = None

    def __post_init__(self):
        if not isinstance(self.max_depth, int) or self.max_depth < 1:
            raise ValueError(f"max_depth must be a positive integer, got {self.max_depth!r}")
        object.__setattr__(self, "predicate_mode", PredicateMode(self.predicate_mode))
        if self.headers is not None:
            if len(self.headers) != 3:
                raise ValueError("headers must name exactly three columns")
            object.__setattr__(self, "headers", tuple(self.headers))


@dataclass(frozen=True)
class Provenance:
    """One source pair behind a latent row (0-based row indices)."""

    left_row: int
    right_row: int
    right_qualifier: tuple[str, ...] = ()


@dataclass(frozen=True)
class LatentRow:
    subject: str
    predicate: str
    object: str
    path: SemanticPath
    provenance: tuple[Provenance, ...]
    tables: tuple[str, str] = ("left", "right")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)

    @property
    def left_rows(self) -> list[int]:
        return sorted({p.left_row for p in self.provenance})


@dataclass(frozen=True)
class DiscoveryStats:
    left_matches: int = 0
    right_matches: int = 0
    pairs_examined: int = 0
    paths_found: int = 0
    rows_emitted: int = 0


@dataclass(frozen=True)
class LatentTable:
    headers: tuple[str, str, str]
    rows: tuple[LatentRow, ...] = ()
    stats: DiscoveryStats = field(default_factory=DiscoveryStats, compare=False)

    def __len__(self) -> int:
        return len(self.rows)

    def triples(self) -> list[tuple[str, str, str]]:
        return [r.key for r in self.rows]


def path_predicate(path: SemanticPath, ontology: Ontology) -> str:
    """Predicate text naming the concepts between the two endpoints.

    Direct links have no intermediate concept, so the link label (or
    ``linked-to``) is used instead; a depth-0 path yields ``same-as``.
    """
    inner = path.nodes[1:-1]
    if inner:
        return "via " + ", ".join(ontology.label(c) for c in inner)
    if path.depth == 0:
        return "same-as"
    found = ontology.link_between(path.nodes[0], path.nodes[1])
    if found is not None and found[0].label:
        return found[0].label
    return "linked-to"


def _predicate(mode: PredicateMode, left: ConceptMatch, path: SemanticPath, o: Ontology) -> str:
    if mode is PredicateMode.QUALIFIER and left.qualifier_surface:
        return left.qualifier_text
    # an empty qualifier would leave the RDF predicate blank
    return path_predicate(path, o)


def discover(
    request: DiscoveryRequest,
    left_table: Table,
    right_table: Table,
    ontology: Ontology,
    *,
    lexicon: Lexicon | None = None,
    workers: int | None = None,
) -> LatentTable:
    """Materialize the latent table linking ``request.left`` to ``request.right``.

    With ``workers > 1`` the left matches are processed on a thread pool; the
    merge afterwards is serial, so the result does not depend on scheduling.
    """
    violations = validate(ontology)
    if violations:
        raise OntologyValidationError(violations)
    if request.projection is not None:
        right_table.column_index(request.projection)
    lexicon = lexicon or build_lexicon(ontology)

    left_matches = match_column(lexicon, column_values(left_table, request.left))
    right_matches = match_column(lexicon, column_values(right_table, request.right))
    proj_idx = (
        right_table.column_index(request.projection)
        if request.projection is not None
        else right_table.column_index(request.right.column)
    )

    path_cache: dict[tuple[str, str], SemanticPath | None] = {}

    def connect(a: str, b: str) -> SemanticPath | None:
        key = (a, b)
        if key not in path_cache:
            # racing writers store equal values
            path_cache[key] = shortest_path(ontology, a, b, request.max_depth)
        return path_cache[key]

    def scan(item: tuple[int, ConceptMatch]):
        li, lm = item
        found = []
        for ri, rm in right_matches:
            path = connect(lm.concept, rm.concept)
            if path is None:
                continue
            obj = right_table.rows[ri][proj_idx]
            if not obj:
                log.debug("skipping right row %d: empty object cell", ri)
                continue
            found.append(
                (
                    ontology.label(lm.concept),
                    _predicate(request.predicate_mode, lm, path, ontology),
                    obj,
                    path,
                    Provenance(li, ri, rm.qualifier),
                )
            )
        return found

    if workers and workers > 1 and len(left_matches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_left = list(pool.map(scan, left_matches))
    else:
        per_left = [scan(item) for item in left_matches]

    merged: dict[tuple[str, str, str], list] = {}
    paths_found = 0
    for found in per_left:
        for subject, predicate, obj, path, prov in found:
            paths_found += 1
            key = (subject, predicate, obj)
            if key in merged:
                merged[key][1].append(prov)
            else:
                merged[key] = [path, [prov]]

    tables = (left_table.name, right_table.name)
    rows = tuple(
        LatentRow(s, p, o, path, tuple(provs), tables)
        for (s, p, o), (path, provs) in merged.items()
    )
    headers = request.headers or (
        request.left.column,
        PREDICATE_HEADER,
        request.projection if request.projection is not None else request.right.column,
    )
    stats = DiscoveryStats(
        left_matches=len(left_matches),
        right_matches=len(right_matches),
        pairs_examined=len(left_matches) * len(right_matches),
        paths_found=paths_found,
        rows_emitted=len(rows),
    )
    return LatentTable(headers, rows, stats)


def explain(row: LatentRow, ontology: Ontology) -> str:
    """Readable inference trace: one line per hop, then the source rows."""
    lines = []
    for a, b in row.path.hops():
        found = ontology.link_between(a, b)
        la, lb = ontology.label(a), ontology.label(b)
        if found is None:
            lines.append(f"{la} —→ {lb}")
            continue
        link, forward = found
        tag = f"({link.label})" if link.label else ""
        lines.append(f"{la} —{tag}→ {lb}" if forward else f"{la} ←{tag}— {lb}")
    if not lines:
        lines.append(f"{ontology.label(row.path.nodes[0])} (same concept)")
    left_name, right_name = row.tables
    sources = [f"{left_name} row {p.left_row + 1}, {right_name} row {p.right_row + 1}" for p in row.provenance]
    lines.append("from " + "; ".join(sources))
    return "\n".join(lines)


def format_source_rows(row: LatentRow) -> str:
    return ";".join(f"{p.left_row + 1}:{p.right_row + 1}" for p in row.provenance)


def latent_to_table(lt: LatentTable, provenance: bool = False, name: str = "latent") -> Table:
    """Flatten to a plain :class:`Table`, optionally with provenance columns.

    ``path`` holds the concept ids joined by ``>``; ``source_rows`` holds
    ``left:right`` pairs of 1-based data-row numbers separated by ``;``.
    """
    columns = tuple(lt.headers)
    if provenance:
        columns += PROVENANCE_COLUMNS
    rows = []
    for r in lt.rows:
        cells = [r.subject, r.predicate, r.object]
        if provenance:
            cells += [">".join(r.path.nodes), format_source_rows(r)]
        rows.append(tuple(cells))
    try:
        return Table(name, columns, tuple(rows))
    except TableError:
        # headers may repeat (e.g. left and right columns share a name)
        return Table(name, _dedupe(columns), tuple(rows))


def _dedupe(columns: tuple[str, ...]) -> tuple[str, ...]:
    seen: dict[str, int] = {}
    out = []
    for c in columns:
        n = seen.get(c, 0)
        seen[c] = n + 1
        out.append(c if n == 0 else f"{c}_{n + 1}")
    return tuple(out)
