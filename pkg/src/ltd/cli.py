"""``ltd`` command line: discover, closure, match, emit-rdf.

Exit status is 0 on success (empty results included), 1 on usage errors and
2 when an input file cannot be parsed or fails validation. Data goes to the
output file or stdout; everything else goes to stderr.
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .core import (
    DEFAULT_MAX_DEPTH,
    DiscoveryRequest,
    PredicateMode,
    discover,
    explain,
    latent_to_table,
)
from .matcher import build_lexicon, match_cell, normalize
from .ontology import (
    Ontology,
    OntologyError,
    load_ontology,
    reachable_depths,
    shortest_path,
)
from .rdf import DEFAULT_BASE, MintingPolicy, RdfError, rows_to_triples, serialize_ntriples
from .tabular import ColumnRef, TableError, dump_table, load_table

BASE_ENV = "LTD_BASE_IRI"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _eprint(*args) -> None:
    print(*args, file=sys.stderr)


@dataclass
class RunConfig:
    ontology: Path | None = None
    left: Path | None = None
    left_column: str | None = None
    right: Path | None = None
    right_column: str | None = None
    projection: str | None = None
    max_depth: int = DEFAULT_MAX_DEPTH
    predicate_mode: PredicateMode = PredicateMode.QUALIFIER
    base: str = DEFAULT_BASE
    delimiter: str = ","
    out: Path | None = None

    def check_paths(self) -> None:
        for p in (self.ontology, self.left, self.right):
            if p is not None and not p.is_file():
                raise InputError(f"{p}: no such file")


def split_column_spec(spec: str, column: str | None, flag: str) -> tuple[Path, str]:
    """``"drug.csv:Chemical Composition"`` -> (path, column).

    The explicit ``--*-column`` option wins, in which case ``spec`` is taken
    verbatim as the path (so file names may contain colons).
    """
    if column is not None:
        return Path(spec), column
    path, sep, col = spec.partition(":")
    if not sep or not path or not col:
        raise UsageError(f"{flag} expects PATH:COLUMN (or pass {flag}-column), got {spec!r}")
    return Path(path), col


def _read(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _load_ontology(path: Path) -> Ontology:
    try:
        return load_ontology(_read(path))
    except OntologyError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_table(path: Path, delimiter: str):
    try:
        return load_table(_read(path), path.stem, delimiter=delimiter)
    except TableError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write(data: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        out.write_bytes(data)


def resolve_concept(ontology: Ontology, name: str) -> str:
    """Accept a concept id (any case), label or synonym."""
    if name in ontology:
        return name
    folded = {c.id.lower(): c.id for c in ontology.concepts}
    if name.lower() in folded:
        return folded[name.lower()]
    hit = build_lexicon(ontology).lookup(tuple(normalize(name)))
    if hit is not None:
        return hit
    near = difflib.get_close_matches(name.lower(), list(folded), n=3, cutoff=0.5)
    hint = f"; nearest: {', '.join(folded[n] for n in near)}" if near else ""
    raise InputError(f"unknown concept {name!r}{hint}")


# ------------------------------------------------------------------ commands


def cmd_discover(args) -> int:
    left, left_col = split_column_spec(args.left, args.left_column, "--left")
    right, right_col = split_column_spec(args.right, args.right_column, "--right")
    cfg = RunConfig(
        ontology=Path(args.ontology),
        left=left,
        left_column=left_col,
        right=right,
        right_column=right_col,
        projection=args.project,
        max_depth=args.max_depth,
        predicate_mode=PredicateMode(args.predicate_mode),
        delimiter=args.delimiter,
        out=Path(args.out) if args.out else None,
    )
    cfg.check_paths()
    ontology = _load_ontology(cfg.ontology)
    left_table = _load_table(cfg.left, cfg.delimiter)
    right_table = _load_table(cfg.right, cfg.delimiter)
    request = DiscoveryRequest(
        left=ColumnRef(left_table.name, cfg.left_column),
        right=ColumnRef(right_table.name, cfg.right_column),
        projection=cfg.projection,
        max_depth=cfg.max_depth,
        predicate_mode=cfg.predicate_mode,
        headers=tuple(args.headers) if args.headers else None,
    )
    try:
        lt = discover(request, left_table, right_table, ontology, workers=args.workers)
    except TableError as exc:
        raise InputError(str(exc)) from exc

    _write(dump_table(latent_to_table(lt, provenance=args.provenance), cfg.delimiter), cfg.out)
    if args.explain:
        for row in lt.rows:
            _eprint(explain(row, ontology))
    if not lt.rows:
        _eprint("warning: latent table is empty (no connected value pairs)")
    s = lt.stats
    _eprint(
        json.dumps(
            {
                "rows_emitted": s.rows_emitted,
                "pairs_examined": s.pairs_examined,
                "paths_found": s.paths_found,
            }
        )
    )
    return EXIT_OK


def cmd_closure(args) -> int:
    cfg = RunConfig(ontology=Path(args.ontology), max_depth=args.max_depth)
    cfg.check_paths()
    ontology = _load_ontology(cfg.ontology)
    start = resolve_concept(ontology, args.from_)
    if args.to is not None:
        goal = resolve_concept(ontology, args.to)
        path = shortest_path(ontology, start, goal, cfg.max_depth, directed=args.directed)
        if path is None:
            print("no path")
        else:
            print(f"{' -> '.join(path.nodes)} (depth {path.depth})")
        return EXIT_OK
    depths = reachable_depths(ontology, start, cfg.max_depth, directed=args.directed)
    for cid, d in sorted(depths.items(), key=lambda kv: (kv[1], kv[0])):
        print(f"{d}\t{cid}\t{ontology.label(cid)}")
    return EXIT_OK


def cmd_match(args) -> int:
    cfg = RunConfig(ontology=Path(args.ontology))
    cfg.check_paths()
    ontology = _load_ontology(cfg.ontology)
    m = match_cell(build_lexicon(ontology), args.term)
    if m is None:
        print("no match")
        return EXIT_OK
    print(f"concept: {m.concept}")
    print(f"label: {ontology.label(m.concept)}")
    print(f"kind: {m.kind.value}")
    print(f"matched: {' '.join(m.matched_tokens)}")
    print(f"qualifier: {' '.join(m.qualifier)}")
    return EXIT_OK


def cmd_emit_rdf(args) -> int:
    latent = Path(args.latent)
    if not latent.is_file():
        raise InputError(f"{latent}: no such file")
    try:
        policy = MintingPolicy(args.base or os.environ.get(BASE_ENV) or DEFAULT_BASE, args.literal_objects)
    except RdfError as exc:
        raise UsageError(f"--base: {exc}") from exc
    table = _load_table(latent, args.delimiter)
    if len(table.columns) < 3:
        raise InputError(
            f"{latent}: a latent table needs subject, predicate and object columns, "
            f"found {list(table.columns)}"
        )
    rows = []
    for i, row in enumerate(table.rows, start=2):
        if not all(row[:3]):
            raise InputError(f"{latent}: record {i} has an empty subject, predicate or object")
        rows.append(tuple(row[:3]))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            triples = rows_to_triples(rows, policy)
        except RdfError as exc:
            raise InputError(f"{latent}: {exc}") from exc
    for w in caught:
        _eprint(f"warning: {w.message}")
    _write(serialize_ntriples(triples), Path(args.out) if args.out else None)
    _eprint(json.dumps({"triples": len(triples)}))
    return EXIT_OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    version = f"ltd {__version__}"
    parser = _Parser(prog="ltd", description="Latent table discovery through a domain ontology.")
    parser.add_argument("--version", action="version", version=version)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("discover", help="discover the latent table between two columns")
    p.add_argument("--version", action="version", version=version)
    p.add_argument("--left", required=True, metavar="PATH:COLUMN")
    p.add_argument("--right", required=True, metavar="PATH:COLUMN")
    p.add_argument("--left-column", help="left column name; --left is then the bare path")
    p.add_argument("--right-column", help="right column name; --right is then the bare path")
    p.add_argument("--project", metavar="COLUMN", help="right-table column shown as the object")
    p.add_argument("--ontology", required=True, metavar="PATH")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--max-depth", type=_positive, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--predicate-mode", choices=[m.value for m in PredicateMode], default="qualifier")
    p.add_argument("--delimiter", type=_delimiter, default=",")
    p.add_argument("--provenance", action="store_true", help="append path and source_rows columns")
    p.add_argument("--headers", nargs=3, metavar=("SUBJECT", "PREDICATE", "OBJECT"))
    p.add_argument("--workers", type=_positive, default=None)
    p.add_argument("--explain", action="store_true", help="print an inference trace per row to stderr")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("closure", help="shortest path or reachable set of a concept")
    p.add_argument("--version", action="version", version=version)
    p.add_argument("--ontology", required=True, metavar="PATH")
    p.add_argument("--from", dest="from_", required=True, metavar="CONCEPT")
    p.add_argument("--to", metavar="CONCEPT")
    p.add_argument("--max-depth", type=_non_negative, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--directed", action="store_true", help="follow links only as written")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("match", help="resolve a term to a concept")
    p.add_argument("--version", action="version", version=version)
    p.add_argument("--ontology", required=True, metavar="PATH")
    p.add_argument("--term", required=True)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("emit-rdf", help="convert a latent table file to N-Triples")
    p.add_argument("--version", action="version", version=version)
    p.add_argument("--latent", required=True, metavar="PATH")
    p.add_argument("--base", help=f"base IRI (default: ${BASE_ENV} or {DEFAULT_BASE})")
    p.add_argument("--literal-objects", action="store_true", help="emit objects as plain literals")
    p.add_argument("--delimiter", type=_delimiter, default=",")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_emit_rdf)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _delimiter(text: str) -> str:
    text = {"\\t": "\t", "tab": "\t"}.get(text, text)
    if len(text) != 1:
        raise argparse.ArgumentTypeError("must be a single character")
    return text


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help/--version exit 0, argument errors exit EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _eprint(f"ltd: error: {exc}")
        return EXIT_USAGE
    except InputError as exc:
        _eprint(f"ltd: error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
