"""Latent rows to RDF triples, and a small N-Triples reader/writer.

Only IRIs and plain literals are produced; the reader accepts exactly that
subset back.
"""

from __future__ import annotations

import re
import warnings
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, BinaryIO, Iterable, Union
from urllib.parse import quote

if TYPE_CHECKING:
    from .core import LatentTable

DEFAULT_BASE = "http://example.org/ltd/"

_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
_IRI_FORBIDDEN = re.compile(r'[\x00-\x20<>"{}|^`\\]')


class RdfError(ValueError):
    pass


class NTriplesParseError(RdfError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class SlugCollisionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self):
        if not _SCHEME.match(self.value):
            raise RdfError(f"not an absolute IRI (no scheme): {self.value!r}")
        bad = _IRI_FORBIDDEN.search(self.value)
        if bad:
            raise RdfError(f"IRI {self.value!r} contains forbidden character {bad.group()!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Literal:
    value: str

    def __str__(self) -> str:
        return self.value


Node = Union[Iri, Literal]


@dataclass(frozen=True)
class RdfTriple:
    subject: Iri
    predicate: Iri
    object: Node

    def __post_init__(self):
        if not isinstance(self.subject, Iri) or not isinstance(self.predicate, Iri):
            raise RdfError("subject and predicate must be IRIs")
        if not isinstance(self.object, (Iri, Literal)):
            raise RdfError(f"object must be an Iri or Literal, got {type(self.object).__name__}")


class TermKind(str, Enum):
    CONCEPT = "concept"
    PREDICATE = "predicate"
    ENTITY = "entity"


@dataclass(frozen=True)
class MintingPolicy:
    base: str = DEFAULT_BASE
    object_as_literal: bool = False

    def __post_init__(self):
        base = self.base if self.base.endswith("/") else self.base + "/"
        Iri(base)
        object.__setattr__(self, "base", base)


def slug(term: str) -> str:
    """``"Dolo Cold"`` -> ``"dolo-cold"``; other unsafe bytes are %-encoded."""
    text = "-".join(term.lower().split())
    return quote(text, safe="-._~")


def mint_iri(policy: MintingPolicy, kind: TermKind | str, term: str) -> Iri:
    kind = TermKind(kind)
    s = slug(term)
    if not s:
        raise RdfError(f"cannot mint a {kind.value} IRI from an empty term")
    return Iri(f"{policy.base}{kind.value}/{s}")


def slug_collisions(terms: Iterable[str]) -> dict[str, list[str]]:
    """Slugs produced by more than one distinct term."""
    by_slug: dict[str, set[str]] = defaultdict(set)
    for t in terms:
        by_slug[slug(t)].add(t)
    return {s: sorted(ts) for s, ts in by_slug.items() if len(ts) > 1}


def rows_to_triples(
    rows: Iterable[tuple[str, str, str]], policy: MintingPolicy
) -> list[RdfTriple]:
    """Subject -> concept IRI, predicate -> predicate IRI, object -> entity IRI or literal."""
    rows = list(rows)
    columns = [(TermKind.CONCEPT, 0), (TermKind.PREDICATE, 1)]
    if not policy.object_as_literal:
        columns.append((TermKind.ENTITY, 2))
    for kind, i in columns:
        clashes = slug_collisions(r[i] for r in rows)
        if clashes:
            detail = "; ".join(f"{s}: {', '.join(map(repr, ts))}" for s, ts in sorted(clashes.items()))
            warnings.warn(
                f"distinct {kind.value} terms share an IRI: {detail}",
                SlugCollisionWarning,
                stacklevel=2,
            )

    triples = []
    for s, p, o in rows:
        obj: Node = Literal(o) if policy.object_as_literal else mint_iri(policy, TermKind.ENTITY, o)
        triples.append(
            RdfTriple(
                mint_iri(policy, TermKind.CONCEPT, s),
                mint_iri(policy, TermKind.PREDICATE, p),
                obj,
            )
        )
    return triples


def to_triples(lt: LatentTable, policy: MintingPolicy | None = None) -> list[RdfTriple]:
    return rows_to_triples(((r.subject, r.predicate, r.object) for r in lt.rows), policy or MintingPolicy())


# ------------------------------------------------------------- N-Triples

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {v[1]: k for k, v in _ESCAPES.items()}
_ESCAPE_RE = re.compile(r'[\\"\n\r\t]')


def escape_literal(text: str) -> str:
    return _ESCAPE_RE.sub(lambda m: _ESCAPES[m.group()], text)


def _term(node: Node) -> str:
    if isinstance(node, Iri):
        return f"<{node.value}>"
    return f'"{escape_literal(node.value)}"'


def serialize_ntriples(triples: Iterable[RdfTriple]) -> bytes:
    lines = [f"{_term(t.subject)} {_term(t.predicate)} {_term(t.object)} .\n" for t in triples]
    return "".join(lines).encode("utf-8")


_LINE = re.compile(
    r"""[ \t]*<(?P<s>[^>]*)>[ \t]+<(?P<p>[^>]*)>[ \t]+
    (?:<(?P<o>[^>]*)>|"(?P<lit>(?:[^"\\\n\r]|\\.)*)")
    [ \t]*\.[ \t]*""",
    re.VERBOSE,
)
_UNESCAPE_RE = re.compile(r"\\(.)")


def _unescape(text: str, line_no: int) -> str:
    def sub(m):
        ch = m.group(1)
        if ch not in _UNESCAPES:
            raise NTriplesParseError(line_no, f"unsupported escape \\{ch}")
        return _UNESCAPES[ch]

    return _UNESCAPE_RE.sub(sub, text)


def parse_ntriples(source: BinaryIO | bytes | str) -> list[RdfTriple]:
    """Read back what :func:`serialize_ntriples` writes. Blank lines are ignored."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise NTriplesParseError(1, f"not UTF-8: {exc}") from exc
    triples = []
    # only LF terminates a statement; str.splitlines would also split on U+2028 etc.
    for line_no, line in enumerate(source.split("\n"), start=1):
        line = line.removesuffix("\r")
        if not line.strip():
            continue
        m = _LINE.fullmatch(line)
        if m is None:
            raise NTriplesParseError(line_no, f"malformed statement: {line!r}")
        try:
            obj: Node = (
                Iri(m.group("o")) if m.group("o") is not None else Literal(_unescape(m.group("lit"), line_no))
            )
            triples.append(RdfTriple(Iri(m.group("s")), Iri(m.group("p")), obj))
        except NTriplesParseError:
            raise
        except RdfError as exc:
            raise NTriplesParseError(line_no, str(exc)) from exc
    return triples
