"""Thesaurus lookup: resolve free-text cells to ontology concepts.

A cell such as ``"High Blood Sugar"`` is tokenized, the longest lexicon term
occurring as a contiguous token run is taken as the concept, and whatever is
left over (``"High"``) becomes the qualifier.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

if TYPE_CHECKING:
    from .ontology import Ontology

Term = tuple[str, ...]


def _is_edge_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_edge_punct(token[start]):
        start += 1
    while end > start and _is_edge_punct(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> list[str]:
    """Split on whitespace and strip edge punctuation, keeping original case."""
    out = []
    for raw in text.split():
        tok = _strip_punct(raw)
        if tok:
            out.append(tok)
    return out


def normalize(text: str) -> list[str]:
    """Lowercased token list used for every lexicon comparison.

    >>> normalize("  Blood   Pressure. ")
    ['blood', 'pressure']
    >>> normalize("p-AminoPhenol")
    ['p-aminophenol']
    """
    # lowercase before stripping: lower() can change a character's category
    return tokenize(text.lower())


class MatchKind(str, Enum):
    LABEL = "label"
    SYNONYM = "synonym"


class LexiconCollisionError(ValueError):
    def __init__(self, collisions: Sequence[tuple[Term, str, str]]):
        self.collisions = list(collisions)
        msg = "; ".join(
            f"term {' '.join(t)!r} claimed by {a!r} and {b!r}" for t, a, b in self.collisions
        )
        super().__init__(f"lexicon collision: {msg}")


@dataclass(frozen=True)
class Lexicon:
    """Injective map from normalized term to ``(concept id, match kind)``."""

    entries: Mapping[Term, tuple[str, MatchKind]]

    def __post_init__(self):
        object.__setattr__(self, "_max_len", max((len(t) for t in self.entries), default=0))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, term) -> bool:
        if isinstance(term, str):
            term = tuple(normalize(term))
        return term in self.entries

    def lookup(self, term: str | Term) -> str | None:
        if isinstance(term, str):
            term = tuple(normalize(term))
        hit = self.entries.get(term)
        return hit[0] if hit else None

    @property
    def max_term_length(self) -> int:
        return self._max_len


@dataclass(frozen=True)
class ConceptMatch:
    concept: str
    kind: MatchKind
    tokens: tuple[str, ...]
    start: int
    end: int
    # surface forms (original case) of the qualifier tokens
    qualifier_surface: tuple[str, ...] = ()

    @property
    def matched_tokens(self) -> tuple[str, ...]:
        return self.tokens[self.start : self.end]

    @property
    def qualifier(self) -> tuple[str, ...]:
        return self.tokens[: self.start] + self.tokens[self.end :]

    @property
    def qualifier_text(self) -> str:
        return " ".join(self.qualifier_surface)


def build_lexicon(ontology: Ontology) -> Lexicon:
    entries: dict[Term, tuple[str, MatchKind]] = {}
    collisions = []
    for concept in ontology.concepts:
        terms = [(concept.label, MatchKind.LABEL)]
        terms += [(s, MatchKind.SYNONYM) for s in concept.synonyms]
        for text, kind in terms:
            term = tuple(normalize(text))
            if not term:
                continue
            prev = entries.get(term)
            if prev is not None:
                collisions.append((term, prev[0], concept.id))
                continue
            entries[term] = (concept.id, kind)
    if collisions:
        raise LexiconCollisionError(collisions)
    return Lexicon(entries)


def match_cell(lexicon: Lexicon, cell: str) -> ConceptMatch | None:
    """Longest contiguous lexicon term in ``cell``; earliest start wins ties."""
    normalized, original = [], []
    for raw in cell.split():
        low = _strip_punct(raw.lower())
        if low:
            normalized.append(low)
            original.append(_strip_punct(raw) or low)
    tokens = tuple(normalized)
    n = len(tokens)
    for size in range(min(lexicon.max_term_length, n), 0, -1):
        best = None
        for start in range(n - size + 1):
            hit = lexicon.entries.get(tokens[start : start + size])
            if hit is None:
                continue
            if best is None or (start, hit[0]) < (best[0], best[1][0]):
                best = (start, hit)
        if best is not None:
            start, (concept, kind) = best
            end = start + size
            return ConceptMatch(
                concept=concept,
                kind=kind,
                tokens=tokens,
                start=start,
                end=end,
                qualifier_surface=tuple(original[:start] + original[end:]),
            )
    return None


def match_column(
    lexicon: Lexicon, values: Iterable[tuple[int, str]]
) -> list[tuple[int, ConceptMatch]]:
    out = []
    for idx, cell in values:
        m = match_cell(lexicon, cell)
        if m is not None:
            out.append((idx, m))
    return out
