"""Positional documents, the term -> position-set map, and corpus persistence.

A document is a sequence of stems indexed by position 0..N-1 together with
the inverted view mapping each stem to its sorted occurrence positions.
Corpora persist as line-delimited UTF-8 (`#proxima-corpus v1` header,
one `doc_id<TAB>label<TAB>stems` record per document).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .textprep import TokenStream

__all__ = [
    "PositionalDocument",
    "Corpus",
    "CorpusFormatError",
    "build_document",
    "positions_of",
    "save_corpus",
    "load_corpus",
    "CORPUS_HEADER",
]

CORPUS_HEADER = "#proxima-corpus v1"
_UNLABELED = "-"


@dataclass(frozen=True)
class PositionalDocument:
    """A stem sequence plus its inverted position map (treat both as read-only)."""

    doc_id: str
    stems: tuple[str, ...]
    inverted: dict[str, list[int]]

    @property
    def n(self) -> int:
        """Number of positions (document length after preprocessing)."""
        return len(self.stems)


def build_document(doc_id: str, stream: TokenStream | Iterable[str]) -> PositionalDocument:
    """Index a stem sequence into a positional document."""
    stems = tuple(stream.stems if isinstance(stream, TokenStream) else stream)
    inverted: dict[str, list[int]] = {}
    for position, stem in enumerate(stems):
        inverted.setdefault(stem, []).append(position)
    return PositionalDocument(doc_id=doc_id, stems=stems, inverted=inverted)


_NO_POSITIONS: list[int] = []


def positions_of(doc: PositionalDocument, term: str) -> list[int]:
    """Sorted occurrence positions of ``term`` in ``doc`` (empty if absent)."""
    return doc.inverted.get(term, _NO_POSITIONS)


@dataclass
class Corpus:
    """Documents keyed by id, with an optional doc_id -> category label map."""

    documents: dict[str, PositionalDocument] = field(default_factory=dict)
    labels: dict[str, str] = field(default_factory=dict)

    def add(self, doc: PositionalDocument, label: str | None = None) -> None:
        if doc.doc_id in self.documents:
            raise ValueError(f"duplicate doc_id {doc.doc_id!r}")
        self.documents[doc.doc_id] = doc
        if label is not None:
            self.labels[doc.doc_id] = label

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[PositionalDocument]:
        return iter(self.documents.values())


class CorpusFormatError(ValueError):
    """Raised for malformed corpus files; messages carry the line number."""


def _check_field(value: str, what: str) -> str:
    if "\t" in value or "\n" in value:
        raise ValueError(f"{what} {value!r} may not contain tabs or newlines")
    return value


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus file; ``load_corpus`` restores it exactly."""
    lines = [CORPUS_HEADER]
    for doc in corpus:
        _check_field(doc.doc_id, "doc_id")
        if not doc.doc_id:
            raise ValueError("doc_id may not be empty")
        label = corpus.labels.get(doc.doc_id, _UNLABELED)
        _check_field(label, "label")
        if label == _UNLABELED and doc.doc_id in corpus.labels:
            raise ValueError(f"label {_UNLABELED!r} is reserved for unlabeled documents")
        for stem in doc.stems:
            if not stem or any(ch.isspace() for ch in stem):
                raise ValueError(f"stem {stem!r} in {doc.doc_id!r} is not storable")
        lines.append(f"{doc.doc_id}\t{label}\t{' '.join(doc.stems)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_corpus(path: str | Path) -> Corpus:
    """Read a corpus file written by ``save_corpus``."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise CorpusFormatError(f"{path}:1: empty file, expected {CORPUS_HEADER!r} header")
    if lines[0] != CORPUS_HEADER:
        if lines[0].startswith("#proxima-corpus"):
            raise CorpusFormatError(
                f"{path}:1: unsupported corpus version {lines[0]!r}, expected {CORPUS_HEADER!r}"
            )
        raise CorpusFormatError(f"{path}:1: missing {CORPUS_HEADER!r} header")
    corpus = Corpus()
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != 3:
            raise CorpusFormatError(
                f"{path}:{lineno}: expected 3 tab-separated fields, got {len(fields)}"
            )
        doc_id, label, stem_field = fields
        if not doc_id:
            raise CorpusFormatError(f"{path}:{lineno}: empty doc_id")
        if doc_id in corpus.documents:
            raise CorpusFormatError(f"{path}:{lineno}: duplicate doc_id {doc_id!r}")
        corpus.add(
            build_document(doc_id, stem_field.split()),
            label=None if label == _UNLABELED else label,
        )
    return corpus
