"""Text preparation: character folding, tokenization, stop words, light stemming.

The pipeline turns raw text into a position-indexed sequence of stems:

    normalize -> tokenize -> remove stop words -> stem -> assign positions

Positions are assigned after filtering, so proximity distances downstream
count content terms only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

__all__ = [
    "TokenStream",
    "LightStemmer",
    "normalize_text",
    "tokenize",
    "remove_stopwords",
    "light_stem",
    "stem_to_fixpoint",
    "preprocess",
    "load_stoplist",
    "load_stemmer_rules",
    "default_stoplist",
    "default_stemmer",
]

_ALEF = "ا"
_YA = "ي"
_HA = "ه"

# Standard Arabic search folding: hamza-carrying alefs and madda collapse to
# bare alef, alef maqsura to ya, ta marbuta to ha; tatweel and the short
# vowel / gemination marks are deleted.  Everything else passes through.
_FOLD_TABLE: dict[int, str | None] = {
    0x0622: _ALEF,  # alef with madda
    0x0623: _ALEF,  # alef with hamza above
    0x0625: _ALEF,  # alef with hamza below
    0x0649: _YA,    # alef maqsura
    0x0629: _HA,    # ta marbuta
    0x0640: None,   # tatweel
    0x064B: None,   # fathatan
    0x064C: None,   # dammatan
    0x064D: None,   # kasratan
    0x064E: None,   # fatha
    0x064F: None,   # damma
    0x0650: None,   # kasra
    0x0651: None,   # shadda
    0x0652: None,   # sukun
}

# Word = run of letters/digits; underscore counts as punctuation.
_TOKEN_RE = re.compile(r"[^\W_]+")
_DIGITS_RE = re.compile(r"\d+")


def normalize_text(text: str) -> str:
    """Fold Arabic letter variants and drop diacritics; idempotent."""
    return text.translate(_FOLD_TABLE)


def tokenize(text: str) -> list[str]:
    """Split normalized text on whitespace/punctuation, dropping digit-only tokens."""
    return [t for t in _TOKEN_RE.findall(text) if not _DIGITS_RE.fullmatch(t)]


def remove_stopwords(tokens: Iterable[str], stoplist: frozenset[str] | set[str]) -> list[str]:
    """Drop tokens found in ``stoplist``, preserving the order of survivors."""
    return [t for t in tokens if t not in stoplist]


class LightStemmer:
    """Rule-table affix stripper.

    Each affix is tried once, in table order, against the current form of
    the token; a rule fires only when it matches and at least ``min_stem``
    characters would remain.  Prefix rules run before suffix rules.  The
    result is deterministic but not guaranteed idempotent: stripping one
    affix may expose another that sits earlier in the table.
    """

    def __init__(self, prefixes: Iterable[str], suffixes: Iterable[str], min_stem: int = 2):
        self.prefixes = tuple(prefixes)
        self.suffixes = tuple(suffixes)
        if min_stem < 1:
            raise ValueError("min_stem must be >= 1")
        self.min_stem = min_stem
        self._cache: dict[str, str] = {}

    def __call__(self, token: str) -> str:
        stem = self._cache.get(token)
        if stem is None:
            stem = self._strip(token)
            self._cache[token] = stem
        return stem

    def _strip(self, token: str) -> str:
        stem = token
        for prefix in self.prefixes:
            if stem.startswith(prefix) and len(stem) - len(prefix) >= self.min_stem:
                stem = stem[len(prefix):]
        for suffix in self.suffixes:
            if stem.endswith(suffix) and len(stem) - len(suffix) >= self.min_stem:
                stem = stem[: -len(suffix)]
        return stem

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"LightStemmer({len(self.prefixes)} prefixes, "
            f"{len(self.suffixes)} suffixes, min_stem={self.min_stem})"
        )


def light_stem(token: str, stemmer: LightStemmer | None = None) -> str:
    """Stem one token with ``stemmer`` (packaged Arabic rules by default)."""
    return (stemmer or default_stemmer())(token)


def stem_to_fixpoint(word: str, stemmer: LightStemmer | None = None) -> str:
    """Apply normalize+stem repeatedly until the form stops changing.

    Query and category terms use this so that a rendered term re-parses to
    itself; document tokens are stemmed single-pass (see ``preprocess``).
    Terminates because each round either shortens the word or leaves it
    unchanged.
    """
    stemmer = stemmer or default_stemmer()
    current = normalize_text(word)
    while True:
        nxt = normalize_text(stemmer(current))
        if nxt == current:
            return current
        current = nxt


@dataclass(frozen=True)
class TokenStream:
    """Ordered stem sequence; the position of a stem is its index."""

    stems: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.stems)

    def __iter__(self) -> Iterator[str]:
        return iter(self.stems)

    def pairs(self) -> list[tuple[int, str]]:
        """The (position, stem) view, positions running 0..len-1."""
        return list(enumerate(self.stems))


def preprocess(
    text: str,
    stoplist: frozenset[str] | set[str] | None = None,
    stemmer: LightStemmer | None = None,
) -> TokenStream:
    """Run the full pipeline on raw text.

    Stop words are filtered twice: on the normalized surface form, and again
    on the stemmed form so that no surviving stem collides with a stemmed
    stop-list entry.
    """
    if stoplist is None:
        stoplist = default_stoplist()
    if stemmer is None:
        stemmer = default_stemmer()
    tokens = remove_stopwords(tokenize(normalize_text(text)), stoplist)
    stop_stems = {stemmer(w) for w in stoplist}
    return TokenStream(tuple(s for s in (stemmer(t) for t in tokens) if s not in stop_stems))


# ---------------------------------------------------------------------------
# Data files


def _data_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def load_stoplist(path: str | Path) -> frozenset[str]:
    """Read a stop-list file (one word per line, '#' comments); entries are normalized."""
    return frozenset(normalize_text(line) for _, line in _data_lines(path))


def load_stemmer_rules(path: str | Path) -> LightStemmer:
    """Read an affix-rule file with PREFIXES / SUFFIXES sections, kept in file order."""
    prefixes: list[str] = []
    suffixes: list[str] = []
    section: list[str] | None = None
    for lineno, line in _data_lines(path):
        upper = line.upper()
        if upper == "PREFIXES":
            section = prefixes
        elif upper == "SUFFIXES":
            section = suffixes
        elif section is None:
            raise ValueError(f"{path}:{lineno}: affix before a PREFIXES/SUFFIXES header")
        else:
            section.append(normalize_text(line))
    return LightStemmer(prefixes, suffixes)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("proxima").joinpath("data", name)))


_DEFAULT_STOPLIST: frozenset[str] | None = None
_DEFAULT_STEMMER: LightStemmer | None = None


def default_stoplist() -> frozenset[str]:
    """The packaged Arabic stop list."""
    global _DEFAULT_STOPLIST
    if _DEFAULT_STOPLIST is None:
        _DEFAULT_STOPLIST = load_stoplist(_data_path("stopwords_ar.txt"))
    return _DEFAULT_STOPLIST


def default_stemmer() -> LightStemmer:
    """The packaged Arabic light-stemming rules."""
    global _DEFAULT_STEMMER
    if _DEFAULT_STEMMER is None:
        _DEFAULT_STEMMER = load_stemmer_rules(_data_path("stemmer_rules_ar.txt"))
    return _DEFAULT_STEMMER
