"""Query language: terms combined with AND, OR and width-bounded NEAR.

Grammar (keywords case-insensitive, NEAR binds tightest, all left-associative):

    expr := or
    or   := and (OR and)*
    and  := near (AND near)*
    near := atom (NEAR/INT atom)?
    atom := TERM | '(' expr ')'

NEAR takes plain terms on both sides and an explicit width, e.g. ``a NEAR/7 b``.
Terms are folded and stemmed at parse time (to a fixed point, so a rendered
query re-parses to the same tree); stop words are deliberately not filtered
here, unlike on the document side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .textprep import LightStemmer, stem_to_fixpoint

__all__ = [
    "Term",
    "And",
    "Or",
    "Near",
    "QueryNode",
    "QueryParseError",
    "parse_query",
    "render_query",
]


@dataclass(frozen=True)
class Term:
    stem: str


@dataclass(frozen=True)
class And:
    left: "QueryNode"
    right: "QueryNode"


@dataclass(frozen=True)
class Or:
    left: "QueryNode"
    right: "QueryNode"


@dataclass(frozen=True)
class Near:
    k: int
    left: Term
    right: Term


QueryNode = Union[Term, And, Or, Near]


class QueryParseError(ValueError):
    """Parse failure; carries the 1-based column of the offending token."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


_WORD_RE = re.compile(r"[^\s()]+")
_NEAR_RE = re.compile(r"near(/.*)?", re.IGNORECASE)
_NEAR_WIDTH_RE = re.compile(r"near/(\d+)", re.IGNORECASE)


@dataclass(frozen=True)
class _Token:
    kind: str  # "(", ")", "and", "or", "near", "term"
    text: str
    column: int
    width: int = 0  # NEAR only


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, ch, i + 1))
            i += 1
            continue
        match = _WORD_RE.match(text, i)
        assert match is not None
        word = match.group()
        column = i + 1
        i = match.end()
        upper = word.upper()
        if upper == "AND":
            tokens.append(_Token("and", word, column))
        elif upper == "OR":
            tokens.append(_Token("or", word, column))
        elif _NEAR_RE.fullmatch(word):
            widths = _NEAR_WIDTH_RE.fullmatch(word)
            if widths is None:
                raise QueryParseError(
                    f"{word!r}: NEAR needs an integer width, e.g. NEAR/5", column
                )
            width = int(widths.group(1))
            if width < 1:
                raise QueryParseError(f"{word!r}: NEAR width must be >= 1", column)
            tokens.append(_Token("near", word, column, width=width))
        else:
            tokens.append(_Token("term", word, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], stemmer: LightStemmer | None):
        self.tokens = tokens
        self.pos = 0
        self.stemmer = stemmer

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token | None:
        token = self.peek()
        self.pos += 1
        return token

    def _end_column(self) -> int:
        last = self.tokens[-1]
        return last.column + len(last.text)

    def parse(self) -> QueryNode:
        if not self.tokens:
            raise QueryParseError("empty query", 1)
        node = self.parse_or()
        leftover = self.peek()
        if leftover is not None:
            raise QueryParseError(f"unexpected {leftover.text!r}", leftover.column)
        return node

    def parse_or(self) -> QueryNode:
        node = self.parse_and()
        while (token := self.peek()) is not None and token.kind == "or":
            self.next()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> QueryNode:
        node = self.parse_near()
        while (token := self.peek()) is not None and token.kind == "and":
            self.next()
            node = And(node, self.parse_near())
        return node

    def parse_near(self) -> QueryNode:
        left = self.parse_atom()
        token = self.peek()
        if token is not None and token.kind == "near":
            self.next()
            right = self.parse_atom()
            if not isinstance(left, Term) or not isinstance(right, Term):
                raise QueryParseError("NEAR operands must be plain terms", token.column)
            return Near(token.width, left, right)
        return left

    def parse_atom(self) -> QueryNode:
        token = self.next()
        if token is None:
            raise QueryParseError("expected a term or '('", self._end_column())
        if token.kind == "(":
            node = self.parse_or()
            closing = self.next()
            if closing is None or closing.kind != ")":
                raise QueryParseError(
                    "unbalanced parentheses: expected ')'",
                    closing.column if closing else self._end_column(),
                )
            return node
        if token.kind == "term":
            stem = stem_to_fixpoint(token.text, self.stemmer)
            if not stem:
                raise QueryParseError(
                    f"{token.text!r} normalizes to nothing", token.column
                )
            return Term(stem)
        raise QueryParseError(f"expected a term or '(', got {token.text!r}", token.column)


def parse_query(text: str, stemmer: LightStemmer | None = None) -> QueryNode:
    """Parse a query string into a tree (packaged stemmer rules by default)."""
    return _Parser(_lex(text), stemmer).parse()


def render_query(node: QueryNode) -> str:
    """Canonical fully-parenthesized form; re-parsing it restores the tree."""
    if isinstance(node, Term):
        return node.stem
    if isinstance(node, And):
        return f"({render_query(node.left)} AND {render_query(node.right)})"
    if isinstance(node, Or):
        return f"({render_query(node.left)} OR {render_query(node.right)})"
    if isinstance(node, Near):
        return f"({node.left.stem} NEAR/{node.k} {node.right.stem})"
    raise TypeError(f"not a query node: {node!r}")
