"""Category models, similarity classification, evaluation, synthetic corpora.

A category is a set of descriptor stems plus a map of equivalent stems onto
those descriptors.  A document is scored against a category by substituting
the category's equivalents into the document and evaluating the OR-query of
its descriptors; the highest-similarity category wins, with alphabetical
tie-breaking.  The evaluation harness reports per-category recall/precision/F1
and unweighted macro averages over top-1 predictions.

The synthetic generator stands in for a real labeled corpus: each document
mixes clustered own-category vocabulary (descriptors with equivalent terms
planted next to them), optional scattered vocabulary from other categories,
and shared noise terms that match no category at all.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Sequence

from .posindex import Corpus, PositionalDocument, build_document
from .proxcore import similarity
from .querylang import Or, QueryNode, Term
from .rbfwin import RbfConfig, rbf_similarity
from .textprep import LightStemmer, stem_to_fixpoint

__all__ = [
    "CategoryModel",
    "CategoryFormatError",
    "CategoryMetrics",
    "EvalReport",
    "SyntheticSpec",
    "SynthSpecError",
    "MODES",
    "category_query",
    "substitute_equivalents",
    "classify",
    "evaluate",
    "metrics_from_confusion",
    "load_categories",
    "save_categories",
    "generate_synthetic_corpus",
    "uniform_synthetic_spec",
    "load_synthetic_spec",
]

MODES = ("standard", "rbf")

# reserved: names the macro row in machine-readable eval records
_MACRO = "macro"


@dataclass(frozen=True)
class CategoryModel:
    """Named descriptor-stem set plus equivalent-stem -> descriptor-stem map."""

    name: str
    descriptors: frozenset[str]
    equivalents: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.name or any(ch in self.name for ch in "\t\n"):
            raise ValueError(f"bad category name {self.name!r}")
        if self.name == _MACRO:
            raise ValueError(f"category name {_MACRO!r} is reserved")
        if not self.descriptors:
            raise ValueError(f"category {self.name!r} has no descriptors")
        for stem in self.descriptors:
            if not stem or any(ch.isspace() for ch in stem):
                raise ValueError(f"category {self.name!r}: bad descriptor {stem!r}")
        for surface, descriptor in self.equivalents.items():
            if descriptor not in self.descriptors:
                raise ValueError(
                    f"category {self.name!r}: equivalent {surface!r} maps to "
                    f"unknown descriptor {descriptor!r}"
                )
            if surface in self.descriptors:
                raise ValueError(
                    f"category {self.name!r}: {surface!r} is both descriptor and equivalent"
                )
            if not surface or any(ch.isspace() for ch in surface):
                raise ValueError(f"category {self.name!r}: bad equivalent {surface!r}")


def category_query(model: CategoryModel) -> QueryNode:
    """OR-tree over the category's descriptors (sorted, left-associative)."""
    terms = [Term(stem) for stem in sorted(model.descriptors)]
    return reduce(Or, terms)


def substitute_equivalents(doc: PositionalDocument, model: CategoryModel) -> PositionalDocument:
    """Rewrite the category's equivalent stems to their descriptors, keeping positions."""
    table = model.equivalents
    if not table or not any(stem in table for stem in doc.inverted):
        return doc
    return build_document(doc.doc_id, tuple(table.get(stem, stem) for stem in doc.stems))


def classify(
    doc: PositionalDocument,
    categories: Sequence[CategoryModel],
    cfg: RbfConfig,
    mode: str = "standard",
) -> list[tuple[str, float]]:
    """Rank categories by similarity, highest first, ties by ascending name."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    if not categories:
        raise ValueError("need at least one category")
    ranking: list[tuple[str, float]] = []
    for model in categories:
        prepared = substitute_equivalents(doc, model)
        query = category_query(model)
        if mode == "standard":
            value = similarity(prepared, query, cfg.kernel)
        else:
            value = rbf_similarity(prepared, query, cfg)
        ranking.append((model.name, value))
    ranking.sort(key=lambda pair: (-pair[1], pair[0]))
    return ranking


# ---------------------------------------------------------------------------
# Evaluation


@dataclass(frozen=True)
class CategoryMetrics:
    recall: float
    precision: float
    f1: float
    true_count: int
    predicted_count: int
    correct: int

    @property
    def recall_defined(self) -> bool:
        return self.true_count > 0

    @property
    def precision_defined(self) -> bool:
        return self.predicted_count > 0


@dataclass(frozen=True)
class EvalReport:
    """Per-category metrics, macro averages and the confusion matrix.

    ``confusion[i][j]`` counts documents of true category ``categories[i]``
    predicted as ``categories[j]``; row sums are the per-category true counts.
    """

    categories: tuple[str, ...]
    metrics: dict[str, CategoryMetrics]
    confusion: tuple[tuple[int, ...], ...]
    macro_recall: float
    macro_precision: float
    macro_f1: float

    def as_table(self) -> str:
        """Aligned plain-text rendering (a '*' marks zero-denominator metrics)."""
        width = max(len(c) for c in (*self.categories, _MACRO, "category"))

        def cell(value: float, flagged: bool = False) -> str:
            return f"{value:.6f}{'*' if flagged else ''}".rjust(11)

        rows = [
            f"{'category'.ljust(width)}  {'recall':>11}  {'precision':>11}  {'f1':>11}  {'docs':>6}"
        ]
        starred = False
        for name in self.categories:
            m = self.metrics[name]
            starred = starred or not (m.recall_defined and m.precision_defined)
            rows.append(
                f"{name.ljust(width)}  {cell(m.recall, not m.recall_defined)}  "
                f"{cell(m.precision, not m.precision_defined)}  {cell(m.f1)}  "
                f"{m.true_count:>6}"
            )
        total = sum(m.true_count for m in self.metrics.values())
        rows.append(
            f"{_MACRO.ljust(width)}  {cell(self.macro_recall)}  "
            f"{cell(self.macro_precision)}  {cell(self.macro_f1)}  {total:>6}"
        )
        rows.append("")
        rows.append("confusion (rows: true, columns: predicted)")
        rows.append(f"{''.ljust(width)}  " + "  ".join(c.rjust(width) for c in self.categories))
        for name, row in zip(self.categories, self.confusion):
            rows.append(f"{name.ljust(width)}  " + "  ".join(str(v).rjust(width) for v in row))
        if starred:
            rows.append("")
            rows.append("* metric had a zero denominator and defaults to 0")
        return "\n".join(rows)

    def as_records(self) -> str:
        """Machine-readable lines: category TAB recall TAB precision TAB f1."""
        lines = [
            f"{name}\t{m.recall:.6f}\t{m.precision:.6f}\t{m.f1:.6f}"
            for name, m in ((c, self.metrics[c]) for c in self.categories)
        ]
        lines.append(
            f"{_MACRO}\t{self.macro_recall:.6f}\t{self.macro_precision:.6f}\t{self.macro_f1:.6f}"
        )
        return "\n".join(lines)


def _safe_div(num: int, den: int) -> float:
    return num / den if den else 0.0


def metrics_from_confusion(
    categories: Sequence[str], confusion: Sequence[Sequence[int]]
) -> EvalReport:
    """Compute recall/precision/F1 per category from a confusion matrix."""
    names = tuple(categories)
    if len(confusion) != len(names) or any(len(row) != len(names) for row in confusion):
        raise ValueError("confusion matrix shape does not match the category list")
    matrix = tuple(tuple(int(v) for v in row) for row in confusion)
    metrics: dict[str, CategoryMetrics] = {}
    for i, name in enumerate(names):
        correct = matrix[i][i]
        true_count = sum(matrix[i])
        predicted_count = sum(row[i] for row in matrix)
        recall = _safe_div(correct, true_count)
        precision = _safe_div(correct, predicted_count)
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        metrics[name] = CategoryMetrics(
            recall=recall,
            precision=precision,
            f1=f1,
            true_count=true_count,
            predicted_count=predicted_count,
            correct=correct,
        )
    count = len(names)
    return EvalReport(
        categories=names,
        metrics=metrics,
        confusion=matrix,
        macro_recall=sum(m.recall for m in metrics.values()) / count,
        macro_precision=sum(m.precision for m in metrics.values()) / count,
        macro_f1=sum(m.f1 for m in metrics.values()) / count,
    )


def evaluate(
    corpus: Corpus,
    categories: Sequence[CategoryModel],
    cfg: RbfConfig,
    mode: str = "standard",
    workers: int = 1,
) -> EvalReport:
    """Top-1 classification quality over the labeled part of ``corpus``.

    The prediction fan-out may run on several workers; the reduction is
    order-fixed, so the report does not depend on the worker count.
    """
    if not corpus.labels:
        raise ValueError("corpus has no labels")
    names = sorted(model.name for model in categories)
    if len(set(names)) != len(names):
        raise ValueError("duplicate category names")
    index = {name: i for i, name in enumerate(names)}
    labeled = [doc for doc in corpus if doc.doc_id in corpus.labels]
    for doc in labeled:
        label = corpus.labels[doc.doc_id]
        if label not in index:
            raise ValueError(f"document {doc.doc_id!r} has unknown label {label!r}")

    def predict(doc: PositionalDocument) -> str:
        return classify(doc, categories, cfg, mode)[0][0]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            predictions = list(pool.map(predict, labeled))
    else:
        predictions = [predict(doc) for doc in labeled]

    confusion = [[0] * len(names) for _ in names]
    for doc, predicted in zip(labeled, predictions):
        confusion[index[corpus.labels[doc.doc_id]]][index[predicted]] += 1
    return metrics_from_confusion(names, confusion)


# ---------------------------------------------------------------------------
# Category files
#
# Block format, '#' comment lines and blank lines ignored:
#
#     category: sport
#     descriptors: stem stem ...
#     equivalents: surface=stem surface=stem ...
#
# Terms are folded and stemmed on load, like query terms.


class CategoryFormatError(ValueError):
    """Raised for malformed category files; messages carry the line number."""


def _iter_lines(path: str | Path) -> list[tuple[int, str]]:
    text = Path(path).read_text(encoding="utf-8")
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


@dataclass
class _Block:
    name: str
    lineno: int
    descriptors: list[str] = field(default_factory=list)
    equivalents: list[tuple[str, str]] = field(default_factory=list)


def _finish_block(block: _Block, path: str | Path) -> CategoryModel:
    if not block.descriptors:
        raise CategoryFormatError(
            f"{path}:{block.lineno}: category {block.name!r} has no descriptors"
        )
    descriptors = frozenset(block.descriptors)
    equivalents: dict[str, str] = {}
    for surface, descriptor in block.equivalents:
        if surface in descriptors:
            continue  # identity mapping after stemming; nothing to rewrite
        if descriptor not in descriptors:
            raise CategoryFormatError(
                f"{path}:{block.lineno}: category {block.name!r}: equivalent "
                f"{surface!r} maps to unknown descriptor {descriptor!r}"
            )
        if surface in equivalents and equivalents[surface] != descriptor:
            raise CategoryFormatError(
                f"{path}:{block.lineno}: category {block.name!r}: equivalent "
                f"{surface!r} maps to two descriptors"
            )
        equivalents[surface] = descriptor
    try:
        return CategoryModel(block.name, descriptors, equivalents)
    except ValueError as exc:
        raise CategoryFormatError(f"{path}:{block.lineno}: {exc}") from exc


def _parse_category_blocks(
    lines: list[tuple[int, str]],
    path: str | Path,
    stemmer: LightStemmer | None,
) -> list[CategoryModel]:
    models: list[CategoryModel] = []
    block: _Block | None = None
    for lineno, line in lines:
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        rest = rest.strip()
        if key == "category":
            if block is not None:
                models.append(_finish_block(block, path))
            if not rest:
                raise CategoryFormatError(f"{path}:{lineno}: category needs a name")
            block = _Block(name=rest, lineno=lineno)
        elif key == "descriptors":
            if block is None:
                raise CategoryFormatError(f"{path}:{lineno}: descriptors outside a category")
            block.descriptors.extend(stem_to_fixpoint(t, stemmer) for t in rest.split())
        elif key == "equivalents":
            if block is None:
                raise CategoryFormatError(f"{path}:{lineno}: equivalents outside a category")
            for pair in rest.split():
                surface, eq, descriptor = pair.partition("=")
                if not eq or not surface or not descriptor:
                    raise CategoryFormatError(
                        f"{path}:{lineno}: expected surface=descriptor, got {pair!r}"
                    )
                block.equivalents.append(
                    (stem_to_fixpoint(surface, stemmer), stem_to_fixpoint(descriptor, stemmer))
                )
        else:
            raise CategoryFormatError(f"{path}:{lineno}: unrecognized line {line!r}")
    if block is not None:
        models.append(_finish_block(block, path))
    if not models:
        raise CategoryFormatError(f"{path}:1: no categories found")
    seen: set[str] = set()
    for model in models:
        if model.name in seen:
            raise CategoryFormatError(f"{path}: duplicate category {model.name!r}")
        seen.add(model.name)
    return models


def load_categories(path: str | Path, stemmer: LightStemmer | None = None) -> list[CategoryModel]:
    """Read a category file (see module docs for the block grammar)."""
    return _parse_category_blocks(_iter_lines(path), path, stemmer)


def save_categories(models: Sequence[CategoryModel], path: str | Path) -> None:
    """Write category blocks that ``load_categories`` restores exactly."""
    chunks = []
    for model in models:
        lines = [f"category: {model.name}", f"descriptors: {' '.join(sorted(model.descriptors))}"]
        if model.equivalents:
            pairs = " ".join(f"{s}={d}" for s, d in sorted(model.equivalents.items()))
            lines.append(f"equivalents: {pairs}")
        chunks.append("\n".join(lines))
    Path(path).write_text("\n\n".join(chunks) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Synthetic corpora


class SynthSpecError(ValueError):
    """Raised for invalid synthetic-corpus parameters or spec files."""


@dataclass(frozen=True)
class SyntheticSpec:
    """Generator parameters for a labeled synthetic corpus.

    Per position, a document draws noise with probability ``noise_rate``,
    another category's vocabulary with ``cross_rate``, and otherwise one of
    its own descriptors; a planted descriptor drags 1-2 of its equivalent
    terms in right next to it with probability ``injection_rate``.
    """

    categories: tuple[CategoryModel, ...]
    docs_per_category: int = 200
    doc_length: int = 120
    injection_rate: float = 0.8
    noise_rate: float = 0.3
    cross_rate: float = 0.0
    noise_vocab_size: int = 40

    def __post_init__(self):
        if not self.categories:
            raise SynthSpecError("need at least one category")
        if self.docs_per_category < 1:
            raise SynthSpecError("docs_per_category must be >= 1")
        if self.doc_length < 1:
            raise SynthSpecError("doc_length must be >= 1")
        for name, rate in (
            ("injection_rate", self.injection_rate),
            ("noise_rate", self.noise_rate),
            ("cross_rate", self.cross_rate),
        ):
            if not 0.0 <= rate <= 1.0:
                raise SynthSpecError(f"{name} must lie in [0, 1], got {rate}")
        if self.noise_rate + self.cross_rate >= 1.0:
            raise SynthSpecError("noise_rate + cross_rate must leave room for own-category terms")
        if self.noise_vocab_size < 1:
            raise SynthSpecError("noise_vocab_size must be >= 1")


def uniform_synthetic_spec(
    n_categories: int = 3,
    n_descriptors: int = 2,
    n_equivalents: int = 4,
    **overrides,
) -> SyntheticSpec:
    """A ready-made spec with generated vocabulary (cat0d0, cat0e1, noise07, ...)."""
    if n_categories < 1 or n_descriptors < 1 or n_equivalents < 0:
        raise SynthSpecError("category/descriptor/equivalent counts out of range")
    categories = []
    for c in range(n_categories):
        name = f"cat{c}"
        descriptors = [f"{name}d{i}" for i in range(n_descriptors)]
        equivalents = {f"{name}e{j}": descriptors[j % n_descriptors] for j in range(n_equivalents)}
        categories.append(CategoryModel(name, frozenset(descriptors), equivalents))
    return SyntheticSpec(categories=tuple(categories), **overrides)


def generate_synthetic_corpus(
    spec: SyntheticSpec, seed: int
) -> tuple[Corpus, list[CategoryModel]]:
    """Deterministically generate a labeled corpus for the given spec and seed."""
    rng = random.Random(seed)
    noise_vocab = [f"noise{i:02d}" for i in range(spec.noise_vocab_size)]
    corpus = Corpus()
    models = list(spec.categories)
    cross_pools = {
        model.name: sorted(
            stem
            for other in models
            if other.name != model.name
            for stem in list(other.descriptors) + list(other.equivalents)
        )
        for model in models
    }
    for model in models:
        descriptors = sorted(model.descriptors)
        by_descriptor: dict[str, list[str]] = {d: [] for d in descriptors}
        for surface, descriptor in model.equivalents.items():
            by_descriptor[descriptor].append(surface)
        for pool in by_descriptor.values():
            pool.sort()
        cross_pool = cross_pools[model.name]
        for j in range(spec.docs_per_category):
            tokens: list[str] = []
            while len(tokens) < spec.doc_length:
                roll = rng.random()
                if roll < spec.noise_rate or (roll < spec.noise_rate + spec.cross_rate and not cross_pool):
                    tokens.append(rng.choice(noise_vocab))
                elif roll < spec.noise_rate + spec.cross_rate:
                    tokens.append(rng.choice(cross_pool))
                else:
                    descriptor = rng.choice(descriptors)
                    tokens.append(descriptor)
                    pool = by_descriptor[descriptor]
                    if pool and rng.random() < spec.injection_rate:
                        for surface in rng.sample(pool, k=min(rng.randint(1, 2), len(pool))):
                            tokens.append(surface)
            doc_id = f"{model.name}-{j:04d}"
            corpus.add(build_document(doc_id, tokens[: spec.doc_length]), label=model.name)
    return corpus, models


def load_synthetic_spec(path: str | Path, stemmer: LightStemmer | None = None) -> SyntheticSpec:
    """Read a generator spec file: `key = value` parameters, then category blocks."""
    lines = _iter_lines(path)
    params: dict[str, str] = {}
    body_start = 0
    for body_start, (lineno, line) in enumerate(lines):
        if ":" in line.partition("=")[0]:
            break
        key, eq, value = line.partition("=")
        if not eq:
            raise SynthSpecError(f"{path}:{lineno}: expected key = value, got {line!r}")
        params[key.strip().lower()] = value.strip()
    else:
        body_start = len(lines)
    try:
        categories = _parse_category_blocks(lines[body_start:], path, stemmer)
    except CategoryFormatError as exc:
        raise SynthSpecError(str(exc)) from exc
    kwargs: dict[str, object] = {"categories": tuple(categories)}
    converters = {
        "docs_per_category": int,
        "doc_length": int,
        "injection_rate": float,
        "noise_rate": float,
        "cross_rate": float,
        "noise_vocab_size": int,
    }
    for key, raw in params.items():
        converter = converters.get(key)
        if converter is None:
            raise SynthSpecError(f"{path}: unknown parameter {key!r}")
        try:
            kwargs[key] = converter(raw)
        except ValueError as exc:
            raise SynthSpecError(f"{path}: parameter {key!r}: {exc}") from exc
    try:
        return SyntheticSpec(**kwargs)  # type: ignore[arg-type]
    except SynthSpecError as exc:
        raise SynthSpecError(f"{path}: {exc}") from exc
