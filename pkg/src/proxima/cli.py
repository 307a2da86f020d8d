"""Batch command-line front end.

Subcommands: ``index`` a directory of .txt files into a corpus file, ``query``
a corpus, ``classify`` it against category models, ``eval`` labeled corpora,
and ``gen-synth`` synthetic labeled corpora.  Settings come from built-in
defaults, then an optional ``key = value`` config file, then ``--preset``,
then individual flags, each layer overriding the previous one.

Exit codes: 0 success, 1 I/O failure, 2 usage or content errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .classify import (
    MODES,
    CategoryFormatError,
    SynthSpecError,
    classify,
    evaluate,
    generate_synthetic_corpus,
    load_categories,
    load_synthetic_spec,
    save_categories,
)
from .posindex import Corpus, CorpusFormatError, build_document, load_corpus, save_corpus
from .proxcore import KERNEL_SHAPES, InfluenceKernel, similarity
from .querylang import QueryParseError, parse_query
from .rbfwin import RbfConfig, rbf_similarity
from .textprep import (
    LightStemmer,
    default_stemmer,
    default_stoplist,
    load_stemmer_rules,
    load_stoplist,
    preprocess,
)

__all__ = ["RunConfig", "ConfigError", "main"]

PRESET_WIDTHS = {"phrase": 5, "paragraph": 100}


class ConfigError(ValueError):
    """Bad config-file entry or flag combination."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings shared by all subcommands."""

    kernel: str = "triangular"
    k: int = 5
    kf: int = 5
    threshold: float = 1.0
    clamp: bool = True
    mode: str = "standard"
    stoplist: str | None = None
    stemmer_rules: str | None = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.kernel not in KERNEL_SHAPES:
            raise ConfigError(f"unknown kernel {self.kernel!r}, expected one of {KERNEL_SHAPES}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.kf < 1:
            raise ConfigError("kf must be >= 1")
        if self.threshold < 0:
            raise ConfigError("threshold must be >= 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def influence_kernel(self) -> InfluenceKernel:
        return InfluenceKernel(self.kernel, self.k)

    def rbf_config(self) -> RbfConfig:
        return RbfConfig(
            kernel=self.influence_kernel(),
            kf=self.kf,
            threshold_scale=self.threshold,
            clamp_output=self.clamp,
        )

    def load_stemmer(self) -> LightStemmer:
        return load_stemmer_rules(self.stemmer_rules) if self.stemmer_rules else default_stemmer()

    def load_stoplist(self) -> frozenset[str]:
        return load_stoplist(self.stoplist) if self.stoplist else default_stoplist()


def _parse_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


_CONFIG_CONVERTERS = {
    "kernel": str,
    "k": int,
    "kf": int,
    "threshold": float,
    "clamp": _parse_bool,
    "mode": str,
    "stoplist": str,
    "stemmer_rules": str,
    "seed": int,
    "workers": int,
    "preset": str,
}


def _load_config_file(path: str) -> dict[str, object]:
    entries: dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key = key.strip().lower().replace("-", "_")
        converter = _CONFIG_CONVERTERS.get(key)
        if converter is None:
            raise ConfigError(f"{path}:{lineno}: unknown setting {key!r}")
        try:
            entries[key] = converter(value.strip())
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    return entries


_FLAG_FIELDS = ("kernel", "k", "kf", "threshold", "mode", "stoplist", "stemmer_rules", "seed", "workers")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Layer defaults, config file, preset and explicit flags into a RunConfig."""
    cfg = RunConfig()
    preset = None
    if getattr(args, "config", None):
        entries = _load_config_file(args.config)
        preset = entries.pop("preset", None)
        cfg = replace(cfg, **entries)  # type: ignore[arg-type]
    if getattr(args, "preset", None):
        preset = args.preset
    if preset is not None:
        if preset not in PRESET_WIDTHS:
            raise ConfigError(f"unknown preset {preset!r}, expected one of {tuple(PRESET_WIDTHS)}")
        cfg = replace(cfg, k=PRESET_WIDTHS[preset])
    overrides = {
        name: getattr(args, name)
        for name in _FLAG_FIELDS
        if getattr(args, name, None) is not None
    }
    if overrides:
        cfg = replace(cfg, **overrides)
    if getattr(args, "no_clamp", False):
        cfg = replace(cfg, clamp=False)
    return cfg


def _doc_similarity(doc, node, cfg: RunConfig, rbf: RbfConfig) -> float:
    if cfg.mode == "rbf":
        return rbf_similarity(doc, node, rbf)
    return similarity(doc, node, cfg.influence_kernel())


# ---------------------------------------------------------------------------
# Subcommands


def _read_manifest(path: str) -> dict[str, str]:
    labels: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ValueError(f"{path}:{lineno}: expected filename<TAB>label")
        labels[fields[0]] = fields[1]
    return labels


def cmd_index(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    input_dir = Path(args.input_dir)
    if not input_dir.is_dir():
        print(f"error: {input_dir} is not a directory", file=sys.stderr)
        return 1
    manifest = _read_manifest(args.manifest) if args.manifest else {}
    stoplist = cfg.load_stoplist()
    stemmer = cfg.load_stemmer()
    corpus = Corpus()
    for path in sorted(input_dir.glob("*.txt")):
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            continue
        label = manifest.get(path.name, manifest.get(path.stem))
        corpus.add(build_document(path.stem, preprocess(text, stoplist, stemmer)), label=label)
    if not corpus.documents:
        print(f"error: no documents indexed from {input_dir}", file=sys.stderr)
        return 1
    save_corpus(corpus, args.out)
    positions = sum(doc.n for doc in corpus)
    distinct = len({stem for doc in corpus for stem in doc.inverted})
    print(
        f"indexed {len(corpus)} documents, {positions} term positions, "
        f"{distinct} distinct stems -> {args.out}"
    )
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if (args.query is None) == (args.query_file is None):
        print("error: provide exactly one of QUERY or --query-file", file=sys.stderr)
        return 2
    corpus = load_corpus(args.corpus)
    stemmer = cfg.load_stemmer()
    if args.query is not None:
        queries = [args.query]
    else:
        queries = [
            line.strip()
            for line in Path(args.query_file).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
    rbf = cfg.rbf_config()
    for number, text in enumerate(queries, start=1):
        node = parse_query(text, stemmer)
        ranked = sorted(
            (
                (doc.doc_id, value)
                for doc in corpus
                if (value := _doc_similarity(doc, node, cfg, rbf)) > 0.0
            ),
            key=lambda pair: (-pair[1], pair[0]),
        )
        if len(queries) > 1:
            print(f"# query {number}: {text}")
        for rank, (doc_id, value) in enumerate(ranked, start=1):
            print(f"{rank}\t{doc_id}\t{value:.6f}")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    corpus = load_corpus(args.corpus)
    categories = load_categories(args.categories, cfg.load_stemmer())
    rbf = cfg.rbf_config()
    docs = list(corpus)

    def top1(doc):
        return classify(doc, categories, rbf, cfg.mode)[0]

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            tops = list(pool.map(top1, docs))
    else:
        tops = [top1(doc) for doc in docs]
    for doc, (name, value) in zip(docs, tops):
        print(f"{doc.doc_id}\t{name}\t{value:.6f}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    corpus = load_corpus(args.corpus)
    categories = load_categories(args.categories, cfg.load_stemmer())
    report = evaluate(corpus, categories, cfg.rbf_config(), cfg.mode, workers=cfg.workers)
    print(report.as_table())
    print()
    print(report.as_records())
    return 0


def cmd_gen_synth(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    spec = load_synthetic_spec(args.spec, cfg.load_stemmer())
    corpus, models = generate_synthetic_corpus(spec, cfg.seed)
    save_corpus(corpus, args.out_corpus)
    save_categories(models, args.out_categories)
    print(
        f"generated {len(corpus)} documents across {len(models)} categories "
        f"-> {args.out_corpus}, {args.out_categories}"
    )
    return 0


# ---------------------------------------------------------------------------
# Wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key = value settings file")
    common.add_argument("--kernel", choices=KERNEL_SHAPES, help="influence kernel shape")
    common.add_argument("--k", type=int, help="kernel width (area of influence)")
    common.add_argument("--kf", type=int, help="sliding-window half-width for rbf mode")
    common.add_argument("--threshold", type=float, help="semantic band width in standard deviations")
    common.add_argument("--mode", choices=MODES, help="scoring mode")
    common.add_argument("--no-clamp", action="store_true", help="let boosted relevance exceed 1")
    common.add_argument("--stoplist", metavar="FILE", help="stop-word file (default: packaged Arabic list)")
    common.add_argument(
        "--stemmer-rules", dest="stemmer_rules", metavar="FILE",
        help="affix-rule file (default: packaged Arabic rules)",
    )
    common.add_argument("--seed", type=int, help="random seed for gen-synth")
    common.add_argument("--workers", type=int, help="parallel workers for classify/eval")
    common.add_argument("--preset", choices=tuple(PRESET_WIDTHS), help="kernel width preset")

    parser = argparse.ArgumentParser(
        prog="proxima",
        description="Fuzzy positional proximity search and classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common], help="preprocess a directory of .txt files")
    p.add_argument("input_dir", help="directory of UTF-8 .txt files (file name = doc id)")
    p.add_argument("--out", required=True, help="corpus file to write")
    p.add_argument("--manifest", help="optional filename<TAB>label list for labels")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", parents=[common], help="rank corpus documents against a query")
    p.add_argument("corpus", help="corpus file")
    p.add_argument("query", nargs="?", help="query string, e.g. 'a AND (b NEAR/5 c)'")
    p.add_argument("--query-file", dest="query_file", help="file with one query per line")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("classify", parents=[common], help="label each document with its best category")
    p.add_argument("corpus", help="corpus file")
    p.add_argument("--categories", required=True, help="category definition file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common], help="score top-1 predictions against corpus labels")
    p.add_argument("corpus", help="labeled corpus file")
    p.add_argument("--categories", required=True, help="category definition file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen-synth", parents=[common], help="generate a labeled synthetic corpus")
    p.add_argument("spec", help="generator spec file")
    p.add_argument("--out-corpus", dest="out_corpus", required=True)
    p.add_argument("--out-categories", dest="out_categories", required=True)
    p.set_defaults(func=cmd_gen_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (QueryParseError, CorpusFormatError, CategoryFormatError, SynthSpecError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
