"""Category classification: plain proximity versus the window boost.

A category is a set of descriptor stems plus equivalent terms that rewrite
to them.  Documents are ranked by their similarity to each category's
OR-query; the evaluation harness reports per-category recall/precision/F1.

The synthetic corpus plants each category's equivalent terms right next to
its descriptors, so true-category occurrences arrive in small clusters while
cross-category contamination is scattered.  With a narrow base kernel the
plain model is a positional term-frequency classifier; the window boost then
rewards positions whose neighborhood is dominated by clustered occurrences,
a pattern the scattered contamination cannot imitate.  That asymmetry is
what lifts macro-F1.

Run:  python demos/05_classification_benchmark.py   (about 10 seconds)
"""

import time

from proxima import InfluenceKernel, RbfConfig, evaluate, generate_synthetic_corpus
from proxima.classify import uniform_synthetic_spec

spec = uniform_synthetic_spec(
    n_categories=3,
    n_descriptors=2,
    n_equivalents=4,
    docs_per_category=200,
    doc_length=150,
    injection_rate=0.7,   # chance a planted descriptor drags equivalents along
    noise_rate=0.30,      # shared vocabulary matching no category
    cross_rate=0.52,      # scattered terms from the other categories
)
cfg = RbfConfig(kernel=InfluenceKernel("triangular", 1), kf=2)

print("seed   standard-F1   boosted-F1   gain")
for seed in (7, 101, 2024):
    corpus, models = generate_synthetic_corpus(spec, seed)
    started = time.perf_counter()
    standard = evaluate(corpus, models, cfg, "standard")
    boosted = evaluate(corpus, models, cfg, "rbf")
    elapsed = time.perf_counter() - started
    print(
        f"{seed:<6} {standard.macro_f1:>11.4f} {boosted.macro_f1:>12.4f} "
        f"{boosted.macro_f1 - standard.macro_f1:>+7.4f}   ({elapsed:.1f}s)"
    )

# one full report, to show the table format
corpus, models = generate_synthetic_corpus(spec, 7)
report = evaluate(corpus, models, cfg, "rbf")
print("\nboosted-mode report for seed 7:\n")
print(report.as_table())
print("\nmachine-readable records:\n")
print(report.as_records())
