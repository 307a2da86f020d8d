"""The query language and document ranking.

Queries combine terms with AND (positional min), OR (positional max) and
NEAR/k (min over the two terms with the kernel narrowed to width k).  A
document's score sums the query's positional relevance; dividing by the
length gives a similarity in [0, 1] that ranks documents.

Run:  python demos/02_queries_and_ranking.py
"""

from proxima import (
    InfluenceKernel,
    build_document,
    eval_query_at,
    near_boolean,
    near_doc_relevance,
    parse_query,
    render_query,
    similarity,
)

kernel = InfluenceKernel("triangular", 5)

# ---------------------------------------------------------------------------
# Binary versus fuzzy NEAR.
#
# The classic boolean NEAR only answers yes/no; its fuzzy counterpart grades
# the answer by the distance of the closest occurrence pair.

doc = build_document("d", ["port", "x", "x", "tax", "y", "port", "y", "y", "tax"])
for width in (2, 3, 4, 8):
    flag = near_boolean(doc, "port", "tax", width)
    grade = near_doc_relevance(doc, "port", "tax", width)
    print(f"NEAR width {width}: boolean={str(flag):<5}  fuzzy={grade:.3f}")

# ---------------------------------------------------------------------------
# Parsing: NEAR binds tightest, then AND, then OR; parentheses override.

for text in ("tax AND port OR trade", "tax OR port NEAR/4 trade", "(tax OR port) AND trade"):
    print(f"{text:<28} ->  {render_query(parse_query(text))}")

# ---------------------------------------------------------------------------
# Ranking a small corpus: all three documents contain both query terms the
# same number of times, so a bag-of-words model could not separate them.
# Here the closer the pair sits, the higher the document ranks, and a pair
# further apart than the NEAR width scores nothing at all.

documents = {
    "adjacent": ["port", "tax", "a", "b", "c", "d", "e", "f", "g", "h"],
    "nearby":   ["port", "a", "b", "tax", "c", "d", "e", "f", "g", "h"],
    "distant":  ["port", "a", "b", "c", "d", "e", "f", "g", "h", "tax"],
}
query = parse_query("port NEAR/5 tax")
print(f"\nranking for {render_query(query)} (only nonzero similarities shown):")
ranked = sorted(
    (
        (doc_id, value)
        for doc_id, stems in documents.items()
        if (value := similarity(build_document(doc_id, stems), query, kernel)) > 0
    ),
    key=lambda pair: (-pair[1], pair[0]),
)
for rank, (doc_id, value) in enumerate(ranked, start=1):
    print(f"  {rank}. {doc_id:<10} {value:.6f}")
print("  ('distant' scores 0: its occurrences are 9 apart, beyond the width)")

# ---------------------------------------------------------------------------
# Under the hood: the positional view of the winning document.

best = build_document("adjacent", documents["adjacent"])
print("\npositional relevance inside 'adjacent':")
for x in range(best.n):
    print(f"  {x:2d} {best.stems[x]:<6} {eval_query_at(best, query, x, kernel):.3f}")
