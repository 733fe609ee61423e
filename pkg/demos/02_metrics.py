"""
Scoring predicted author lists
==============================

Predicted and gold author lists are canonicalized to one string each,
then compared with character ROUGE and weighted edit distance.
"""
from byline_bench import (
    edit_distance,
    normalized_edit_distance,
    preprocess,
    rouge_l,
    rouge_n,
    score_document,
)

# Canonicalization: normalize each name, sort, join. Order and case
# differences between annotators and tools stop mattering here.
pred = ["john roe", "Jane Doe"]
gold = ["Jane Doe", "John Roe"]
print("canonical pred:", repr(preprocess(pred)))
print("canonical gold:", repr(preprocess(gold)))
print("scores:", score_document(pred, gold))

# Character ROUGE-1 ignores order; ROUGE-L rewards it. A reversed string
# shares every unigram but only a single-character subsequence.
print()
print("rouge1 dcba/abcd:", rouge_n(["dcba"], ["abcd"]))
print("rougeL dcba/abcd:", rouge_l(["dcba"], ["abcd"]))

# Edit distance counts insert/delete at 1 and substitute at 2, so one
# substitution costs exactly a delete plus an insert.
print()
print("distance abc/abd: ", edit_distance("abc", "abd"))
print("ned abc/abd:      ", normalized_edit_distance(["abc"], ["abd"]))

# A partially right answer lands between the extremes.
print()
pred, gold = ["mary lee"], ["mary l"]
print("pred", pred, "vs gold", gold)
print("scores:", score_document(pred, gold))

# Empty against empty is perfect agreement; empty against non-empty is
# a total miss.
print()
print("both empty: ", score_document([], []))
print("missed gold:", score_document([], ["Jane Doe"]))
