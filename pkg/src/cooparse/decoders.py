"""Top-down splitters that can reach every binary tree.

Scoring the boundaries between words, or whole spans, keeps the split point
out of both daughters, so nothing carries over from parent to child.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .reachability import enumerate_reachable
from .trees import BinaryTree, Leaf, Node, Span, catalan, enumerate_binary_trees, spans
from .validation import argmax, check_scores, check_tie

__all__ = [
    "gap_split_parse",
    "span_split_parse",
    "indicator_table",
    "completeness_image",
    "CompletenessResult",
    "DECODERS",
]

DECODERS = ("coo_R", "coo_L", "gap", "span")
MAX_COMPLETENESS = 8


def gap_split_parse(gaps, tie="leftmost") -> BinaryTree:
    """Split at the highest-scoring boundary; ``gaps[b-1]`` scores the
    boundary between words ``b`` and ``b + 1``."""
    g = check_scores(gaps, name="gaps", allow_empty=True).tolist()
    tie = check_tie(tie)

    def split(i: int, j: int) -> BinaryTree:
        if i == j:
            return Leaf(i)
        b = argmax(g, i - 1, j - 2, tie) + 1
        return Node(split(i, b), split(b + 1, j))

    return split(1, len(g) + 1)


def span_split_parse(table, n: int | None = None, tie="leftmost") -> BinaryTree:
    """Split ``[i,j]`` at the ``k`` maximizing ``table[i,k] + table[k+1,j]``.

    ``table`` maps ``(i, j)`` pairs to scores; ``n`` defaults to the largest
    end position present.
    """
    tie = check_tie(tie)
    table = {Span(*key): float(v) for key, v in table.items()}
    if n is None:
        if not table:
            raise ValueError("empty span table")
        n = max(s.end for s in table)

    def score(i, j):
        try:
            return table[Span(i, j)]
        except KeyError:
            raise KeyError(f"span table has no entry for [{i},{j}]") from None

    for i in range(1, n + 1):
        for j in range(i, n + 1):
            score(i, j)

    def split(i: int, j: int) -> BinaryTree:
        if i == j:
            return Leaf(i)
        merits = [score(i, k) + score(k + 1, j) for k in range(i, j)]
        k = i + argmax(merits, 0, len(merits) - 1, tie)
        return Node(split(i, k), split(k + 1, j))

    return split(1, n)


def indicator_table(tree: BinaryTree) -> dict:
    """1.0 for each constituent of ``tree`` (leaves included), 0.0 elsewhere."""
    lo, hi = tree.start, tree.end
    inside = spans(tree, include_trivial=True, include_whole=True)
    return {
        Span(i, j): (1.0 if Span(i, j) in inside else 0.0)
        for i in range(lo, hi + 1)
        for j in range(i, hi + 1)
    }


@dataclass
class CompletenessResult:
    decoder: str
    n: int
    trees: frozenset

    @property
    def total(self) -> int:
        return catalan(self.n - 1)

    @property
    def coverage(self) -> Fraction:
        return Fraction(len(self.trees), self.total)


def completeness_image(decoder: str, n: int) -> CompletenessResult:
    """The set of trees a decoder reaches over all score orderings.

    Word and gap scorers try every ordering; the span scorer is fed the
    indicator table of every tree.
    """
    if not 1 <= n <= MAX_COMPLETENESS:
        raise ValueError(f"n must be in [1, {MAX_COMPLETENESS}], got {n}")
    key = decoder.replace("-", "_")
    key = {"coo_r": "coo_R", "coo_l": "coo_L"}.get(key.lower(), key)
    if key == "coo_R":
        image = enumerate_reachable(n, "R", method="naive")
    elif key == "coo_L":
        image = enumerate_reachable(n, "L", method="naive")
    elif key == "gap":
        image = frozenset(
            gap_split_parse(p) for p in itertools.permutations(range(1, n))
        )
    elif key == "span":
        image = frozenset(span_split_parse(indicator_table(t), n) for t in enumerate_binary_trees(n))
    else:
        raise ValueError(f"unknown decoder {decoder!r}; expected one of {DECODERS}")
    return CompletenessResult(key, n, frozenset(image))
