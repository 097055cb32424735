"""Greedy top-down splitting on per-word scores (the COO parser).

A span ``[i, j]`` is split around its highest-scoring word ``k``:

* one word: a leaf
* two words: BINARY, ``[i,i] [j,j]``
* ``k == i``: LEFT, ``[i,i] [i+1,j]``
* ``k == j``: RIGHT, ``[i,j-1] [j,j]``
* otherwise MIDDLE: ``[i,k-1] [k,j]`` (R-variant) or ``[i,k] [k+1,j]`` (L-variant)
"""
from __future__ import annotations

from .trees import BinaryTree, Leaf, Node
from .validation import Variant, argmax, check_scores, check_tie, check_variant

__all__ = ["coo_parse", "coo_parse_ternary", "count_derivations", "MAX_DERIVATION_LENGTH"]

MAX_DERIVATION_LENGTH = 200


def coo_parse(scores, variant="R", tie="leftmost") -> BinaryTree:
    s = check_scores(scores).tolist()
    variant = check_variant(variant)
    tie = check_tie(tie)
    right = variant is Variant.R

    def split(i: int, j: int, forced: int | None = None) -> BinaryTree:
        # i, j are 0-based inclusive; ``forced`` is the argmax a MIDDLE daughter must have
        if i == j:
            return Leaf(i + 1)
        if j - i == 1:
            return Node(Leaf(i + 1), Leaf(j + 1))
        k = argmax(s, i, j, tie)
        assert forced is None or k == forced, "MIDDLE daughter did not split off its maximal word"
        if k == i:
            return Node(Leaf(i + 1), split(i + 1, j))
        if k == j:
            return Node(split(i, j - 1), Leaf(j + 1))
        if right:
            return Node(split(i, k - 1), split(k, j, forced=k))
        return Node(split(i, k, forced=k), split(k + 1, j))

    return split(0, len(s) - 1)


def coo_parse_ternary(scores, variant="R", tie="leftmost") -> BinaryTree:
    """Same output as :func:`coo_parse`, using the fused three-way MIDDLE step.

    After a MIDDLE split the daughter holding ``k`` always peels ``k`` off
    next, so both steps are done at once: ``[i,k-1] [k,k] [k+1,j]``.
    """
    s = check_scores(scores).tolist()
    variant = check_variant(variant)
    tie = check_tie(tie)

    def split(i: int, j: int) -> BinaryTree:
        if i == j:
            return Leaf(i + 1)
        if j - i == 1:
            return Node(Leaf(i + 1), Leaf(j + 1))
        k = argmax(s, i, j, tie)
        if k == i:
            return Node(Leaf(i + 1), split(i + 1, j))
        if k == j:
            return Node(split(i, j - 1), Leaf(j + 1))
        left, word, rest = split(i, k - 1), Leaf(k + 1), split(k + 1, j)
        if variant is Variant.R:
            return Node(left, Node(word, rest))
        return Node(Node(left, word), rest)

    return split(0, len(s) - 1)


def _derivation_chart(n: int) -> dict[tuple[int, int], int]:
    # inside pass over the unconstrained bottom-up system: BINARY, LEFT, RIGHT, ternary MIDDLE
    c: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        c[i, i] = 1
    for length in range(2, n + 1):
        for i in range(1, n - length + 2):
            j = i + length - 1
            if length == 2:
                c[i, j] = c[i, i] * c[j, j]
                continue
            total = c[i + 1, j] + c[i, j - 1]
            for k in range(i + 1, j):
                total += c[i, k - 1] * c[k, k] * c[k + 1, j]
            c[i, j] = total
    return c


def count_derivations(n: int) -> int:
    """Number of derivations of ``[1, n]`` with score constraints ignored.

    This counts decision sequences, not distinct trees: the same bracketing
    can be reached by a LEFT step and by a MIDDLE step at ``k = i + 1``.
    """
    if not 1 <= n <= MAX_DERIVATION_LENGTH:
        raise ValueError(f"n must be in [1, {MAX_DERIVATION_LENGTH}], got {n}")
    return _derivation_chart(n)[1, n]
