"""Which binary trees can the COO parser produce?

Ground truth is the decode image over every relative ordering of the scores.
Three cheaper characterizations are checked against it: the forbidden
``)((`` substring in the canonical string, an equivalent node-level
condition, and a counting recursion over that condition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .parser import MAX_DERIVATION_LENGTH, _derivation_chart, coo_parse
from .trees import BinaryTree, Leaf, Node, catalan, mirror, n_leaves, to_bracket_string
from .validation import Variant, check_variant

__all__ = [
    "is_recoverable",
    "is_recoverable_structural",
    "enumerate_reachable",
    "count_recoverable_dp",
    "recurrence_a",
    "witness_scores",
    "ReachabilityReport",
    "reachability_report",
    "FORBIDDEN",
]

FORBIDDEN = ")(("
MAX_ENUMERATION = 10
MAX_COUNT = 2000


def is_recoverable(tree: BinaryTree, variant="R") -> bool:
    if check_variant(variant) is Variant.L:
        tree = mirror(tree)
    return FORBIDDEN not in to_bracket_string(tree)


def is_recoverable_structural(tree: BinaryTree, variant="R") -> bool:
    """No node may have two internal children where the right one also has
    an internal left child (mirrored for the L-variant)."""
    if check_variant(variant) is Variant.L:
        tree = mirror(tree)
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            continue
        if isinstance(t.left, Node) and isinstance(t.right, Node) and isinstance(t.right.left, Node):
            return False
        stack.append(t.left)
        stack.append(t.right)
    return True


@lru_cache(maxsize=None)
def _reachable(i: int, j: int, variant: Variant) -> frozenset:
    # conditional on the argmax sitting at k, the orderings inside the two
    # sides are independent and unrestricted, so images combine as products
    if i == j:
        return frozenset([Leaf(i)])
    if j - i == 1:
        return frozenset([Node(Leaf(i), Leaf(j))])
    out = set()
    for t in _reachable(i + 1, j, variant):
        out.add(Node(Leaf(i), t))
    for t in _reachable(i, j - 1, variant):
        out.add(Node(t, Leaf(j)))
    for k in range(i + 1, j):
        lefts = _reachable(i, k - 1, variant)
        rights = _reachable(k + 1, j, variant)
        for a in lefts:
            for b in rights:
                if variant is Variant.R:
                    out.add(Node(a, Node(Leaf(k), b)))
                else:
                    out.add(Node(Node(a, Leaf(k)), b))
    return frozenset(out)


def enumerate_reachable(n: int, variant="R", method: str = "memo") -> frozenset:
    """Distinct trees the parser returns over all ``n!`` score orderings.

    ``method="naive"`` decodes every permutation of ``1..n``; ``"memo"``
    recurses on the argmax position and gives the same set much faster.
    """
    if not 1 <= n <= MAX_ENUMERATION:
        raise ValueError(f"n must be in [1, {MAX_ENUMERATION}], got {n}")
    variant = check_variant(variant)
    if method == "memo":
        return _reachable(1, n, variant)
    if method == "naive":
        return frozenset(coo_parse(p, variant) for p in itertools.permutations(range(1, n + 1)))
    raise ValueError(f"unknown method {method!r}")


def _recoverable_counts(n: int) -> list[int]:
    t = [0, 1, 1]
    for m in range(3, n + 1):
        # left leaf, right leaf, or both internal with the right child's left child a leaf
        t.append(2 * t[m - 1] + sum(t[a] * t[m - 1 - a] for a in range(2, m - 1)))
    return t[: n + 1]


def count_recoverable_dp(n: int) -> int:
    if not 1 <= n <= MAX_COUNT:
        raise ValueError(f"n must be in [1, {MAX_COUNT}], got {n}")
    return _recoverable_counts(n)[n]


def _recurrence_values(n: int) -> list[int]:
    a = [0, 1, 1]
    for m in range(3, n + 1):
        a.append(2 * a[m - 1] + sum(a[k - 1] * a[m - k] for k in range(2, m)))
    return a[: n + 1]


def recurrence_a(n: int) -> int:
    """a_1 = a_2 = 1; a_n = 2 a_{n-1} + sum_{k=2}^{n-1} a_{k-1} a_{n-k}."""
    if not 1 <= n <= MAX_COUNT:
        raise ValueError(f"n must be in [1, {MAX_COUNT}], got {n}")
    return _recurrence_values(n)[n]


def witness_scores(tree: BinaryTree, variant="R") -> list[int] | None:
    """A permutation of ``1..n`` that decodes to ``tree``, or None.

    Scores are handed out in preorder, largest first, with each span's
    splitting word served before the rest of the span.
    """
    variant = check_variant(variant)
    if variant is Variant.L:
        w = witness_scores(mirror(tree), Variant.R)
        return None if w is None else w[::-1]
    if not is_recoverable_structural(tree):
        return None

    lo = tree.start
    n = n_leaves(tree)
    scores = [0] * n
    next_score = n

    def give(pos: int):
        nonlocal next_score
        scores[pos - lo] = next_score
        next_score -= 1

    def assign(t: BinaryTree):
        if isinstance(t, Leaf):
            give(t.position)
            return
        if isinstance(t.left, Leaf) and isinstance(t.right, Leaf):
            give(t.left.position)
            give(t.right.position)
        elif isinstance(t.left, Leaf):
            give(t.left.position)
            assign(t.right)
        elif isinstance(t.right, Leaf):
            give(t.right.position)
            assign(t.left)
        else:
            # MIDDLE: the right daughter starts with the splitting word
            k = t.right.left
            give(k.position)
            assign(t.left)
            assign(t.right.right)

    assign(tree)
    return scores


@dataclass
class ReachabilityReport:
    n: int
    catalan_count: int
    reachable_count_dp: int
    recurrence_a_n: int
    derivation_count: int | None
    reachable_count_enumerated: int | None = None
    ratio: Fraction = field(init=False)
    flags: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.ratio = Fraction(self.reachable_count_dp, self.catalan_count)

    @property
    def ratio_decimal(self) -> str:
        return format(float(self.ratio), ".12g")


def reachability_report(n_max: int, enumerate_max: int = 8) -> list[ReachabilityReport]:
    """One row per sentence length ``1..n_max``.

    Disagreements between the distinct-tree count, the published recurrence
    and the derivation count are listed in each row's ``flags``.
    """
    if not 1 <= n_max <= MAX_COUNT:
        raise ValueError(f"n_max must be in [1, {MAX_COUNT}], got {n_max}")
    enumerate_max = min(enumerate_max, MAX_ENUMERATION)
    dp = _recoverable_counts(n_max)
    rec = _recurrence_values(n_max)
    chart = _derivation_chart(min(n_max, MAX_DERIVATION_LENGTH))
    rows = []
    for n in range(1, n_max + 1):
        deriv = chart.get((1, n))
        enum = len(enumerate_reachable(n, Variant.R)) if n <= enumerate_max else None
        row = ReachabilityReport(
            n=n,
            catalan_count=catalan(n - 1),
            reachable_count_dp=dp[n],
            recurrence_a_n=rec[n],
            derivation_count=deriv,
            reachable_count_enumerated=enum,
        )
        if enum is not None and enum != dp[n]:
            row.flags.append("reachable_dp!=reachable_enum")
        if rec[n] != dp[n]:
            row.flags.append("recurrence_a!=reachable_dp")
        if deriv is not None and deriv != rec[n]:
            row.flags.append("derivations!=recurrence_a")
        rows.append(row)
    return rows
