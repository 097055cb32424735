"""Binary bracketings, gold treebank trees and span sets.

Positions are 1-based and inclusive throughout. A binary tree over ``n``
leaves is built from :class:`Leaf` and :class:`Node`; every node knows the
span it covers, so span extraction never needs a second pass.

The canonical text form writes each leaf as ``x`` and each internal node as
``(`` left right ``)`` with no separators, e.g. ``((xx)((xx)x))``.
"""
from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from ._random import as_generator, randbelow

__all__ = [
    "Span",
    "Leaf",
    "Node",
    "BinaryTree",
    "GoldTree",
    "TreeFormatError",
    "to_bracket_string",
    "parse_tree_text",
    "parse_canonical",
    "parse_treebank",
    "spans",
    "mirror",
    "enumerate_binary_trees",
    "catalan",
    "sample_uniform_tree",
    "right_comb",
    "left_comb",
    "n_leaves",
]

MAX_ENUMERATION_LEAVES = 16


class TreeFormatError(ValueError):
    """Raised on malformed tree text."""


class Span(NamedTuple):
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    @property
    def trivial(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class Leaf:
    position: int

    @property
    def start(self) -> int:
        return self.position

    @property
    def end(self) -> int:
        return self.position

    @property
    def span(self) -> Span:
        return Span(self.position, self.position)

    def __str__(self) -> str:
        return "x"


@dataclass(frozen=True)
class Node:
    left: "BinaryTree"
    right: "BinaryTree"
    start: int = field(init=False, compare=False, repr=False)
    end: int = field(init=False, compare=False, repr=False)
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.left.end + 1 != self.right.start:
            raise ValueError(
                f"children are not adjacent: {self.left.end} / {self.right.start}"
            )
        object.__setattr__(self, "start", self.left.start)
        object.__setattr__(self, "end", self.right.end)
        object.__setattr__(self, "_hash", hash((self.left, self.right)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def span(self) -> Span:
        return Span(self.start, self.end)

    def __str__(self) -> str:
        return to_bracket_string(self)


BinaryTree = Union[Leaf, Node]


def n_leaves(tree: BinaryTree) -> int:
    return tree.end - tree.start + 1


def right_comb(n: int, start: int = 1) -> BinaryTree:
    """``(x(x(...(xx))))`` over positions ``start..start+n-1``."""
    tree: BinaryTree = Leaf(start + n - 1)
    for pos in range(start + n - 2, start - 1, -1):
        tree = Node(Leaf(pos), tree)
    return tree


def left_comb(n: int, start: int = 1) -> BinaryTree:
    """``((((xx)x)...)x)`` over positions ``start..start+n-1``."""
    tree: BinaryTree = Leaf(start)
    for pos in range(start + 1, start + n):
        tree = Node(tree, Leaf(pos))
    return tree


def to_bracket_string(tree: BinaryTree) -> str:
    out: list[str] = []

    def walk(t):
        if isinstance(t, Leaf):
            out.append("x")
        else:
            out.append("(")
            walk(t.left)
            walk(t.right)
            out.append(")")

    walk(tree)
    return "".join(out)


# -- gold trees --------------------------------------------------------------


class GoldTree:
    """A labeled treebank tree of arbitrary arity.

    Preterminals carry ``word`` and have no children; their ``label`` is the
    part-of-speech tag.
    """

    __slots__ = ("label", "children", "word")

    def __init__(self, label: str, children: Sequence["GoldTree"] = (), word: str | None = None):
        if word is not None and children:
            raise ValueError("a preterminal cannot have children")
        self.label = label
        self.children = tuple(children)
        self.word = word

    @property
    def is_preterminal(self) -> bool:
        return self.word is not None

    def preterminals(self) -> Iterator["GoldTree"]:
        if self.is_preterminal:
            yield self
            return
        for child in self.children:
            yield from child.preterminals()

    @property
    def tokens(self) -> list[str]:
        return [p.word for p in self.preterminals()]

    @property
    def tags(self) -> list[str]:
        return [p.label for p in self.preterminals()]

    def __len__(self) -> int:
        return sum(1 for _ in self.preterminals())

    def strip(self, tags: Iterable[str]) -> "GoldTree | None":
        """Drop preterminals whose tag is in ``tags`` and prune emptied
        constituents. Returns None if nothing is left."""
        tags = frozenset(tags)
        if self.is_preterminal:
            return None if self.label in tags else self
        kept = [c for c in (child.strip(tags) for child in self.children) if c is not None]
        if not kept:
            return None
        return GoldTree(self.label, kept)

    def to_string(self) -> str:
        if self.is_preterminal:
            return f"({self.label} {self.word})"
        inner = " ".join(c.to_string() for c in self.children)
        return f"({self.label} {inner})" if self.label else f"( {inner})"

    def __eq__(self, other):
        if not isinstance(other, GoldTree):
            return NotImplemented
        return (self.label, self.word, self.children) == (other.label, other.word, other.children)

    def __hash__(self):
        return hash((self.label, self.word, self.children))

    def __repr__(self):
        return f"GoldTree({self.to_string()!r})"

    @classmethod
    def from_binary(cls, tree: BinaryTree, label: str = "X", tag: str = "T") -> "GoldTree":
        """Wrap a binary tree as a gold tree with placeholder words ``w1..wn``."""
        if isinstance(tree, Leaf):
            return cls(tag, word=f"w{tree.position}")
        return cls(label, [cls.from_binary(tree.left, label, tag), cls.from_binary(tree.right, label, tag)])


# -- parsing -------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")
_CANONICAL_CHARS = frozenset("()x \t\r\n")


def _tokenize(text: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]


def _check_balance(text: str) -> None:
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise TreeFormatError(f"unbalanced ')' at offset {pos}")
    if depth:
        raise TreeFormatError(f"unbalanced brackets: {depth} unclosed '('")


def parse_canonical(text: str) -> BinaryTree:
    """Read an unlabeled binary bracketing.

    If the text uses only ``(``, ``)``, ``x`` and whitespace, every ``x`` is a
    leaf (``((xx)x)``). Otherwise whitespace-separated words are the leaves,
    so ``((some trees) ((grow branches) leftwards))`` is accepted too.
    """
    if not text.strip():
        raise TreeFormatError("empty sentence")
    _check_balance(text)
    per_char = set(text) <= _CANONICAL_CHARS
    tokens: list[str] = []
    for tok, _ in _tokenize(text):
        if per_char and tok not in "()":
            tokens.extend("x" * len(tok))
        else:
            tokens.append(tok)

    position = 0
    idx = 0

    def read() -> BinaryTree:
        nonlocal idx, position
        tok = tokens[idx]
        if tok == ")":
            raise TreeFormatError("unexpected ')'")
        if tok != "(":
            idx += 1
            position += 1
            return Leaf(position)
        idx += 1
        children = []
        while tokens[idx] != ")":
            children.append(read())
        idx += 1
        if len(children) == 1:
            raise TreeFormatError("unary chain: bracket around a single constituent")
        if len(children) != 2:
            raise TreeFormatError(f"node with {len(children)} children is not binary")
        return Node(children[0], children[1])

    tree = read()
    if idx != len(tokens):
        raise TreeFormatError("trailing material after the tree")
    return tree


def _iter_treebank_tokens(text: str):
    line_starts = [0]
    for m in re.finditer("\n", text):
        line_starts.append(m.end())
    for tok, off in _tokenize(text):
        line = bisect.bisect_right(line_starts, off)
        col = off - line_starts[line - 1] + 1
        yield tok, line, col


def parse_treebank(text: str) -> list[GoldTree]:
    """Read one or more labeled S-expressions.

    Trees may span several lines; boundaries come from bracket balancing.
    ``(S (NP (DT the) (NN cat)) (VP (VBD sat)))`` yields a single tree.
    """
    toks = list(_iter_treebank_tokens(text))
    trees: list[GoldTree] = []
    idx = 0

    def where(i):
        if i >= len(toks):
            return "end of input"
        return f"line {toks[i][1]}, column {toks[i][2]}"

    def read() -> GoldTree:
        nonlocal idx
        if idx >= len(toks) or toks[idx][0] != "(":
            raise TreeFormatError(f"expected '(' at {where(idx)}")
        opened = where(idx)
        idx += 1
        label = ""
        if idx < len(toks) and toks[idx][0] not in "()":
            label = toks[idx][0]
            idx += 1
        if idx < len(toks) and toks[idx][0] not in "()":
            word = toks[idx][0]
            idx += 1
            if idx >= len(toks) or toks[idx][0] != ")":
                raise TreeFormatError(f"expected ')' after preterminal at {where(idx)}")
            idx += 1
            return GoldTree(label, word=word)
        children = []
        while idx < len(toks) and toks[idx][0] == "(":
            children.append(read())
        if idx >= len(toks):
            raise TreeFormatError(f"unbalanced brackets: '(' at {opened} is never closed")
        if toks[idx][0] != ")":
            raise TreeFormatError(f"unexpected token {toks[idx][0]!r} at {where(idx)}")
        idx += 1
        if not children:
            raise TreeFormatError(f"empty constituent at {where(idx - 1)}")
        return GoldTree(label, children)

    while idx < len(toks):
        if toks[idx][0] != "(":
            raise TreeFormatError(f"stray token {toks[idx][0]!r} at {where(idx)}")
        trees.append(read())
    if not trees:
        raise TreeFormatError("empty sentence")
    return trees


def parse_tree_text(text: str, format: str = "canonical"):
    """Parse ``text`` as a canonical binary tree or a single treebank tree."""
    if format == "canonical":
        return parse_canonical(text)
    if format == "treebank":
        trees = parse_treebank(text)
        if len(trees) != 1:
            raise TreeFormatError(f"expected one tree, found {len(trees)}")
        return trees[0]
    raise ValueError(f"unknown format {format!r}")


# -- spans ---------------------------------------------------------------------


def _binary_node_spans(tree: BinaryTree) -> Iterator[Span]:
    stack = [tree]
    while stack:
        t = stack.pop()
        yield t.span
        if isinstance(t, Node):
            stack.append(t.right)
            stack.append(t.left)


def _gold_node_spans(tree: GoldTree) -> tuple[list[Span], int]:
    out: list[Span] = []

    def walk(t: GoldTree, offset: int) -> int:
        if t.is_preterminal:
            out.append(Span(offset + 1, offset + 1))
            return offset + 1
        end = offset
        for child in t.children:
            end = walk(child, end)
        out.append(Span(offset + 1, end))
        return end

    n = walk(tree, 0)
    return out, n


def spans(tree, include_trivial: bool = False, include_whole: bool = True) -> frozenset[Span]:
    """The set of constituent spans of a binary or gold tree.

    The whole-sentence span is governed by ``include_whole`` alone, even for
    a one-word sentence.
    """
    if isinstance(tree, GoldTree):
        all_spans, n = _gold_node_spans(tree)
        first = 1
    else:
        all_spans = _binary_node_spans(tree)
        first, n = tree.start, tree.end
    whole = Span(first, n)
    out = set()
    for s in all_spans:
        if s == whole:
            if include_whole:
                out.add(s)
        elif s.trivial:
            if include_trivial:
                out.add(s)
        else:
            out.add(s)
    return frozenset(out)


def mirror(tree: BinaryTree) -> BinaryTree:
    """Left-right reflection; leaf ``i`` maps to ``lo + hi - i``."""
    total = tree.start + tree.end

    def walk(t):
        if isinstance(t, Leaf):
            return Leaf(total - t.position)
        return Node(walk(t.right), walk(t.left))

    return walk(tree)


# -- counting, enumeration, sampling -------------------------------------------


@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    if m < 0:
        raise ValueError("catalan index must be >= 0")
    return math.comb(2 * m, m) // (m + 1)


@lru_cache(maxsize=64)
def _enumerate(start: int, end: int) -> tuple[BinaryTree, ...]:
    if start == end:
        return (Leaf(start),)
    out = []
    for split in range(start, end):
        for left in _enumerate(start, split):
            for right in _enumerate(split + 1, end):
                out.append(Node(left, right))
    return tuple(out)


def enumerate_binary_trees(n: int) -> list[BinaryTree]:
    """All ``catalan(n - 1)`` binary trees over ``n`` leaves.

    Ordered by root split position (leftmost first), recursively.
    """
    if not 1 <= n <= MAX_ENUMERATION_LEAVES:
        raise ValueError(f"n must be in [1, {MAX_ENUMERATION_LEAVES}], got {n}")
    return list(_enumerate(1, n))


def sample_uniform_tree(n: int, random_state=None, start: int = 1) -> BinaryTree:
    """Draw a tree uniformly from the ``catalan(n - 1)`` trees over n leaves.

    The root's left subtree size ``k`` is chosen with exact integer weight
    ``C(k-1) * C(n-k-1)``; both subtrees are then sampled independently.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = as_generator(random_state)

    def draw(lo: int, size: int) -> BinaryTree:
        if size == 1:
            return Leaf(lo)
        r = randbelow(rng, catalan(size - 1))
        for k in range(1, size):
            w = catalan(k - 1) * catalan(size - k - 1)
            if r < w:
                return Node(draw(lo, k), draw(lo + k, size - k))
            r -= w
        raise AssertionError("split weights do not sum to the Catalan number")

    return draw(start, n)
