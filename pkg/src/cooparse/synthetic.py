"""Synthetic gold corpora for exercising the evaluation pipeline without a licensed treebank."""
from __future__ import annotations

from ._random import check_seed, substream
from .trees import GoldTree, mirror, right_comb, sample_uniform_tree


def branching_corpus(n_sentences: int, min_length: int = 3, max_length: int = 10,
                     comb_prob: float = 0.7, direction: str = "right", seed: int = 0) -> list[GoldTree]:
    """Gold trees that are combs with probability ``comb_prob`` and uniform
    random trees otherwise. ``direction="left"`` mirrors every tree."""
    if not 1 <= min_length <= max_length:
        raise ValueError("need 1 <= min_length <= max_length")
    if not 0.0 <= comb_prob <= 1.0:
        raise ValueError("comb_prob must be in [0, 1]")
    if direction not in ("right", "left"):
        raise ValueError("direction must be 'right' or 'left'")
    rng = substream(check_seed(seed), "branching_corpus")
    out = []
    for _ in range(n_sentences):
        n = int(rng.integers(min_length, max_length + 1))
        tree = right_comb(n) if rng.random() < comb_prob else sample_uniform_tree(n, rng)
        if direction == "left":
            tree = mirror(tree)
        out.append(GoldTree.from_binary(tree, label="X", tag="W"))
    return out
