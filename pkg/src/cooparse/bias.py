"""Span marginals: how likely is ``[i, j]`` to be a constituent?

Two reference distributions are compared. Under uniformly random binary trees
the marginal depends only on span length. Under uniformly random score
orderings decoded by the COO parser it does not, which is the
branching-direction bias.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._random import check_seed, substream
from .parser import coo_parse
from .trees import Span, catalan, spans
from .validation import Variant, check_variant

__all__ = [
    "MarginalTable",
    "uniform_tree_marginals",
    "coo_marginals_exact",
    "coo_marginals_mc",
]

MAX_UNIFORM = 500
MAX_EXACT = 10
MC_CHUNK = 10_000


@dataclass
class MarginalTable:
    n: int
    values: dict
    method: str
    variant: str | None = None
    samples: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def __getitem__(self, span) -> Fraction | float:
        return self.values[Span(*span)]

    def standard_error(self, span) -> float:
        """Binomial standard error of a Monte Carlo cell (0 for exact tables)."""
        if self.samples is None:
            return 0.0
        p = float(self[span])
        return math.sqrt(p * (1.0 - p) / self.samples)

    def reflected(self) -> "MarginalTable":
        n = self.n
        values = {Span(n + 1 - s.end, n + 1 - s.start): p for s, p in self.values.items()}
        return MarginalTable(n, values, self.method, self.variant, self.samples, self.seed)

    def rows(self):
        """``(i, j, probability)`` ordered by ``i`` then ``j``."""
        for i in range(1, self.n + 1):
            for j in range(i, self.n + 1):
                yield i, j, self.values[Span(i, j)]


def _all_spans(n: int):
    return [Span(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def uniform_tree_marginals(n: int) -> MarginalTable:
    """``P([i,j]) = C(l-1) * C(n-l) / C(n-1)`` with ``l = j - i + 1``.

    Contracting the span to a single leaf leaves ``C(n-l)`` outer trees, and
    there are ``C(l-1)`` ways to fill the span itself.
    """
    if not 1 <= n <= MAX_UNIFORM:
        raise ValueError(f"n must be in [1, {MAX_UNIFORM}], got {n}")
    total = catalan(n - 1)
    by_length = {l: Fraction(catalan(l - 1) * catalan(n - l), total) for l in range(1, n + 1)}
    values = {s: by_length[s.length] for s in _all_spans(n)}
    return MarginalTable(n, values, "closed_form")


def _coo_marginals_dp(n: int, variant: Variant) -> dict:
    # "free" spans have a uniformly random internal ordering; "edge" spans
    # are MIDDLE daughters whose maximum is already known to sit at one end
    free: dict = {Span(1, n): Fraction(1)}
    edge: dict = {}
    prob = {s: Fraction(0) for s in _all_spans(n)}

    def add(d, s, m):
        d[s] = d.get(s, 0) + m

    for length in range(n, 0, -1):
        for i in range(1, n - length + 2):
            j = i + length - 1
            s = Span(i, j)
            mf, me = free.get(s, 0), edge.get(s, 0)
            if not mf and not me:
                continue
            prob[s] += mf + me
            if length == 1:
                continue
            if length == 2:
                add(free, Span(i, i), mf + me)
                add(free, Span(j, j), mf + me)
                continue
            if me:
                if variant is Variant.R:
                    add(free, Span(i, i), me)
                    add(free, Span(i + 1, j), me)
                else:
                    add(free, Span(i, j - 1), me)
                    add(free, Span(j, j), me)
            if mf:
                share = mf / length
                add(free, Span(i, i), share)
                add(free, Span(i + 1, j), share)
                add(free, Span(i, j - 1), share)
                add(free, Span(j, j), share)
                for k in range(i + 1, j):
                    if variant is Variant.R:
                        add(free, Span(i, k - 1), share)
                        add(edge, Span(k, j), share)
                    else:
                        add(edge, Span(i, k), share)
                        add(free, Span(k + 1, j), share)
    return prob


def _coo_marginals_enumerate(n: int, variant: Variant) -> dict:
    counts: Counter = Counter()
    total = 0
    for perm in itertools.permutations(range(1, n + 1)):
        counts.update(spans(coo_parse(perm, variant), include_trivial=True))
        total += 1
    return {s: Fraction(counts[s], total) for s in _all_spans(n)}


def coo_marginals_exact(n: int, variant="R", method: str = "dp") -> MarginalTable:
    """Exact marginals under uniformly random score orderings.

    ``method="enumerate"`` decodes all ``n!`` permutations. ``"dp"`` pushes
    probability mass down the split recursion instead and gives identical
    rationals in polynomial time.
    """
    if not 1 <= n <= MAX_EXACT:
        raise ValueError(f"n must be in [1, {MAX_EXACT}], got {n}")
    variant = check_variant(variant)
    if method == "dp":
        values = _coo_marginals_dp(n, variant)
    elif method == "enumerate":
        values = _coo_marginals_enumerate(n, variant)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MarginalTable(n, values, "exact_enumeration", variant=variant.value)


def _mc_chunk(args):
    n, size, seed, index = args
    rng = substream(seed, "coo_marginals_mc", n, index)
    scores = rng.random((size, n))
    # the decode depends only on the relative order of the scores
    dtype = np.uint8 if n <= 256 else np.uint32
    ranks = np.argsort(np.argsort(scores, axis=1), axis=1).astype(dtype)
    return np.unique(ranks, axis=0, return_counts=True)


def coo_marginals_mc(n: int, variant="R", samples: int = 100_000, seed: int = 0, n_jobs: int = 1) -> MarginalTable:
    """Monte Carlo marginals from i.i.d. standard-uniform score vectors.

    The budget is cut into fixed chunks, each with its own substream, so the
    table does not depend on ``n_jobs``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    variant = check_variant(variant)
    seed = check_seed(seed)
    jobs = [(n, min(MC_CHUNK, samples - lo), seed, index)
            for index, lo in enumerate(range(0, samples, MC_CHUNK))]
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(pool.map(_mc_chunk, jobs))
    else:
        parts = [_mc_chunk(job) for job in jobs]

    patterns, inverse = np.unique(np.concatenate([p for p, _ in parts]), axis=0, return_inverse=True)
    weights = np.bincount(inverse.ravel(), weights=np.concatenate([c for _, c in parts]),
                          minlength=len(patterns)).astype(np.int64)
    all_spans = _all_spans(n)
    index = {s: k for k, s in enumerate(all_spans)}
    counts = np.zeros(len(all_spans), dtype=np.int64)
    for row, w in zip(patterns.tolist(), weights.tolist()):
        hit = [index[s] for s in spans(coo_parse(row, variant), include_trivial=True)]
        counts[hit] += w
    values = {s: int(c) / samples for s, c in zip(all_spans, counts)}
    return MarginalTable(n, values, "monte_carlo", variant=variant.value, samples=samples, seed=seed)
