"""Unlabeled bracket F1 and Monte Carlo expected F1 under random trees."""
from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Sequence

from ._random import as_generator, check_seed, substream
from .parser import coo_parse
from .trees import BinaryTree, GoldTree, n_leaves, sample_uniform_tree, spans
from .validation import Variant, check_tie, check_variant

__all__ = [
    "PUNCTUATION_TAGS",
    "EvalConfig",
    "F1Result",
    "TreeDistribution",
    "LengthMismatchError",
    "bracket_f1",
    "corpus_f1",
    "decode_corpus",
    "sample_skew_tree",
    "expected_f1_mc",
    "MCResult",
]

# PTB punctuation tags plus empty elements (traces)
PUNCTUATION_TAGS = frozenset(["''", "``", ".", ":", ",", "-LRB-", "-RRB-", "#", "$", "-NONE-"])


class LengthMismatchError(ValueError):
    pass


class TreeDistribution(str, Enum):
    UNIFORM = "uniform_binary"
    LEFT_SKEW = "left_skew"
    RIGHT_SKEW = "right_skew"

    @classmethod
    def coerce(cls, value) -> "TreeDistribution":
        if isinstance(value, cls):
            return value
        aliases = {"uniform": cls.UNIFORM, "left": cls.LEFT_SKEW, "right": cls.RIGHT_SKEW}
        value = str(value).lower()
        if value in aliases:
            return aliases[value]
        return cls(value)


@dataclass(frozen=True)
class EvalConfig:
    include_single_word_spans: bool = False
    include_whole_sentence_span: bool = True
    punctuation_tags: frozenset = PUNCTUATION_TAGS
    aggregation: str = "macro_sentence_mean"

    def __post_init__(self):
        if self.aggregation not in ("macro_sentence_mean", "micro_corpus"):
            raise ValueError(f"unknown aggregation {self.aggregation!r}")
        object.__setattr__(self, "punctuation_tags", frozenset(self.punctuation_tags))

    def spans(self, tree) -> frozenset:
        return spans(tree, self.include_single_word_spans, self.include_whole_sentence_span)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["punctuation_tags"] = sorted(self.punctuation_tags)
        return d


@dataclass
class F1Result:
    precision: float
    recall: float
    f1: float
    per_sentence: list | None = None
    matched: int = 0
    predicted: int = 0
    gold: int = 0


def _prf(matched: int, n_pred: int, n_gold: int) -> tuple[float, float, float]:
    if n_pred == 0 and n_gold == 0:
        return 1.0, 1.0, 1.0
    if n_pred == 0 or n_gold == 0:
        return (0.0 if n_pred else 1.0), (0.0 if n_gold else 1.0), 0.0
    p = matched / n_pred
    r = matched / n_gold
    f = 0.0 if matched == 0 else 2 * p * r / (p + r)
    return p, r, f


def bracket_f1(predicted, gold) -> F1Result:
    """Precision, recall and F1 of two span sets.

    Two empty sets agree vacuously (F1 = 1); exactly one empty set gives 0.
    """
    predicted, gold = frozenset(predicted), frozenset(gold)
    matched = len(predicted & gold)
    p, r, f = _prf(matched, len(predicted), len(gold))
    return F1Result(p, r, f, matched=matched, predicted=len(predicted), gold=len(gold))


def _gold_for_eval(tree: GoldTree, config: EvalConfig) -> GoldTree | None:
    if config.punctuation_tags:
        return tree.strip(config.punctuation_tags)
    return tree


def _aggregate(results: Sequence[F1Result], config: EvalConfig) -> F1Result:
    if not results:
        raise ValueError("empty corpus")
    if config.aggregation == "micro_corpus":
        m = sum(r.matched for r in results)
        n_pred = sum(r.predicted for r in results)
        n_gold = sum(r.gold for r in results)
        p, r, f = _prf(m, n_pred, n_gold)
        return F1Result(p, r, f, matched=m, predicted=n_pred, gold=n_gold)
    k = len(results)
    return F1Result(
        math.fsum(r.precision for r in results) / k,
        math.fsum(r.recall for r in results) / k,
        math.fsum(r.f1 for r in results) / k,
        matched=sum(r.matched for r in results),
        predicted=sum(r.predicted for r in results),
        gold=sum(r.gold for r in results),
    )


def corpus_f1(predicted: Sequence[BinaryTree], gold: Sequence, config: EvalConfig | None = None,
              keep_per_sentence: bool = False) -> F1Result:
    """Score predicted binary trees against gold trees sentence by sentence.

    Gold trees are stripped of ``config.punctuation_tags`` first; each
    prediction must cover exactly the remaining tokens. Gold may also be
    given as binary trees, which are used as-is.
    """
    config = config or EvalConfig()
    if len(predicted) != len(gold):
        raise LengthMismatchError(f"{len(predicted)} predicted trees vs {len(gold)} gold trees")
    results = []
    for idx, (pred, g) in enumerate(zip(predicted, gold)):
        if isinstance(g, GoldTree):
            g = _gold_for_eval(g, config)
            if g is None:
                raise LengthMismatchError(f"sentence {idx}: gold tree is empty after punctuation stripping")
            n_gold = len(g)
        else:
            n_gold = n_leaves(g)
        if n_leaves(pred) != n_gold:
            raise LengthMismatchError(
                f"sentence {idx}: predicted tree has {n_leaves(pred)} leaves, gold has {n_gold}"
            )
        results.append(bracket_f1(config.spans(pred), config.spans(g)))
    out = _aggregate(results, config)
    if keep_per_sentence:
        out.per_sentence = [r.f1 for r in results]
    return out


def decode_corpus(score_lines, variant="R", tie="leftmost") -> list[BinaryTree]:
    variant, tie = check_variant(variant), check_tie(tie)
    trees = []
    for lineno, scores in enumerate(score_lines, start=1):
        try:
            trees.append(coo_parse(scores, variant, tie))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return trees


def sample_skew_tree(n: int, dist, random_state=None) -> BinaryTree:
    """Uniform binary tree, or an R-/L-variant decode of i.i.d. uniform scores."""
    dist = TreeDistribution.coerce(dist)
    rng = as_generator(random_state)
    if dist is TreeDistribution.UNIFORM:
        return sample_uniform_tree(n, rng)
    variant = Variant.R if dist is TreeDistribution.RIGHT_SKEW else Variant.L
    return coo_parse(rng.random(n), variant)


@dataclass
class MCResult:
    mean: float
    sigma: float
    replicate_scores: list
    distribution: str
    samples_per_sentence: int
    replicates: int
    seed: int
    config: dict = field(default_factory=dict)

    @property
    def standard_error(self) -> float:
        return self.sigma / math.sqrt(self.replicates)

    def to_dict(self) -> dict:
        return asdict(self)


def _sentence_draws(args) -> list[F1Result]:
    gold_spans, n, dist, samples, seed, replicate, index, config = args
    rng = substream(seed, "expected_f1_mc", replicate, index)
    out = []
    for _ in range(samples):
        tree = sample_skew_tree(n, dist, rng)
        out.append(bracket_f1(config.spans(tree), gold_spans))
    return out


def expected_f1_mc(gold: Sequence, dist, samples_per_sentence: int = 10, replicates: int = 10,
                   seed: int = 0, config: EvalConfig | None = None, n_jobs: int = 1) -> MCResult:
    """Expected corpus F1 when every sentence gets a randomly drawn tree.

    A replicate draws ``samples_per_sentence`` trees per sentence, scores
    each of the resulting corpora and averages; ``sigma`` is the standard
    deviation of the replicate scores. Sentence ``s`` of replicate ``r``
    reads its own substream, so results do not depend on ``n_jobs``.
    """
    if samples_per_sentence < 1:
        raise ValueError("samples_per_sentence must be >= 1")
    if replicates < 2:
        raise ValueError("replicates must be >= 2 to estimate sigma")
    config = config or EvalConfig()
    dist = TreeDistribution.coerce(dist)
    seed = check_seed(seed)

    prepared = []
    for idx, g in enumerate(gold):
        if isinstance(g, GoldTree):
            g = _gold_for_eval(g, config)
            if g is None:
                raise LengthMismatchError(f"sentence {idx}: gold tree is empty after punctuation stripping")
            n = len(g)
        else:
            n = n_leaves(g)
        prepared.append((config.spans(g), n))
    if not prepared:
        raise ValueError("empty corpus")

    jobs = [
        (gs, n, dist, samples_per_sentence, seed, r, idx, config)
        for r in range(replicates)
        for idx, (gs, n) in enumerate(prepared)
    ]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            draws = list(pool.map(_sentence_draws, jobs, chunksize=max(1, len(jobs) // (4 * n_jobs))))
    else:
        draws = [_sentence_draws(job) for job in jobs]

    scores = []
    per = len(prepared)
    for r in range(replicates):
        block = draws[r * per:(r + 1) * per]
        corpus_scores = [
            _aggregate([sentence[s] for sentence in block], config).f1
            for s in range(samples_per_sentence)
        ]
        scores.append(math.fsum(corpus_scores) / samples_per_sentence)
    return MCResult(
        mean=math.fsum(scores) / replicates,
        sigma=statistics.stdev(scores),
        replicate_scores=scores,
        distribution=dist.value,
        samples_per_sentence=samples_per_sentence,
        replicates=replicates,
        seed=seed,
        config=config.to_dict(),
    )
