import math
import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cooparse.evaluation import (
    EvalConfig,
    LengthMismatchError,
    TreeDistribution,
    bracket_f1,
    corpus_f1,
    decode_corpus,
    expected_f1_mc,
    sample_skew_tree,
)
from cooparse.synthetic import branching_corpus
from cooparse.trees import GoldTree, Span, mirror, parse_tree_text, right_comb, sample_uniform_tree, to_bracket_string

from oracles import exact_expected_f1

T = parse_tree_text


def S(*pairs):
    return {Span(*p) for p in pairs}


class TestBracketF1:
    def test_identical(self):
        spans = S((1, 4), (2, 4))
        assert bracket_f1(spans, spans).f1 == 1.0

    def test_two_thirds(self):
        r = bracket_f1(S((1, 4), (2, 4), (3, 4)), S((1, 4), (1, 2), (3, 4)))
        assert r.precision == pytest.approx(2 / 3)
        assert r.recall == pytest.approx(2 / 3)
        assert r.f1 == pytest.approx(2 / 3)

    def test_both_empty(self):
        assert bracket_f1(set(), set()).f1 == 1.0

    def test_one_empty(self):
        assert bracket_f1(S((1, 2)), set()).f1 == 0.0
        assert bracket_f1(set(), S((1, 2))).f1 == 0.0

    def test_disjoint(self):
        assert bracket_f1(S((1, 2)), S((2, 3))).f1 == 0.0

    @given(st.sets(st.tuples(st.integers(1, 6), st.integers(1, 6))),
           st.sets(st.tuples(st.integers(1, 6), st.integers(1, 6))))
    def test_fields_in_range(self, pred, gold):
        r = bracket_f1(pred, gold)
        for v in (r.precision, r.recall, r.f1):
            assert 0.0 <= v <= 1.0
        if pred and gold and r.matched:
            assert r.precision == r.matched / len(pred)
            assert r.recall == r.matched / len(gold)
            assert r.f1 == pytest.approx(2 * r.precision * r.recall / (r.precision + r.recall))


class TestCorpusF1:
    def test_perfect(self):
        gold = [T("(x(xx))"), T("((xx)((xx)x))")]
        assert corpus_f1(gold, gold).f1 == 1.0

    def test_single_sentence_half(self):
        assert corpus_f1([T("((xx)x)")], [T("(x(xx))")]).f1 == pytest.approx(0.5)

    def test_macro_vs_micro(self):
        pred = [T("(x(xx))"), right_comb(5)]
        gold = [T("(x(xx))"), T("((xx)((xx)x))")]
        macro = corpus_f1(pred, gold, EvalConfig(aggregation="macro_sentence_mean"))
        micro = corpus_f1(pred, gold, EvalConfig(aggregation="micro_corpus"))
        assert macro.f1 == pytest.approx(0.75)
        assert micro.f1 == pytest.approx(2 / 3)

    def test_gold_tree_with_punctuation(self):
        g = T("(S (NP (DT the) (NN cat)) (VP (VBD sat) (. .)))", "treebank")
        assert corpus_f1([T("((xx)x)")], [g]).f1 == 1.0
        with pytest.raises(LengthMismatchError):
            corpus_f1([T("((xx)x)")], [g], EvalConfig(punctuation_tags=()))

    def test_length_mismatch_reports_index(self):
        with pytest.raises(LengthMismatchError, match="sentence 1"):
            corpus_f1([T("(xx)"), T("(xx)")], [T("(xx)"), T("(x(xx))")])

    def test_corpus_size_mismatch(self):
        with pytest.raises(LengthMismatchError):
            corpus_f1([T("(xx)")], [])

    def test_flags(self):
        pred, gold = [T("((xx)x)")], [T("(x(xx))")]
        assert corpus_f1(pred, gold, EvalConfig(include_whole_sentence_span=False)).f1 == 0.0
        with_trivial = corpus_f1(pred, gold, EvalConfig(include_single_word_spans=True)).f1
        assert with_trivial == pytest.approx(2 * 4 / 5 * 4 / 5 / (8 / 5))

    def test_per_sentence(self):
        r = corpus_f1([T("((xx)x)"), T("(xx)")], [T("(x(xx))"), T("(xx)")], keep_per_sentence=True)
        assert r.per_sentence == [pytest.approx(0.5), 1.0]

    def test_mirror_invariance(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            lengths = rng.integers(1, 9, size=6)
            pred = [sample_uniform_tree(int(n), rng) for n in lengths]
            gold = [sample_uniform_tree(int(n), rng) for n in lengths]
            for agg in ("macro_sentence_mean", "micro_corpus"):
                cfg = EvalConfig(aggregation=agg)
                a = corpus_f1(pred, gold, cfg).f1
                b = corpus_f1([mirror(t) for t in pred], [mirror(t) for t in gold], cfg).f1
                assert a == pytest.approx(b, abs=1e-12)


class TestDecodeCorpus:
    def test_line(self):
        assert [to_bracket_string(t) for t in decode_corpus([[3, 1, 2]], "R")] == ["(x(xx))"]

    def test_count_preserved_and_combs(self):
        lines = [list(range(n, 0, -1)) for n in range(1, 9)]
        trees = decode_corpus(lines)
        assert trees == [right_comb(n) for n in range(1, 9)]

    def test_error_has_line_number(self):
        with pytest.raises(ValueError, match="line 2"):
            decode_corpus([[1.0], []])


class TestSkewSampling:
    def test_right_skew_n3(self):
        rng = np.random.default_rng(3)
        draws = 30_000
        counts = Counter(to_bracket_string(sample_skew_tree(3, "right_skew", rng)) for _ in range(draws))
        sigma = math.sqrt(2 / 9 / draws)
        assert abs(counts["(x(xx))"] / draws - 2 / 3) < 4 * sigma

    def test_left_skew_n3_mirrored(self):
        rng = np.random.default_rng(4)
        draws = 30_000
        counts = Counter(to_bracket_string(sample_skew_tree(3, TreeDistribution.LEFT_SKEW, rng)) for _ in range(draws))
        sigma = math.sqrt(2 / 9 / draws)
        assert abs(counts["((xx)x)"] / draws - 2 / 3) < 4 * sigma

    def test_uniform_n3(self):
        rng = np.random.default_rng(5)
        draws = 30_000
        counts = Counter(to_bracket_string(sample_skew_tree(3, "uniform", rng)) for _ in range(draws))
        assert abs(counts["(x(xx))"] / draws - 0.5) < 4 * math.sqrt(0.25 / draws)

    def test_unknown(self):
        with pytest.raises(ValueError):
            sample_skew_tree(3, "diagonal")


class TestExactOracle:
    @pytest.mark.parametrize("dist, value", [("uniform", Fraction(3, 4)), ("right", Fraction(5, 6)),
                                             ("left", Fraction(2, 3))])
    def test_worked_examples(self, dist, value):
        assert exact_expected_f1("(x(xx))", dist) == value


def _within(result, exact, k=3.0):
    return abs(result.mean - float(exact)) <= k * result.standard_error


class TestExpectedF1MC:
    @pytest.mark.parametrize("dist", ["uniform", "right", "left"])
    def test_n3_worked_examples(self, dist):
        r = expected_f1_mc([T("(x(xx))")], dist, samples_per_sentence=1000, replicates=10, seed=5)
        assert _within(r, exact_expected_f1("(x(xx))", dist))

    @pytest.mark.parametrize("dist", ["uniform", "right", "left"])
    def test_small_corpus_converges(self, dist):
        gold_strings = ["(xx)", "(x(xx))", "((xx)x)", "((xx)(xx))", "(x((xx)x))"]
        exact = sum(exact_expected_f1(g, dist) for g in gold_strings) / len(gold_strings)
        r = expected_f1_mc([T(g) for g in gold_strings], dist, samples_per_sentence=400, replicates=8, seed=11)
        assert _within(r, exact)

    def test_deterministic_and_job_independent(self):
        gold = [T("(x(xx))"), T("((xx)((xx)x))")]
        a = expected_f1_mc(gold, "right", 20, 4, seed=7)
        b = expected_f1_mc(gold, "right", 20, 4, seed=7)
        c = expected_f1_mc(gold, "right", 20, 4, seed=7, n_jobs=2)
        assert a.replicate_scores == b.replicate_scores == c.replicate_scores

    def test_mirror_relations(self):
        gold = branching_corpus(60, 3, 9, comb_prob=0.7, seed=2)
        mirrored = branching_corpus(60, 3, 9, comb_prob=0.7, direction="left", seed=2)
        kw = dict(samples_per_sentence=20, replicates=6, seed=3)
        u, um = expected_f1_mc(gold, "uniform", **kw), expected_f1_mc(mirrored, "uniform", **kw)
        assert abs(u.mean - um.mean) <= 3 * math.hypot(u.sigma, um.sigma)
        left, right_m = expected_f1_mc(gold, "left", **kw), expected_f1_mc(mirrored, "right", **kw)
        assert abs(left.mean - right_m.mean) <= 3 * math.hypot(left.sigma, right_m.sigma)

    def test_invalid(self):
        with pytest.raises(ValueError):
            expected_f1_mc([T("(xx)")], "uniform", replicates=1)
        with pytest.raises(ValueError):
            expected_f1_mc([T("(xx)")], "uniform", samples_per_sentence=0)
        with pytest.raises(ValueError):
            expected_f1_mc([], "uniform")

    def test_gold_trees_accepted(self):
        g = GoldTree.from_binary(T("(x(xx))"))
        r = expected_f1_mc([g], "uniform", 50, 3, seed=0)
        assert 0.0 <= r.mean <= 1.0


def test_synthetic_corpus_reproducible():
    a = branching_corpus(30, seed=4)
    b = branching_corpus(30, seed=4)
    assert a == b
    assert all(3 <= len(g) <= 10 for g in a)
    left = branching_corpus(30, seed=4, direction="left")
    assert [len(g) for g in left] == [len(g) for g in a]


def test_random_corpus_f1_bounds():
    rnd = random.Random(0)
    for _ in range(50):
        n = rnd.randint(1, 10)
        r = corpus_f1([sample_uniform_tree(n, rnd.randint(0, 999))], [sample_uniform_tree(n, rnd.randint(0, 999))])
        assert 0.0 <= r.f1 <= 1.0
