import math

import mpmath as mp
import numpy as np
import pytest

from arbozeta.catalog import forests_up_to
from arbozeta.errors import DivergentIndex, NonConvergent, PrecisionUnreachable
from arbozeta.forest_algebra import convergence_class, ConvergenceClass
from arbozeta.lincomb import LinComb
from arbozeta.trees import Forest, Tree, b_plus, ladder, leaf, tree_forest
from arbozeta.zeta import (
    MzvCombination,
    brute_force_azv,
    eval_combination,
    eval_mzv,
    reduce_azv,
    star_to_strict,
)

mp.mp.dps = 30


def brute_mzv(s, horizon, star=False):
    """Reference nested summation, independent of the evaluator's tail models."""
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    cur = ns ** float(-s[-1])
    for j in range(len(s) - 2, -1, -1):
        pre = np.cumsum(cur)
        if not star:
            pre = np.concatenate(([0.0], pre[:-1]))
        cur = ns ** float(-s[j]) * pre
    return float(cur.sum())


CLOSED_FORMS = {
    (2,): mp.pi**2 / 6,
    (4,): mp.pi**4 / 90,
    (2, 2): mp.pi**4 / 120,
    (2, 1): mp.zeta(3),
    (2, 1, 1): mp.zeta(4),
    (3, 1): mp.pi**4 / 360,
    (2, 2, 2): mp.pi**6 / 5040,
    (2, 1, 1, 1): mp.zeta(5),
}


class TestEvalMzv:
    @pytest.mark.parametrize("index,value", sorted(CLOSED_FORMS.items()))
    def test_closed_forms(self, index, value):
        ev = eval_mzv(index, "strict", 1e-10)
        assert ev.abs_error <= 1e-10
        assert abs(ev.value - float(value)) <= ev.abs_error

    def test_certified_bound_vs_brute(self):
        for s in [(2, 3), (3, 1, 2), (2, 1, 2, 1), (4, 1, 1)]:
            ev = eval_mzv(s, "strict", 1e-9)
            ref = brute_mzv(s, 60000)
            # brute truncation dominates; the evaluator must sit above it,
            # closer to the limit, and within a coarse envelope
            assert ev.value >= ref - 1e-12
            assert ev.value - ref < 0.05

    def test_empty_index_is_one(self):
        ev = eval_mzv((), "strict")
        assert ev.value == 1.0 and ev.abs_error == 0.0

    def test_divergent_rejected(self):
        with pytest.raises(DivergentIndex):
            eval_mzv((1, 2), "strict")
        with pytest.raises(DivergentIndex):
            eval_mzv((1,), "star")

    def test_star_values(self):
        z3 = float(mp.zeta(3))
        ev = eval_mzv((2, 1), "star", 1e-10)
        assert abs(ev.value - 2 * z3) <= 2e-10

    def test_star_vs_brute(self):
        for s in [(2, 1, 1), (2, 2), (3, 1)]:
            ev = eval_mzv(s, "star", 1e-9)
            ref = brute_mzv(s, 60000, star=True)
            assert ev.value >= ref - 1e-12
            assert ev.value - ref < 0.05

    def test_deep_ones_reach_high_precision(self):
        duality = float(mp.zeta(7))
        ev = eval_mzv((2, 1, 1, 1, 1, 1), "strict", 1e-11)
        assert abs(ev.value - duality) <= ev.abs_error <= 1e-11

    def test_precision_unreachable(self):
        from arbozeta.zeta import clear_mzv_cache

        clear_mzv_cache()
        with pytest.raises(PrecisionUnreachable):
            eval_mzv((2, 1, 1), "strict", 1e-9, max_n=4000)

    def test_cache_returns_finer(self):
        fine = eval_mzv((3, 2), "strict", 1e-12)
        coarse = eval_mzv((3, 2), "strict", 1e-6)
        assert coarse.abs_error <= 1e-12
        assert coarse.value == fine.value


class TestStarToStrict:
    def test_depth_one(self):
        assert star_to_strict((2,)).terms == {(2,): 1}

    def test_examples(self):
        assert star_to_strict((2, 1)).terms == {(2, 1): 1, (3,): 1}
        assert star_to_strict((2, 1, 1)).terms == {
            (2, 1, 1): 1,
            (3, 1): 1,
            (2, 2): 1,
            (4,): 1,
        }

    def test_agrees_with_direct_star(self):
        for s in [(2, 1), (2, 2), (2, 1, 1), (3, 1, 2)]:
            direct = eval_mzv(s, "star", 1e-10)
            merged = eval_combination(star_to_strict(s), 1e-10)
            assert abs(direct.value - merged.value) <= direct.abs_error + merged.abs_error

    def test_brute_force_triple(self):
        # non-strict triple sum at a small horizon, coarse tolerance
        total = 0.0
        for n1 in range(1, 301):
            inner2 = 0.0
            for n2 in range(1, n1 + 1):
                inner3 = sum(1.0 / n3 for n3 in range(1, n2 + 1))
                inner2 += inner3 / n2
            total += inner2 / n1**2
        merged = eval_combination(star_to_strict((2, 1, 1)), 1e-10)
        assert abs(total - merged.value) < 0.1

    def test_divergent_rejected(self):
        with pytest.raises(DivergentIndex):
            star_to_strict((1, 2))


class TestReduceAzv:
    def test_two_vertices(self):
        red = reduce_azv(Forest((leaf(2), leaf(2))), "stuffle")
        assert red.terms == {(2, 2): 2, (4,): 1}
        assert red.flavor == "strict"

    def test_unit(self):
        red = reduce_azv(Forest(), "stuffle")
        assert red.terms == {(): 1}
        assert eval_combination(red).value == 1.0

    def test_shuffle_corolla(self):
        forest = tree_forest(
            b_plus("x", tree_forest(b_plus("y", tree_forest(leaf("y"), leaf("y")))))
        )
        red = reduce_azv(forest, "shuffle")
        assert red.terms == {(2, 1, 1): 2}

    def test_ladders_restrict_to_mzvs(self):
        for comp in [(2,), (3, 1), (2, 1, 2)]:
            red = reduce_azv(ladder(comp), "stuffle")
            assert red.terms == {comp: 1}

    def test_divergent_rejected(self):
        with pytest.raises(NonConvergent):
            reduce_azv(tree_forest(leaf(1)), "stuffle")

    def test_cancelling_divergences_allowed(self):
        bad = tree_forest(Tree(1, (leaf(2),)))
        comb = LinComb.of(bad) + LinComb.of(tree_forest(leaf(2))) - LinComb.of(bad)
        red = reduce_azv(comb, "stuffle")
        assert red.terms == {(2,): 1}

    def test_integer_coefficients(self):
        for forest in forests_up_to(4, (1, 2, 3)):
            if convergence_class(forest) is not ConvergenceClass.CONV_POSINT:
                continue
            assert reduce_azv(forest, "stuffle").all_integer()
            assert reduce_azv(forest, "star").all_integer()

    def test_star_flavor(self):
        red = reduce_azv(Forest((leaf(2), leaf(2))), "star")
        assert red.flavor == "star"
        assert red.terms == {(2, 2): 2, (4,): -1}


class TestEvalCombination:
    def test_pi_fourth_over_36(self):
        ev = eval_combination(MzvCombination({(2, 2): 2, (4,): 1}), 1e-10)
        assert abs(ev.value - math.pi**4 / 36) <= 1e-10

    def test_empty_is_zero(self):
        ev = eval_combination(MzvCombination({}))
        assert ev.value == 0.0

    def test_unit_term(self):
        ev = eval_combination(MzvCombination({(): 1}))
        assert ev.value == 1.0 and ev.abs_error == 0.0

    def test_euler_product_identity(self):
        # zeta(2,3)+zeta(3,2) = zeta(2)zeta(3) - zeta(5)
        lhs = eval_combination(MzvCombination({(2, 3): 1, (3, 2): 1}), 1e-10)
        rhs = float(mp.zeta(2) * mp.zeta(3) - mp.zeta(5))
        assert abs(lhs.value - rhs) <= 1e-9

    def test_budget_split(self):
        comb = MzvCombination({(2,): 1000000, (3,): -1})
        ev = eval_combination(comb, 1e-8)
        want = 1000000 * float(mp.zeta(2)) - float(mp.zeta(3))
        assert abs(ev.value - want) <= ev.abs_error <= 1e-8


class TestBruteForceAzv:
    def test_matches_reduction_small(self):
        for forest in forests_up_to(3, (1, 2, 3)):
            if convergence_class(forest) is not ConvergenceClass.CONV_POSINT:
                continue
            for flavor in ("stuffle", "star"):
                brute = brute_force_azv(forest, 2000, flavor)
                reduced = eval_combination(reduce_azv(forest, flavor), 1e-10)
                assert abs(brute.value - reduced.value) <= brute.abs_error + reduced.abs_error

    def test_literal_nested_loops(self):
        # corolla 2[1,1]: strict series sum_n n^-2 * (H_{n-1})^2
        tree = tree_forest(Tree(2, (leaf(1), leaf(1))))
        total = 0.0
        harmonic = 0.0
        for n in range(1, 4000):
            total += harmonic**2 / n**2
            harmonic += 1.0 / n
        via_arrays = brute_force_azv(tree, 3999, "stuffle")
        assert abs(via_arrays.value - total) < 1e-12
