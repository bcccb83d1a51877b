import math

import pytest

from arbozeta.catalog import forests_up_to
from arbozeta.errors import DomainError, NotSemiconvergent
from arbozeta.forest_algebra import convergence_class
from arbozeta.suites import brute_polylog_forest
from arbozeta.trees import Alphabet, Forest, b_plus, leaf, tree_forest
from arbozeta.zeta import eval_arborified_polylog, eval_polylog


class TestPolylog:
    def test_log_oracle(self):
        ev = eval_polylog((1,), 0.5, 1e-10)
        assert abs(ev.value - math.log(2)) <= 1e-10

    def test_empty_index(self):
        assert eval_polylog((), 0.3).value == 1.0

    def test_dilog_at_half(self):
        # Li_2(1/2) = pi^2/12 - ln(2)^2/2
        want = math.pi**2 / 12 - math.log(2) ** 2 / 2
        ev = eval_polylog((2,), 0.5, 1e-10)
        assert abs(ev.value - want) <= 1e-10

    def test_log_squared_over_two(self):
        ev = eval_polylog((1, 1), 0.5, 1e-10)
        assert abs(ev.value - math.log(2) ** 2 / 2) <= 1e-10

    def test_zero_argument(self):
        assert eval_polylog((2, 1), 0.0).value == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_polylog((2,), 1.0)
        with pytest.raises(DomainError):
            eval_polylog((2,), -0.1)

    def test_partial_sum_value(self):
        ev = eval_polylog((2,), 0.5, 1e-10)
        partial = sum(0.5**n / n**2 for n in range(1, 200))
        assert abs(ev.value - partial) <= 1e-10


class TestArborifiedPolylog:
    def test_single_y(self):
        ev = eval_arborified_polylog(tree_forest(leaf("y")), 0.5, 1e-10)
        assert abs(ev.value - math.log(2)) <= 1e-10

    def test_empty_forest(self):
        assert eval_arborified_polylog(Forest(), 0.5).value == 1.0

    def test_y_ladder(self):
        forest = tree_forest(b_plus("y", tree_forest(leaf("y"))))
        ev = eval_arborified_polylog(forest, 0.5, 1e-10)
        assert abs(ev.value - math.log(2) ** 2 / 2) <= 1e-10

    def test_rejects_non_semiconvergent(self):
        with pytest.raises(NotSemiconvergent):
            eval_arborified_polylog(tree_forest(leaf("x")), 0.5)

    def test_against_series_oracle(self):
        for forest in forests_up_to(4, ("x", "y"), include_empty=False):
            if not convergence_class(forest, Alphabet.XY).is_semiconvergent:
                continue
            via_reduction = eval_arborified_polylog(forest, 0.5, 1e-9)
            via_series = brute_polylog_forest(forest, 0.5)
            assert abs(via_reduction.value - via_series) <= 1e-8
