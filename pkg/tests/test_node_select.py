import math
import random
from fractions import Fraction

import pytest

from edsm.node_select import BipartiteInstance, solve_derandomized, solve_random


def random_instance(rng: random.Random, d: int, n_left: int) -> BipartiteInstance:
    n_right = rng.randint(2 * d, 4 * d + 10)
    adj = []
    for _ in range(n_left):
        deg = rng.randint(d + 1, 2 * d)
        adj.append(tuple(sorted(rng.sample(range(n_right), deg))))
    weights = tuple(rng.uniform(0, 10) for _ in range(n_right))
    return BipartiteInstance(n_left, n_right, weights, tuple(adj), Fraction(d))


def check_selection(g: BipartiteInstance, sel) -> None:
    for nbrs in g.adj:
        assert any(v in sel.chosen for v in nbrs), "uncovered left node"
    log_term = math.log(4 * g.n_left)
    assert sel.total_weight <= 4 * (g.total_weight / float(g.d)) * log_term + 1e-9
    assert sel.total_incidence <= 8 * g.n_left * log_term + 1e-9
    assert sel.total_weight == pytest.approx(sum(g.weights[v] for v in sel.chosen))
    assert sel.total_incidence == sum(
        1 for nbrs in g.adj for v in nbrs if v in sel.chosen
    )


class TestValidation:
    def test_degree_window_enforced(self):
        with pytest.raises(ValueError):
            BipartiteInstance(1, 4, (1.0,) * 4, ((0, 1, 2),), Fraction(3))  # deg == d
        with pytest.raises(ValueError):
            BipartiteInstance(1, 4, (1.0,) * 4, ((0, 1, 2, 3),), Fraction(3, 2))
        BipartiteInstance(1, 4, (1.0,) * 4, ((0, 1),), Fraction(3, 2))  # in (1.5, 3]

    def test_rejects_bad_edges_and_weights(self):
        with pytest.raises(ValueError):
            BipartiteInstance(1, 2, (1.0, -1.0), ((0, 1),), Fraction(1))
        with pytest.raises(ValueError):
            BipartiteInstance(1, 2, (1.0, 1.0), ((0, 0),), Fraction(1))
        with pytest.raises(ValueError):
            BipartiteInstance(1, 2, (1.0, 1.0), ((0, 5),), Fraction(1))


class TestSolvers:
    @pytest.mark.parametrize("d", [4, 8, 16])
    def test_bounds_hold_on_random_instances(self, d):
        rng = random.Random(d)
        for trial in range(40):
            g = random_instance(rng, d, rng.randint(1, 60))
            check_selection(g, solve_derandomized(g))
            check_selection(g, solve_random(g, trial))

    def test_empty_left_side(self):
        g = BipartiteInstance(0, 3, (1.0, 2.0, 3.0), (), Fraction(2))
        assert solve_derandomized(g).chosen == frozenset()
        assert solve_random(g, 0).chosen == frozenset()

    def test_select_all_regime(self):
        # p = ln(4)/d >= 1 when d <= ln 4: every right node is selected.
        g = BipartiteInstance(1, 2, (1.0, 1.0), ((0, 1),), Fraction(1))
        assert solve_random(g, 0).chosen == frozenset({0, 1})
        check_selection(g, solve_derandomized(g))

    def test_derandomized_is_deterministic(self):
        rng = random.Random(5)
        g = random_instance(rng, 8, 30)
        assert solve_derandomized(g).chosen == solve_derandomized(g).chosen

    def test_zero_weights(self):
        g = BipartiteInstance(2, 4, (0.0,) * 4, ((0, 1), (2, 3)), Fraction(3, 2))
        check_selection(g, solve_derandomized(g))
