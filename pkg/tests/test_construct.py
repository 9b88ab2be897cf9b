"""Extremal construction tests: planned parameters, built shapes, measured
diameters, and engine-verified hard distributions."""

import pytest

from pebbling.construct import (
    ExtremalSpec,
    antipodal_witness,
    build_gnd,
    unsolvable_witness_odd,
)
from pebbling.engine import is_reachable, max_pebbles_to, PebbleDistribution
from pebbling.exact import pebbling_number
from pebbling.formulas import (
    gnd_lower_bound,
    maximal_path_partition,
    tree_pebbling_formula,
)
from pebbling.graphs import Graph, diameter, make_family


class TestPlan:
    def test_even_divides_exactly(self):
        spec = ExtremalSpec.plan(9, 4)
        assert spec == ExtremalSpec(9, 4, 2, None, 4, 0)
        assert not spec.odd

    def test_even_with_remainder(self):
        assert ExtremalSpec.plan(8, 4) == ExtremalSpec(8, 4, 2, None, 3, 1)

    def test_odd_divides_exactly(self):
        spec = ExtremalSpec.plan(8, 3)
        assert spec == ExtremalSpec(8, 3, 1, 4, 4, 0)
        assert spec.odd

    def test_odd_with_remainder(self):
        assert ExtremalSpec.plan(9, 3) == ExtremalSpec(9, 3, 1, 4, 4, 1)

    def test_diameter_one_is_a_clique_plan(self):
        assert ExtremalSpec.plan(5, 1) == ExtremalSpec(5, 1, 0, 5, 5, 0)

    @pytest.mark.parametrize("n,d", [(0, 2), (3, 0), (-1, 3)])
    def test_rejects_nonpositive_parameters(self, n, d):
        with pytest.raises(ValueError, match="n >= 1"):
            ExtremalSpec.plan(n, d)


class TestBuild:
    @pytest.mark.parametrize(
        "n,d",
        [(9, 4), (8, 4), (7, 4), (12, 6), (5, 2), (11, 2),
         (8, 3), (9, 3), (10, 3), (7, 5), (2, 1), (5, 1)],
    )
    def test_vertex_count_and_diameter(self, n, d):
        g = build_gnd(n, d)
        assert g.n == n
        assert diameter(g) == d

    def test_even_case_is_a_tree(self):
        for n, d in [(9, 4), (8, 4), (12, 6), (5, 2)]:
            g = build_gnd(n, d)
            assert len(g.edges) == g.n - 1

    def test_diameter_two_collapses_to_a_star(self):
        g = build_gnd(6, 2)
        assert g.edges == tuple((0, i) for i in range(1, 6))

    def test_diameter_one_collapses_to_a_complete_graph(self):
        g = build_gnd(5, 1)
        assert len(g.edges) == 10

    def test_spider_shape(self):
        g = build_gnd(9, 4)
        assert g.degree(0) == 4
        assert sorted(g.degree(v) for v in range(1, 9)) == [1, 1, 1, 1, 2, 2, 2, 2]

    def test_deterministic(self):
        assert build_gnd(9, 3).edges == build_gnd(9, 3).edges

    @pytest.mark.parametrize(
        "n,d,achieved",
        [(3, 4, 2), (2, 3, 1), (1, 1, 0), (3, 8, 2), (4, 6, 3)],
    )
    def test_rejects_unrealizable_pairs_naming_achieved_diameter(
        self, n, d, achieved
    ):
        with pytest.raises(ValueError, match=f"achieves diameter {achieved}"):
            build_gnd(n, d)

    def test_rejects_when_clique_would_be_empty(self):
        with pytest.raises(ValueError, match="clique would be empty"):
            build_gnd(2, 5)

    @pytest.mark.parametrize("n,d", [(9, 4), (8, 4), (12, 6), (5, 2), (11, 2)])
    def test_tree_value_dominates_the_closed_lower_bound(self, n, d):
        g = build_gnd(n, d)
        value = tree_pebbling_formula(maximal_path_partition(g), 1)
        assert value >= gnd_lower_bound(n, d)

    def test_brute_force_agrees_with_tree_formula_on_one_instance(self):
        g = build_gnd(7, 4)
        assert pebbling_number(g).value == tree_pebbling_formula(
            maximal_path_partition(g), 1
        )


class TestOddWitness:
    def test_clique_with_legs_instance(self):
        root, D = unsolvable_witness_odd(8, 3)
        assert root == 4
        assert D.counts == (0, 0, 0, 0, 0, 7, 3, 3)
        assert D.size == 13
        g = build_gnd(8, 3)
        assert not is_reachable(g, D, PebbleDistribution.point(8, root, 1))
        # one more pebble than the witness is forced, and that already beats
        # the closed-form bound
        assert D.size + 1 == 14 >= gnd_lower_bound(8, 3) == 11

    def test_diameter_one_gives_the_classic_complete_graph_witness(self):
        root, D = unsolvable_witness_odd(5, 1)
        assert root == 0
        assert D.counts == (0, 1, 1, 1, 1)

    def test_remainder_leg_stays_empty(self):
        # With a spare leg as long as the full ones, pebbling it would let
        # two legs combine through their shared clique vertex.
        root, D = unsolvable_witness_odd(9, 3)
        assert D.counts == (0, 0, 0, 0, 0, 7, 3, 3, 0)
        g = build_gnd(9, 3)
        extra = list(D.counts)
        extra[8] = 3
        assert is_reachable(
            g, PebbleDistribution(tuple(extra)), PebbleDistribution.point(9, root, 1)
        )

    def test_larger_clique(self):
        root, D = unsolvable_witness_odd(10, 3)
        assert root == 5
        assert D.size == 16 and sorted(D.counts)[-3:] == [3, 3, 7]

    def test_rejects_even_diameter(self):
        with pytest.raises(ValueError, match="odd"):
            unsolvable_witness_odd(9, 4)


class TestAntipodalWitness:
    @pytest.mark.parametrize(
        "family,params,t,root,pile",
        [
            ("cycle", (6,), 1, 3, 7),
            ("complete", (2,), 2, 1, 3),
            ("hypercube", (3,), 1, 7, 7),
            ("path", (4,), 2, 3, 15),
        ],
    )
    def test_known_piles(self, family, params, t, root, pile):
        g = make_family(family, *params)
        r, D = antipodal_witness(g, t)
        assert r == root
        assert D.counts[0] == pile and D.size == pile
        assert max_pebbles_to(g, D, r) < t

    def test_single_vertex_graph(self):
        root, D = antipodal_witness(Graph(1, []), 1)
        assert (root, D.size) == (0, 0)

    def test_one_more_pebble_suffices(self):
        g = make_family("cycle", 6)
        root, D = antipodal_witness(g, 1)
        bumped = PebbleDistribution.point(g.n, 0, D.size + 1)
        assert max_pebbles_to(g, bumped, root) >= 1

    def test_rejects_nonpositive_t(self):
        with pytest.raises(ValueError, match="t must be >= 1"):
            antipodal_witness(make_family("cycle", 4), 0)
