"""extremal-constructions: closed forms, explicit graphs, and the constant ledger."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fankit.extremal import (
    constants,
    even_surplus_graph,
    ex_fan,
    extremal_fan_graph,
    g,
    hanson_bound,
    turan_edges,
    turan_graph,
    turan_part_sizes,
)
from fankit.fans import FanSpec, contains_fan
from fankit.graphs import Graph, matching_number
from fankit.oracle import all_graphs
from fankit.pipeline import peel_low_degree

G_TABLE = {1: 0, 2: 1, 3: 6, 4: 10, 5: 20, 6: 27, 7: 42, 8: 52, 9: 72, 10: 85}


class TestTuran:
    def test_k33(self):
        t = turan_graph(6, 2)
        assert t.edge_count == 9
        assert turan_part_sizes(6, 2) == [3, 3]

    def test_seven_three(self):
        assert turan_part_sizes(7, 3) == [3, 2, 2]
        assert turan_graph(7, 3).edge_count == 16

    def test_singleton_parts_give_clique(self):
        assert turan_graph(4, 4) == Graph.complete(4)

    def test_formula_matches_construction(self):
        for n in range(1, 51):
            for p in range(1, 7):
                assert turan_edges(n, p) == turan_graph(n, p).edge_count

    def test_invalid_part_count(self):
        with pytest.raises(ValueError):
            turan_graph(5, 0)


class TestSurplus:
    def test_g_table(self):
        assert {k: g(k) for k in range(1, 11)} == G_TABLE

    def test_g_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            g(0)

    def test_even_surplus_parameters(self):
        for k in (2, 4, 6, 8):
            h = even_surplus_graph(k)
            assert h.n == 2 * k - 1
            assert h.edge_count == g(k)
            assert h.max_degree() == k - 1

    def test_even_surplus_k4_degree_sequence(self):
        h = even_surplus_graph(4)
        assert sorted((h.degree(v) for v in range(h.n)), reverse=True) == [3, 3, 3, 3, 3, 3, 2]

    def test_even_surplus_matching_below_k(self):
        # fan-freeness of the host construction needs nu(surplus) < k
        for k in (2, 4, 6):
            assert matching_number(even_surplus_graph(k)) < k


class TestExtremalGraph:
    def test_odd_k_two_triangles(self):
        spec = FanSpec(3, 3)
        eg = extremal_fan_graph(12, spec)
        assert eg.edge_count == turan_edges(12, 2) + g(3) == 42
        part0 = set(range(6))
        internal = [(u, v) for u, v in eg.edges() if u in part0 and v in part0]
        assert len(internal) == 6  # two disjoint triangles

    def test_even_k_single_edge(self):
        eg = extremal_fan_graph(8, FanSpec(2, 3))
        assert eg.edge_count == 16 + 1

    def test_part_too_small(self):
        with pytest.raises(ValueError):
            extremal_fan_graph(12, FanSpec(4, 3))  # needs a part of 7 vertices

    @pytest.mark.parametrize("k,r,n", [(2, 3, 9), (3, 3, 13), (2, 4, 13), (4, 3, 14)])
    def test_edge_count_and_fan_freeness(self, k, r, n):
        spec = FanSpec(k, r)
        eg = extremal_fan_graph(n, spec)
        assert eg.edge_count == turan_edges(n, r - 1) + g(k)
        assert not contains_fan(eg, spec)

    def test_nothing_peeled(self):
        spec = FanSpec(3, 3)
        eg = extremal_fan_graph(12, spec)
        peeled, trace = peel_low_degree(eg, spec)
        assert trace == [] and peeled == eg


class TestExFan:
    def test_large_n_valid(self):
        value = ex_fan(10**6, FanSpec(2, 3))
        assert value.value == 10**12 // 4 + 1
        assert value.valid

    def test_small_n_formula_still_emitted(self):
        value = ex_fan(10, FanSpec(2, 3))
        assert value.value == 26
        assert not value.valid

    def test_k1_is_plain_turan(self):
        value = ex_fan(5, FanSpec(1, 3))
        assert value.value == 6
        assert not value.valid

    def test_too_few_vertices(self):
        with pytest.raises(ValueError):
            ex_fan(4, FanSpec(2, 3))


class TestHansonBound:
    @pytest.mark.parametrize("nu,delta,expected", [(1, 1, 1), (2, 2, 6), (3, 3, 10)])
    def test_spot_values(self, nu, delta, expected):
        assert hanson_bound(nu, delta) == expected

    def test_requires_positive_arguments(self):
        with pytest.raises(ValueError):
            hanson_bound(0, 1)

    def test_bounds_all_graphs_up_to_six(self):
        for n in range(2, 7):
            for graph in all_graphs(n):
                delta = graph.max_degree()
                if delta == 0:
                    continue
                assert graph.edge_count <= hanson_bound(matching_number(graph), delta)

    def test_k_minus_one_diagonal_within_k_times_k_minus_one(self):
        for k in range(2, 12):
            assert hanson_bound(k - 1, k - 1) <= k * (k - 1)


class TestConstants:
    def test_gamma_for_2_3(self):
        c = constants(100, FanSpec(2, 3))
        assert c.gamma == Fraction(1, 6480**2)

    def test_t1_at_8640(self):
        c = constants(8640, FanSpec(2, 3))
        assert c.t1 == 10
        assert c.t2 == Fraction(8640, 2) - 2 * 10 - 2

    def test_s_upper_for_3_3(self):
        assert constants(50, FanSpec(3, 3)).s_upper == 2

    def test_case_thresholds_for_2_3(self):
        c = constants(100, FanSpec(2, 3))
        assert c.m1 == 6 and c.m2 == 36

    def test_invariants_across_grid(self):
        for k in range(2, 11):
            for r in range(3, 9):
                spec = FanSpec(k, r)
                c = constants(10**6, spec)
                assert c.gamma > 0
                assert 0 < c.alpha < 1
                assert 0 < c.m1 < c.m2
                assert c.s_upper < spec.edge_count
                assert c.n1 > 16 * k**3 * r**8

    def test_requires_k_at_least_two(self):
        with pytest.raises(ValueError):
            constants(10, FanSpec(1, 3))

    def test_json_rendering_is_exact(self):
        payload = constants(8640, FanSpec(2, 3)).to_json()
        assert payload["gamma"] == "1/41990400"
        assert payload["t1"] == 10
        assert isinstance(payload["alpha"], float)
