"""fan-structures: construction, recognition, and centered search."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fankit.fans import (
    FanCopy,
    FanSpec,
    build_fan,
    contains_fan,
    contains_fan_naive,
    find_fan_centered,
    validate_fan_copy,
)
from fankit.graphs import Graph
from fankit.extremal import turan_graph
from fankit.oracle import all_graphs

from conftest import graph_from_bits


def exact_chromatic_number(g: Graph) -> int:
    """Backtracking coloring oracle for tiny graphs."""

    def colorable(c: int) -> bool:
        colors = [-1] * g.n

        def rec(v: int) -> bool:
            if v == g.n:
                return True
            for col in range(c):
                if all(colors[w] != col for w in g.neighbors(v) if w < v):
                    colors[v] = col
                    if rec(v + 1):
                        return True
                    colors[v] = -1
            return False

        return rec(0)

    c = 1
    while not colorable(c):
        c += 1
    return c


class TestFanSpec:
    @pytest.mark.parametrize("k,r,nv,ne", [(2, 3, 5, 6), (1, 4, 4, 6), (3, 4, 10, 18), (3, 3, 7, 9)])
    def test_sizes(self, k, r, nv, ne):
        spec = FanSpec(k, r)
        assert spec.vertex_count == nv
        assert spec.edge_count == ne

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            FanSpec(0, 3)
        with pytest.raises(ValueError):
            FanSpec(2, 2)

    @pytest.mark.parametrize("k,r", [(1, 3), (2, 3), (3, 3), (1, 4), (2, 4)])
    def test_chromatic_number_is_r(self, k, r):
        assert exact_chromatic_number(build_fan(FanSpec(k, r))) == r


class TestBuildFan:
    def test_bowtie(self):
        g = build_fan(FanSpec(2, 3))
        assert (g.n, g.edge_count) == (5, 6)
        assert g.degree(0) == 4

    def test_single_blade_is_clique(self):
        assert build_fan(FanSpec(1, 4)) == Graph.complete(4)

    def test_center_degree(self):
        for k, r in [(2, 3), (3, 3), (2, 4), (3, 4)]:
            g = build_fan(FanSpec(k, r))
            assert g.degree(0) == (r - 1) * k
            assert g.edge_count == FanSpec(k, r).edge_count

    def test_contains_itself_but_not_one_more_blade(self):
        for k, r in [(1, 3), (2, 3), (2, 4), (3, 3)]:
            g = build_fan(FanSpec(k, r))
            assert contains_fan(g, FanSpec(k, r))
            assert not contains_fan(g, FanSpec(k + 1, r))


class TestValidateFanCopy:
    def test_canonical_copy(self):
        g = build_fan(FanSpec(2, 3))
        assert validate_fan_copy(g, FanCopy(0, ((1, 2), (3, 4))), FanSpec(2, 3))

    def test_overlapping_blades_rejected(self):
        g = build_fan(FanSpec(2, 3))
        assert not validate_fan_copy(g, FanCopy(0, ((1, 2), (2, 3))), FanSpec(2, 3))

    def test_no_triangles_means_no_copy(self):
        c5 = Graph.cycle(5)
        assert not validate_fan_copy(c5, FanCopy(0, ((1, 2), (3, 4))), FanSpec(2, 3))

    def test_missing_edge_rejected(self):
        g = build_fan(FanSpec(2, 3)).with_edges_removed([(1, 2)])
        assert not validate_fan_copy(g, FanCopy(0, ((1, 2), (3, 4))), FanSpec(2, 3))


class TestFindFanCentered:
    def test_k7_has_three_bladed_fan(self):
        copy = find_fan_centered(Graph.complete(7), 0, FanSpec(3, 3))
        assert copy is not None
        assert validate_fan_copy(Graph.complete(7), copy, FanSpec(3, 3))

    def test_k5_bowtie(self):
        copy = find_fan_centered(Graph.complete(5), 0, FanSpec(2, 3))
        assert copy is not None and copy.center == 0

    def test_bipartite_has_none(self):
        t82 = turan_graph(8, 2)
        assert all(
            find_fan_centered(t82, u, FanSpec(2, 3)) is None for u in range(8)
        )

    def test_banned_edges_are_avoided(self):
        k5 = Graph.complete(5)
        banned = {(1, 2)}
        copy = find_fan_centered(k5, 0, FanSpec(2, 3), banned_edges=banned)
        assert copy is not None
        assert not copy.edge_pairs() & banned

    def test_banned_non_edge_rejected(self):
        with pytest.raises(ValueError):
            find_fan_centered(Graph.cycle(5), 0, FanSpec(2, 3), banned_edges={(0, 2)})

    def test_banned_edges_can_forbid_all_copies(self):
        bowtie = build_fan(FanSpec(2, 3))
        assert find_fan_centered(bowtie, 0, FanSpec(2, 3), banned_edges={(0, 1)}) is None

    @given(st.integers(0, (1 << 21) - 1))
    @settings(max_examples=80, deadline=None)
    def test_returned_copies_validate(self, code):
        g = graph_from_bits(7, code)
        for u in range(7):
            copy = find_fan_centered(g, u, FanSpec(2, 3))
            if copy is not None:
                assert copy.center == u
                assert validate_fan_copy(g, copy, FanSpec(2, 3))


class TestContainsFan:
    def test_small_cases(self):
        assert contains_fan(Graph.complete(5), FanSpec(2, 3))
        assert not contains_fan(Graph.complete(4), FanSpec(2, 3))
        assert not contains_fan(turan_graph(12, 2), FanSpec(1, 3))

    @pytest.mark.parametrize("spec", [FanSpec(1, 3), FanSpec(2, 3)])
    def test_agrees_with_injection_oracle_on_all_classes(self, spec):
        for n in range(1, 7):
            for g in all_graphs(n):
                assert contains_fan(g, spec) == contains_fan_naive(g, spec)

    @given(st.integers(1 << 20, (1 << 28) - 1))
    @settings(max_examples=25, deadline=None)
    def test_agrees_with_injection_oracle_on_8_vertices(self, code):
        g = graph_from_bits(8, code % (1 << 28))
        spec = FanSpec(2, 3)
        assert contains_fan(g, spec) == contains_fan_naive(g, spec)

    def test_fan_copy_json_roundtrip(self):
        copy = FanCopy(3, ((1, 2), (4, 5)))
        assert FanCopy.from_json(copy.to_json()) == copy
