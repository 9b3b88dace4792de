"""Shared fixtures and small independent oracles used across the suite."""

from __future__ import annotations

from itertools import combinations

import pytest

from fankit.graphs import Graph


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    """Keep oracle cache writes inside the test session's tmp dir."""
    import os

    path = tmp_path_factory.mktemp("fankit-cache")
    old = os.environ.get("FANKIT_CACHE_DIR")
    os.environ["FANKIT_CACHE_DIR"] = str(path)
    yield
    if old is None:
        os.environ.pop("FANKIT_CACHE_DIR", None)
    else:
        os.environ["FANKIT_CACHE_DIR"] = old


def brute_matching_number(g: Graph) -> int:
    """Independent nu oracle: try all edge subsets of each size, largest first."""
    edges = list(g.edges())
    for size in range(g.n // 2, 0, -1):
        for combo in combinations(edges, size):
            seen: set[int] = set()
            ok = True
            for u, v in combo:
                if u in seen or v in seen:
                    ok = False
                    break
                seen.add(u)
                seen.add(v)
            if ok:
                return size
    return 0


def graph_from_bits(n: int, bitstring: int) -> Graph:
    """Labeled graph from an integer encoding of the upper triangle."""
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bitstring >> idx & 1:
                edges.append((u, v))
            idx += 1
    return Graph.from_edges(n, edges)
