"""Closed-form extremal quantities and the explicit fan-free extremal graphs.

The extremal fan-free graph on n vertices is a balanced complete multipartite
graph on r-1 parts with a small surplus graph embedded in the first part: two
disjoint cliques K_k for odd k, or a fixed-degree-sequence graph on 2k-1
vertices for even k.  The surplus edge count is g(k).

Also houses the constant ledger used by the decomposition pipeline (gamma,
alpha, the case thresholds m1 < m2, the degree thresholds t1 and t2, and the
bound s_upper on sparse-regime surplus copies) and the nu/Delta edge bound
f(nu, Delta) = nu*Delta + floor(Delta/2) * floor(nu / ceil(Delta/2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fans import FanSpec
from .graphs import Graph

__all__ = [
    "Constants",
    "ExtremalValue",
    "turan_part_sizes",
    "turan_graph",
    "turan_edges",
    "g",
    "extremal_fan_graph",
    "ex_fan",
    "hanson_bound",
    "constants",
    "sqrt_gamma",
]


def turan_part_sizes(n: int, p: int) -> list[int]:
    """Balanced part sizes, largest parts first."""
    if p < 1:
        raise ValueError(f"part count must be >= 1, got {p}")
    q, s = divmod(n, p)
    return [q + 1] * s + [q] * (p - s)


def turan_graph(n: int, p: int) -> Graph:
    """Complete balanced p-partite graph on n vertices.

    Parts occupy consecutive vertex ranges, largest part first, so embeddings
    into "the first part" are deterministic.
    """
    return Graph.complete_multipartite(turan_part_sizes(n, p))


def turan_edges(n: int, p: int) -> int:
    if p < 1:
        raise ValueError(f"part count must be >= 1, got {p}")
    return (n * (n - 1) - sum(s * (s - 1) for s in turan_part_sizes(n, p))) // 2


def g(k: int) -> int:
    """Surplus edge count of the extremal graph over the multipartite base."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k % 2 == 1:
        return k * k - k
    return k * k - 3 * k // 2


def _realize_degree_sequence(degrees: list[int]) -> list[tuple[int, int]]:
    """Deterministic Havel-Hakimi realization (descending degree, ties by index)."""
    remaining = list(degrees)
    edges: list[tuple[int, int]] = []
    while True:
        order = sorted(range(len(remaining)), key=lambda i: (-remaining[i], i))
        v = order[0]
        d = remaining[v]
        if d == 0:
            break
        partners = [w for w in order[1:] if remaining[w] > 0][:d]
        if len(partners) < d:
            raise ValueError(f"degree sequence {degrees} is not realizable")
        remaining[v] = 0
        for w in partners:
            remaining[w] -= 1
            edges.append((v, w) if v < w else (w, v))
    return edges


def even_surplus_graph(k: int) -> Graph:
    """Surplus graph for even k: 2k-1 vertices, k^2 - 3k/2 edges, max degree k-1.

    Realizes the degree sequence (k-1 repeated 2k-2 times, then k-2).
    """
    if k < 2 or k % 2:
        raise ValueError(f"k must be even and >= 2, got {k}")
    degrees = [k - 1] * (2 * k - 2) + [k - 2]
    return Graph.from_edges(2 * k - 1, _realize_degree_sequence(degrees))


def extremal_fan_graph(n: int, spec: FanSpec) -> Graph:
    """The explicit fan-free graph with turan_edges(n, r-1) + g(k) edges.

    The surplus graph lands in the first (largest) part.  The construction is
    emitted for any n where the surplus fits; extremality below the validity
    threshold of :func:`ex_fan` is not implied.
    """
    k, r = spec.k, spec.r
    sizes = turan_part_sizes(n, r - 1)
    base = Graph.complete_multipartite(sizes)
    if k % 2 == 1:
        need = 2 * k
    else:
        need = 2 * k - 1
    if sizes[0] < need:
        raise ValueError(
            f"largest part has {sizes[0]} vertices; the surplus graph needs {need}"
        )
    rows = list(base.adj)
    if k % 2 == 1:
        # two disjoint K_k blocks on the first 2k vertices of part 0
        extra = []
        for block in (range(k), range(k, 2 * k)):
            block = list(block)
            for i, u in enumerate(block):
                for v in block[i + 1:]:
                    extra.append((u, v))
    else:
        extra = list(even_surplus_graph(k).edges())
    for u, v in extra:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


@dataclass(frozen=True)
class ExtremalValue:
    """Extremal edge count, with a flag for the proven validity range."""

    value: int
    valid: bool

    def to_json(self) -> dict:
        return {"value": self.value, "valid": self.valid}


def ex_fan(n: int, spec: FanSpec) -> ExtremalValue:
    """turan_edges(n, r-1) + g(k); ``valid`` iff n >= 16 k^3 r^8."""
    if n < spec.vertex_count:
        raise ValueError(
            f"n must be at least {spec.vertex_count} for a ({spec.k},{spec.r}) fan"
        )
    value = turan_edges(n, spec.r - 1) + g(spec.k)
    return ExtremalValue(value, n >= 16 * spec.k**3 * spec.r**8)


def hanson_bound(nu: int, delta: int) -> int:
    """Max edges of a graph with matching number nu and max degree delta."""
    if nu < 1 or delta < 1:
        raise ValueError("hanson_bound requires nu >= 1 and delta >= 1")
    half_up = (delta + 1) // 2
    return nu * delta + (delta // 2) * (nu // half_up)


@dataclass(frozen=True)
class Constants:
    """The pipeline's constant ledger for a given (n, k, r).

    All rational fields are exact.  ``alpha`` is irrational and kept as a
    float; it only feeds the n1 threshold, which is dominated by its integer
    terms.  ``t2`` can be negative at small n, in which case callers supply a
    desk-scale override.
    """

    gamma: Fraction
    alpha: float
    m1: Fraction
    m2: Fraction
    n1: int
    t1: Fraction
    t2: Fraction
    s_upper: Fraction

    def to_json(self) -> dict:
        from .util import frac_json

        return {
            "gamma": frac_json(self.gamma),
            "alpha": self.alpha,
            "m1": frac_json(self.m1),
            "m2": frac_json(self.m2),
            "n1": self.n1,
            "t1": frac_json(self.t1),
            "t2": frac_json(self.t2),
            "s_upper": frac_json(self.s_upper),
        }


def sqrt_gamma(spec: FanSpec) -> Fraction:
    """Exact square root of gamma = (40 k r^4)^-2."""
    return Fraction(1, 40 * spec.k * spec.r**4)


def constants(n: int, spec: FanSpec) -> Constants:
    """Evaluate the constant ledger; requires k >= 2.

    n1 covers the computable threshold terms only: the stability threshold
    of the partition lemma is non-constructive, so the reported n1 is a lower
    bound on the full validity threshold.
    """
    k, r = spec.k, spec.r
    if k < 2:
        raise ValueError("constants are defined for k >= 2")
    if n < 1:
        raise ValueError("n must be positive")
    e = spec.edge_count
    gk = g(k)
    gamma = Fraction(1, (40 * k * r**4) ** 2)
    alpha = math.sqrt(1 - Fraction(r - 1, r - 2) * gamma)
    m1 = Fraction((e - 1) * (r - 1) * k * (k - 1) - k * gk, e - 1 - k)
    m2 = Fraction((e - 1) * (r - 1) * k * (k - 1) - k * gk) / (Fraction(e - 1, 2) - k)
    n1 = 1 + max(
        math.ceil((r - 1) / alpha),
        16 * (k + 1) ** 3 * r**8 + math.ceil(6 * (k + 1) ** 2 * r**3 * m1),
    )
    t1 = Fraction(n, 16 * k * r**3)
    t2 = Fraction(n, r - 1) - 2 * (r - 3) * sqrt_gamma(spec) * n - 2 * t1 - 2
    s_upper = Fraction((r - 2) * (k - 1), 2) + 1
    return Constants(gamma, alpha, m1, m2, n1, t1, t2, s_upper)
