"""Fan patterns: k cliques of order r glued at one shared center vertex.

A (k, r) fan has (r-1)k + 1 vertices and k*r*(r-1)/2 edges.  An embedded copy
is recorded as a center plus k pairwise disjoint blades of r-1 vertices each;
the center together with any blade spans a clique in the host graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

from .graphs import Graph, bits

__all__ = [
    "FanSpec",
    "FanCopy",
    "build_fan",
    "validate_fan_copy",
    "find_fan_centered",
    "contains_fan",
]


@dataclass(frozen=True)
class FanSpec:
    """Shape parameters: ``k`` blades, each completing a clique of order ``r``."""

    k: int
    r: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"blade count k must be >= 1, got {self.k}")
        if self.r < 3:
            raise ValueError(f"clique order r must be >= 3, got {self.r}")

    @property
    def vertex_count(self) -> int:
        return (self.r - 1) * self.k + 1

    @property
    def edge_count(self) -> int:
        return self.k * self.r * (self.r - 1) // 2

    @property
    def blade_size(self) -> int:
        return self.r - 1


@dataclass(frozen=True)
class FanCopy:
    """One embedded fan: the center vertex plus ``k`` disjoint blades."""

    center: int
    blades: tuple[tuple[int, ...], ...]

    def normalized(self) -> "FanCopy":
        """Blades sorted by smallest element, ascending inside each blade."""
        blades = tuple(sorted(tuple(sorted(b)) for b in self.blades))
        return FanCopy(self.center, blades)

    def vertices(self) -> set[int]:
        out = {self.center}
        for blade in self.blades:
            out.update(blade)
        return out

    def edge_pairs(self) -> frozenset[tuple[int, int]]:
        """All edges of the copy, as (u, v) pairs with u < v."""
        out = set()
        for blade in self.blades:
            group = (self.center, *blade)
            for i, u in enumerate(group):
                for v in group[i + 1:]:
                    out.add((u, v) if u < v else (v, u))
        return frozenset(out)

    def to_json(self) -> dict:
        return {"center": self.center, "blades": [list(b) for b in self.blades]}

    @classmethod
    def from_json(cls, data: dict) -> "FanCopy":
        return cls(int(data["center"]), tuple(tuple(int(v) for v in b) for b in data["blades"]))


def build_fan(spec: FanSpec) -> Graph:
    """The fan itself as a graph; vertex 0 is the center."""
    n = spec.vertex_count
    edges = []
    for blade in range(spec.k):
        lo = 1 + blade * spec.blade_size
        group = [0] + list(range(lo, lo + spec.blade_size))
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def validate_fan_copy(g: Graph, copy: FanCopy, spec: FanSpec) -> bool:
    """Structural check of a candidate copy against its host graph."""
    if len(copy.blades) != spec.k:
        return False
    if not 0 <= copy.center < g.n:
        return False
    seen = {copy.center}
    for blade in copy.blades:
        if len(blade) != spec.blade_size or len(set(blade)) != spec.blade_size:
            return False
        for v in blade:
            if not 0 <= v < g.n or v in seen:
                return False
            seen.add(v)
        group = (copy.center, *blade)
        for i, u in enumerate(group):
            for v in group[i + 1:]:
                if not g.has_edge(u, v):
                    return False
    return True


def _effective_adj(g: Graph, banned_edges: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    banned = list(banned_edges)
    if not banned:
        return g.adj
    rows = list(g.adj)
    for u, v in banned:
        if not rows[u] >> v & 1:
            raise ValueError(f"banned edge ({u},{v}) is not an edge of the graph")
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return tuple(rows)


def _cliques_within(adj: tuple[int, ...], cand: int, size: int) -> list[int]:
    """All cliques of ``size`` vertices inside ``cand``, as masks, lexicographic."""
    out: list[int] = []

    def rec(chosen: int, pool: int, need: int) -> None:
        if need == 0:
            out.append(chosen)
            return
        while pool:
            if pool.bit_count() < need:
                return
            low = pool & -pool
            pool ^= low
            v = low.bit_length() - 1
            rec(chosen | low, pool & adj[v], need - 1)

    rec(0, cand, size)
    return out


def _pick_disjoint(blade_masks: list[int], k: int) -> Optional[list[int]]:
    """First k pairwise disjoint masks in DFS order over the given list."""
    chosen: list[int] = []

    def rec(start: int, used: int) -> bool:
        if len(chosen) == k:
            return True
        if len(blade_masks) - start < k - len(chosen):
            return False
        for i in range(start, len(blade_masks)):
            m = blade_masks[i]
            if m & used:
                continue
            chosen.append(m)
            if rec(i + 1, used | m):
                return True
            chosen.pop()
        return False

    if rec(0, 0):
        return chosen
    return None


def find_fan_centered(
    g: Graph,
    u: int,
    spec: FanSpec,
    banned_edges: Iterable[tuple[int, int]] = (),
) -> Optional[FanCopy]:
    """Exhaustively search for a fan centered at ``u`` avoiding banned edges.

    Returns None only when no such copy exists in the graph minus the banned
    edge set.
    """
    adj = _effective_adj(g, banned_edges)
    if adj[u].bit_count() < spec.blade_size * spec.k:
        return None
    blades = _cliques_within(adj, adj[u], spec.blade_size)
    if len(blades) < spec.k:
        return None
    picked = _pick_disjoint(blades, spec.k)
    if picked is None:
        return None
    blade_tuples = tuple(tuple(bits(m)) for m in picked)
    return FanCopy(u, blade_tuples)


def contains_fan(g: Graph, spec: FanSpec) -> bool:
    """Whether the graph contains the fan as a subgraph (not induced)."""
    if g.n < spec.vertex_count or g.edge_count < spec.edge_count:
        return False
    needed = spec.blade_size * spec.k
    for u in range(g.n):
        if g.degree(u) < needed:
            continue
        if find_fan_centered(g, u, spec) is not None:
            return True
    return False


def contains_fan_naive(g: Graph, spec: FanSpec) -> bool:
    """Injection-based containment check, independent of the clique search.

    Enumerates all injective maps of the pattern into the host; intended as a
    test oracle for small graphs only.
    """
    pattern = build_fan(spec)
    m = pattern.n
    if g.n < m:
        return False
    pattern_edges = list(pattern.edges())
    for image in permutations(range(g.n), m):
        if all(g.has_edge(image[u], image[v]) for u, v in pattern_edges):
            return True
    return False
