"""Immutable bitset-backed simple graphs and the exact primitives built on them.

Vertices are the integers ``0..n-1``.  Every neighborhood is a Python int used
as a bitset, which keeps the set algebra (intersection, popcount) that the
exhaustive searches in the rest of the package rely on cheap.  Graphs are
value objects: every "mutation" (edge removal, vertex deletion) returns a new
graph, so instances can be shared freely across concurrent work.
"""

from __future__ import annotations

from typing import Iterable, Iterator

__all__ = [
    "Graph",
    "GraphFormatError",
    "bits",
    "mask_of",
    "e_between",
    "common_neighbors",
    "matching_number",
    "maximum_matching",
    "from_graph6",
    "to_graph6",
]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int], n: int) -> int:
    """Pack vertex indices into a bitset, rejecting anything outside [0, n)."""
    m = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range [0, {n})")
        m |= 1 << v
    return m


class Graph:
    """Undirected simple graph with cached edge count.

    The adjacency rows must be symmetric and loop-free; the constructor
    verifies both so that every reachable ``Graph`` value is consistent.
    """

    __slots__ = ("n", "adj", "edge_count")

    def __init__(self, n: int, adj: Iterable[int]) -> None:
        rows = tuple(adj)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"neighbor out of range at vertex {v}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
        for v, row in enumerate(rows):
            m = row
            while m:
                low = m & -m
                w = low.bit_length() - 1
                if not rows[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
                m ^= low
        self.n = n
        self.adj = rows
        self.edge_count = sum(row.bit_count() for row in rows) // 2

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range [0, {n})")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    @classmethod
    def complete_multipartite(cls, sizes: Iterable[int]) -> "Graph":
        """Complete multipartite graph; parts occupy consecutive index ranges."""
        sizes = list(sizes)
        n = sum(sizes)
        full = (1 << n) - 1
        rows = []
        start = 0
        for size in sizes:
            part_mask = ((1 << size) - 1) << start
            rows.extend([full ^ part_mask] * size)
            start += size
        return cls(n, rows)

    # -- basic queries -----------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            m = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(m):
                yield (u, v)

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    # -- derived graphs ----------------------------------------------------

    def with_edges_removed(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            if not rows[u] >> v & 1:
                raise ValueError(f"edge ({u},{v}) not present")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def delete_vertex(self, v: int) -> "Graph":
        """Remove ``v``; the remaining vertices keep their relative order."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")
        low = (1 << v) - 1
        rows = [
            (row & low) | (row >> (v + 1) << v)
            for u, row in enumerate(self.adj)
            if u != v
        ]
        return Graph(self.n - 1, rows)

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def delete_vertex(g: Graph, v: int) -> Graph:
    """Functional alias for :meth:`Graph.delete_vertex`."""
    return g.delete_vertex(v)


def e_between(g: Graph, s: Iterable[int], t: Iterable[int]) -> int:
    """Number of edges with one endpoint in ``s`` and the other in ``t``.

    Each edge is counted once.  When the sets coincide this is the number of
    edges internal to the set; for overlapping sets an edge inside the
    intersection is still counted once.
    """
    sm = mask_of(s, g.n)
    tm = mask_of(t, g.n)
    raw = sum((g.adj[v] & tm).bit_count() for v in bits(sm))
    both = sm & tm
    internal_twice = sum((g.adj[v] & both).bit_count() for v in bits(both))
    return raw - internal_twice // 2


def common_neighbors(g: Graph, x: Iterable[int]) -> set[int]:
    """Vertices outside ``x`` adjacent to every member of ``x`` (nonempty)."""
    xm = mask_of(x, g.n)
    if xm == 0:
        raise ValueError("common_neighbors requires a nonempty vertex set")
    acc = (1 << g.n) - 1
    for v in bits(xm):
        acc &= g.adj[v]
    return set(bits(acc & ~xm))


# -- exact matching ----------------------------------------------------------
#
# The package only ever needs exact matchings on small or degree-bounded
# graphs, so an exhaustive search with memoization over vertex subsets is both
# simpler to trust than a blossom implementation and fast enough.


def _components(adj: tuple[int, ...], n: int) -> list[int]:
    seen = 0
    comps = []
    for v in range(n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        comps.append(comp)
        seen |= comp
    return comps


def _nu_mask(adj: tuple[int, ...], mask: int, memo: dict[int, int]) -> int:
    while mask:
        v = (mask & -mask).bit_length() - 1
        if adj[v] & mask & ~(1 << v):
            break
        mask ^= 1 << v  # isolated in the residual, drop it
    if mask == 0:
        return 0
    cached = memo.get(mask)
    if cached is not None:
        return cached
    v = (mask & -mask).bit_length() - 1
    rest = mask ^ (1 << v)
    best = _nu_mask(adj, rest, memo)  # leave v unmatched
    for w in bits(adj[v] & rest):
        cand = 1 + _nu_mask(adj, rest ^ (1 << w), memo)
        if cand > best:
            best = cand
    memo[mask] = best
    return best


def matching_number(g: Graph) -> int:
    """Exact maximum matching size, by exhaustive search per component."""
    total = 0
    for comp in _components(g.adj, g.n):
        total += _nu_mask(g.adj, comp, {})
    return total


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """An explicit maximum matching, deterministic for a given graph."""
    out: list[tuple[int, int]] = []
    for comp in _components(g.adj, g.n):
        memo: dict[int, int] = {}
        mask = comp
        while True:
            target = _nu_mask(g.adj, mask, memo)
            if target == 0:
                break
            v = None
            for u in bits(mask):
                if g.adj[u] & mask & ~(1 << u):
                    v = u
                    break
            assert v is not None
            rest = mask ^ (1 << v)
            if _nu_mask(g.adj, rest, memo) == target:
                mask = rest  # v can stay unmatched
                continue
            for w in bits(g.adj[v] & rest):
                if 1 + _nu_mask(g.adj, rest ^ (1 << w), memo) == target:
                    out.append((v, w))
                    mask = rest ^ (1 << w)
                    break
    return out


# -- graph6 codec ------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


class GraphFormatError(ValueError):
    """Malformed graph6 text; ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _g6_checked(char: str, offset: int) -> int:
    value = ord(char) - 63
    if not 0 <= value <= 63:
        raise GraphFormatError(f"byte {ord(char)} outside graph6 range", offset)
    return value


def from_graph6(text: str) -> Graph:
    """Decode one graph6 code (optional ``>>graph6<<`` header tolerated)."""
    stripped = text.strip()
    base = text.index(stripped) if stripped else 0
    if stripped.startswith(_G6_HEADER):
        base += len(_G6_HEADER)
        stripped = stripped[len(_G6_HEADER):]
    if not stripped:
        raise GraphFormatError("empty graph6 code", base)

    pos = 0
    first = _g6_checked(stripped[pos], base + pos)
    if first != 63:
        n = first
        pos += 1
    else:
        if len(stripped) >= 2 and stripped[1] == "~":
            if len(stripped) < 8:
                raise GraphFormatError("truncated extended vertex count", base + len(stripped))
            n = 0
            for i in range(2, 8):
                n = n << 6 | _g6_checked(stripped[i], base + i)
            pos = 8
        else:
            if len(stripped) < 4:
                raise GraphFormatError("truncated extended vertex count", base + len(stripped))
            n = 0
            for i in range(1, 4):
                n = n << 6 | _g6_checked(stripped[i], base + i)
            if n < 63:
                raise GraphFormatError("non-canonical extended vertex count", base)
            pos = 4

    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    if len(stripped) - pos < nchars:
        raise GraphFormatError(
            f"truncated adjacency data: need {nchars} bytes, have {len(stripped) - pos}",
            base + len(stripped),
        )
    if len(stripped) - pos > nchars:
        raise GraphFormatError("trailing bytes after adjacency data", base + pos + nchars)

    rows = [0] * n
    bit_index = 0
    for i in range(nchars):
        group = _g6_checked(stripped[pos + i], base + pos + i)
        for shift in range(5, -1, -1):
            if bit_index >= nbits:
                if group >> shift & 1:
                    raise GraphFormatError("nonzero padding bits", base + pos + i)
                continue
            if group >> shift & 1:
                u, v = _g6_pair(bit_index)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            bit_index += 1
    return Graph(n, rows)


def _g6_pair(bit_index: int) -> tuple[int, int]:
    # Column-major upper triangle: bits run (0,1), (0,2), (1,2), (0,3), ...
    v = 1
    while bit_index >= v:
        bit_index -= v
        v += 1
    return bit_index, v


def to_graph6(g: Graph) -> str:
    """Encode a graph as a single graph6 line (no header, no newline)."""
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr((n >> shift & 63) + 63) for shift in (12, 6, 0))
    elif n < 1 << 36:
        head = "~~" + "".join(
            chr((n >> shift & 63) + 63) for shift in (30, 24, 18, 12, 6, 0)
        )
    else:
        raise ValueError("graph too large for graph6")

    chunks = []
    group = 0
    filled = 0
    for v in range(1, n):
        for u in range(v):
            group = group << 1 | (g.adj[u] >> v & 1)
            filled += 1
            if filled == 6:
                chunks.append(chr(group + 63))
                group = 0
                filled = 0
    if filled:
        group <<= 6 - filled
        chunks.append(chr(group + 63))
    return head + "".join(chunks)
