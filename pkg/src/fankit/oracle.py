"""Exhaustive ground truth on small vertex counts.

Enumerates one representative per isomorphism class (n <= 8, hard cap),
computes the extremal edge count ex(n, H) and the decomposition maximum
phi(n, H) over all classes, and checks the identity phi = ex together with
the uniqueness of its maximizers.

Canonical forms are computed in-package: iterated degree refinement orders
the vertices into invariant color classes, then a backtracking search over
class-respecting placements maximizes the adjacency code with prefix pruning.
Results of the expensive sweeps are cached in a plain JSON file keyed by
(n, k, r) plus a code version.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .fans import FanSpec, contains_fan
from .graphs import Graph, bits, to_graph6
from .packing import greedy_packing, phi as phi_packing
from .util import parallel_map

__all__ = [
    "SearchReport",
    "ResourceLimitError",
    "MAX_EXHAUSTIVE_N",
    "CACHE_VERSION",
    "all_graphs",
    "graph_class_count",
    "canonical_form",
    "canonical_graph",
    "ex_bruteforce",
    "phi_bruteforce",
    "verify_identity",
    "default_cache_path",
]

MAX_EXHAUSTIVE_N = 8
CACHE_VERSION = 1

# unlabeled simple graph counts for n = 1..8; generation is verified against it
KNOWN_CLASS_COUNTS = (1, 2, 4, 11, 34, 156, 1044, 12346)


class ResourceLimitError(RuntimeError):
    """Request beyond the exhaustive-search cap."""


# -- canonical labeling --------------------------------------------------------


def _refine_colors(g: Graph) -> list[int]:
    """Iterated neighborhood refinement; returns invariant color ids."""
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in bits(g.adj[v]))))
            for v in range(g.n)
        ]
        palette = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        new_colors = [palette[sig] for sig in signatures]
        if new_colors == colors:
            return colors
        colors = new_colors


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """(canonical code, placement order) for the graph.

    The code is the maximum adjacency bitstring over all vertex orders that
    list the refinement classes in a fixed invariant order, so isomorphic
    graphs share a code.  ``order[p]`` is the vertex placed at position p.
    """
    n = g.n
    if n == 0:
        return 0, ()
    colors = _refine_colors(g)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    # invariant block order: small classes first to constrain the search early
    blocks = [classes[c] for c in sorted(classes, key=lambda c: (len(classes[c]), c))]
    block_at: list[list[int]] = []
    for block in blocks:
        block_at.extend([block] * len(block))

    adj = g.adj
    best_rows = [-1] * n
    best_order: list[int] = []
    placed: list[int] = []
    used = 0

    def rec(pos: int) -> None:
        nonlocal used, best_order
        if pos == n:
            best_order = list(placed)
            return
        for v in block_at[pos]:
            if used >> v & 1:
                continue
            row = 0
            av = adj[v]
            for q in range(pos):
                row = row << 1 | (av >> placed[q] & 1)
            if row < best_rows[pos]:
                continue
            if row > best_rows[pos]:
                best_rows[pos] = row
                for p in range(pos + 1, n):
                    best_rows[p] = -1
            placed.append(v)
            used |= 1 << v
            rec(pos + 1)
            used &= ~(1 << v)
            placed.pop()

    rec(0)
    code = 0
    for p in range(n):
        code = code << p | best_rows[p]
    return code, tuple(best_order)


def canonical_graph(g: Graph) -> Graph:
    """The graph relabeled into its canonical order."""
    _, order = canonical_form(g)
    position = {v: p for p, v in enumerate(order)}
    rows = [0] * g.n
    for v in range(g.n):
        for w in bits(g.adj[v]):
            rows[position[v]] |= 1 << position[w]
    return Graph(g.n, rows)


# -- exhaustive generation -------------------------------------------------------

_LEVELS: dict[int, list[Graph]] = {}


def _build_level(n: int) -> list[Graph]:
    if n == 1:
        return [Graph.empty(1)]
    previous = _level(n - 1)
    seen: dict[int, Graph] = {}
    for parent in previous:
        for subset in range(1 << parent.n):
            rows = list(parent.adj) + [subset]
            for v in bits(subset):
                rows[v] |= 1 << parent.n
            child = Graph(n, rows)
            code, _ = canonical_form(child)
            if code not in seen:
                seen[code] = canonical_graph(child)
    reps = sorted(seen.values(), key=to_graph6)
    if len(reps) != KNOWN_CLASS_COUNTS[n - 1]:
        raise AssertionError(
            f"generated {len(reps)} classes on {n} vertices, "
            f"expected {KNOWN_CLASS_COUNTS[n - 1]}"
        )
    return reps


def _level(n: int) -> list[Graph]:
    if n not in _LEVELS:
        _LEVELS[n] = _build_level(n)
    return _LEVELS[n]


def all_graphs(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class on n vertices (n <= 8)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_EXHAUSTIVE_N:
        raise ResourceLimitError(
            f"exhaustive enumeration capped at n <= {MAX_EXHAUSTIVE_N}"
        )
    yield from _level(n)


def graph_class_count(n: int) -> int:
    return len(_level(n)) if n <= MAX_EXHAUSTIVE_N else 0


# -- sweeps ----------------------------------------------------------------------


@dataclass
class SearchReport:
    """Result of an exhaustive ex / phi sweep for one (n, k, r)."""

    n: int
    spec: FanSpec
    ex_value: int
    phi_value: int
    extremal_graphs: list[str]
    phi_maximizers: list[str]
    identity_holds: bool
    uniqueness_holds: bool
    uniqueness_counterexamples: list[str]
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.spec.k,
            "r": self.spec.r,
            "ex": self.ex_value,
            "phi": self.phi_value,
            "extremal_graphs": self.extremal_graphs,
            "phi_maximizers": self.phi_maximizers,
            "identity_holds": self.identity_holds,
            "uniqueness_holds": self.uniqueness_holds,
            "uniqueness_counterexamples": self.uniqueness_counterexamples,
            "exact": self.exact,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchReport":
        return cls(
            n=data["n"],
            spec=FanSpec(data["k"], data["r"]),
            ex_value=data["ex"],
            phi_value=data["phi"],
            extremal_graphs=list(data["extremal_graphs"]),
            phi_maximizers=list(data["phi_maximizers"]),
            identity_holds=data["identity_holds"],
            uniqueness_holds=data["uniqueness_holds"],
            uniqueness_counterexamples=list(data["uniqueness_counterexamples"]),
            exact=data.get("exact", True),
        )


def ex_bruteforce(n: int, spec: FanSpec, threads: int = 1) -> tuple[int, list[str]]:
    """Exact extremal edge count over fan-free classes, with all attainers."""
    if n > MAX_EXHAUSTIVE_N:
        raise ResourceLimitError(
            f"exhaustive enumeration capped at n <= {MAX_EXHAUSTIVE_N}"
        )
    reps = list(all_graphs(n))
    fan_free = parallel_map(lambda g: not contains_fan(g, spec), reps, threads)
    best = -1
    attainers: list[str] = []
    for g, free in zip(reps, fan_free):
        if not free:
            continue
        if g.edge_count > best:
            best = g.edge_count
            attainers = [to_graph6(g)]
        elif g.edge_count == best:
            attainers.append(to_graph6(g))
    return best, sorted(attainers)


def _phi_upper_via_greedy(g: Graph, spec: FanSpec) -> int:
    # a greedy packing lower-bounds p, hence upper-bounds phi
    return g.edge_count - len(greedy_packing(g, spec, seed=0)) * (spec.edge_count - 1)


def phi_bruteforce(
    n: int,
    spec: FanSpec,
    budget: int = 10**6,
    threads: int = 1,
    cache_path: Optional[Path] = None,
    use_cache: bool = True,
) -> SearchReport:
    """Exact phi(n, H) over all isomorphism classes.

    Classes are screened with a greedy upper bound on their phi; the exact
    packer only runs while the screen value could still reach the running
    maximum, which keeps the sweep fast without giving up exactness.
    """
    if n > MAX_EXHAUSTIVE_N:
        raise ResourceLimitError(
            f"exhaustive enumeration capped at n <= {MAX_EXHAUSTIVE_N}"
        )
    cached = _cache_get(n, spec, cache_path) if use_cache else None
    if cached is not None:
        return cached

    ex_value, extremal = ex_bruteforce(n, spec, threads=threads)
    reps = list(all_graphs(n))
    uppers = parallel_map(lambda g: _phi_upper_via_greedy(g, spec), reps, threads)
    order = sorted(range(len(reps)), key=lambda i: (-uppers[i], to_graph6(reps[i])))

    best = -1
    maximizers: list[str] = []
    exact = True
    for i in order:
        if uppers[i] < best:
            break  # every later class has phi <= upper < best
        result = phi_packing(reps[i], spec, budget=budget, on_budget="degrade")
        if not result.exact:
            exact = False
        if result.phi > best:
            best = result.phi
            maximizers = [to_graph6(reps[i])]
        elif result.phi == best:
            maximizers.append(to_graph6(reps[i]))
    maximizers.sort()

    counterexamples = []
    by_code = {to_graph6(g): g for g in reps}
    for code in maximizers:
        g = by_code[code]
        if g.edge_count != ex_value or contains_fan(g, spec):
            counterexamples.append(code)
    report = SearchReport(
        n=n,
        spec=spec,
        ex_value=ex_value,
        phi_value=best,
        extremal_graphs=extremal,
        phi_maximizers=maximizers,
        identity_holds=best == ex_value,
        uniqueness_holds=not counterexamples,
        uniqueness_counterexamples=counterexamples,
        exact=exact,
    )
    if use_cache:
        _cache_put(report, cache_path)
    return report


def verify_identity(
    n: int,
    spec: FanSpec,
    budget: int = 10**6,
    threads: int = 1,
    cache_path: Optional[Path] = None,
    use_cache: bool = True,
) -> SearchReport:
    """phi sweep plus the uniqueness clause: every phi maximizer must be a
    fan-free graph with ex(n, H) edges; violations are listed, not raised."""
    return phi_bruteforce(
        n, spec, budget=budget, threads=threads, cache_path=cache_path, use_cache=use_cache
    )


# -- disk cache -------------------------------------------------------------------


def default_cache_path() -> Path:
    root = os.environ.get("FANKIT_CACHE_DIR")
    if root:
        return Path(root) / "oracle_cache.json"
    return Path.home() / ".cache" / "fankit" / "oracle_cache.json"


def _load_cache(path: Path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return {"version": CACHE_VERSION, "entries": {}}
    if data.get("version") != CACHE_VERSION:
        return {"version": CACHE_VERSION, "entries": {}}
    return data


def _cache_get(n: int, spec: FanSpec, path: Optional[Path]) -> Optional[SearchReport]:
    path = path or default_cache_path()
    entry = _load_cache(path)["entries"].get(f"{n},{spec.k},{spec.r}")
    return SearchReport.from_json(entry) if entry else None


def _cache_put(report: SearchReport, path: Optional[Path]) -> None:
    path = path or default_cache_path()
    data = _load_cache(path)
    data["entries"][f"{report.n},{report.spec.k},{report.spec.r}"] = report.to_json()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
    except OSError:
        pass  # cache is an optimization; never fail the computation
