"""The constructive fan-extraction pipeline.

Stages: peel low-degree vertices, partition the survivors into r-1 parts by
local-search max cut, classify vertices as bad (internally heavy) or good,
prune bad vertices' internal edges down to a multiple of k aimed at good
neighbors, then extract fans in two sweeps.  Sweep one centers a fan on any
vertex that still has k internal neighbors; sweep two turns internal
k-matchings into blade pairs with the center in another part.  Each extracted
fan consumes exactly k internal edges, so the fan count is certified against
the internal edge budget.

The structural facts the extraction relies on (near-balanced partition, the
pruning retaining half the internal edges, the residual internal parts having
bounded edges) hold asymptotically; here they are recorded as named runtime
checks in the report rather than enforced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .extremal import constants, g as surplus_g, hanson_bound, sqrt_gamma
from .fans import FanCopy, FanSpec, validate_fan_copy
from .graphs import Graph, bits
from .packing import DEFAULT_COPY_BUDGET, Packing, phi as phi_exact
from .util import ceil_div, frac_json

__all__ = [
    "Partition",
    "VertexStatus",
    "PipelineConfig",
    "DecompositionReport",
    "PruningInfeasibleError",
    "GrowthInfeasibleError",
    "max_cut_partition",
    "peel_low_degree",
    "classify_vertices",
    "activity_flags",
    "prune_to_g0",
    "step1_extract",
    "step2_extract",
    "PipelineState",
    "grow_complete_multipartite",
    "run_pipeline",
    "check_balance",
]


class PruningInfeasibleError(RuntimeError):
    """A bad vertex lacks enough good internal neighbors to keep its quota."""

    def __init__(self, vertex: int, needed: int, available: int) -> None:
        super().__init__(
            f"vertex {vertex} needs {needed} good internal neighbors, has {available}"
        )
        self.vertex = vertex


class GrowthInfeasibleError(RuntimeError):
    """Multipartite growth ran out of candidates in some part."""

    def __init__(self, part: int) -> None:
        super().__init__(f"candidate pool exhausted in part {part}")
        self.part = part


@dataclass(frozen=True)
class Partition:
    """Assignment of vertices to parts 0..p-1, with per-part bitmasks."""

    part_of: tuple[int, ...]
    parts: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Iterable[int], part_count: int) -> "Partition":
        labels = tuple(labels)
        masks = [0] * part_count
        for v, lab in enumerate(labels):
            if not 0 <= lab < part_count:
                raise ValueError(f"label {lab} out of range [0, {part_count})")
            masks[lab] |= 1 << v
        return cls(labels, tuple(masks))

    @property
    def n(self) -> int:
        return len(self.part_of)

    @property
    def part_count(self) -> int:
        return len(self.parts)

    def part_sizes(self) -> list[int]:
        return [m.bit_count() for m in self.parts]

    def internal_edges(self, g: Graph) -> int:
        total = 0
        for mask in self.parts:
            total += sum((g.adj[v] & mask).bit_count() for v in bits(mask))
        return total // 2

    def cross_edges(self, g: Graph) -> int:
        return g.edge_count - self.internal_edges(g)

    def to_json(self) -> dict:
        return {"parts": [sorted(bits(m)) for m in self.parts]}


@dataclass(frozen=True)
class VertexStatus:
    """bad/good is fixed at classification time; activity tracks the residual."""

    bad: bool
    active: Optional[bool] = None

    @property
    def good(self) -> bool:
        return not self.bad


@dataclass
class PipelineConfig:
    """Knobs for thresholds, determinism, and runtime checks.

    The closed-form thresholds t1 = n/(16 k r^3) and t2 are meaningless at
    desk-scale n (t2 may be negative), so the defaults substitute
    t1 = max(1, ceil(n / (16 k r^3))) and t2 = max(1, n // (2 (r-1))), which
    preserve the roles: bad means internally heavy, active means cross-rich.
    ``paper_thresholds`` switches to the literal formulas.
    """

    t1_override: Optional[Fraction] = None
    t2_override: Optional[Fraction] = None
    max_iterations: Optional[int] = None
    assert_claims: bool = True
    seed: int = 0
    paper_thresholds: bool = False
    restarts: int = 8
    balance_bound: Optional[Fraction] = None
    packing_budget: int = DEFAULT_COPY_BUDGET

    def resolve_thresholds(self, n: int, spec: FanSpec) -> tuple[Fraction, Fraction]:
        k, r = spec.k, spec.r
        exact_t1 = Fraction(n, 16 * k * r**3)
        exact_t2 = (
            Fraction(n, r - 1) - 2 * (r - 3) * sqrt_gamma(spec) * n - 2 * exact_t1 - 2
        )
        if self.paper_thresholds:
            t1, t2 = exact_t1, exact_t2
        else:
            t1 = Fraction(max(1, ceil_div(n, 16 * k * r**3)))
            t2 = Fraction(max(1, n // (2 * (r - 1))))
        if self.t1_override is not None:
            t1 = Fraction(self.t1_override)
        if self.t2_override is not None:
            t2 = Fraction(self.t2_override)
        if t1 <= 0:
            raise ValueError("t1 must be positive")
        return t1, t2


@dataclass
class DecompositionReport:
    """Outcome of a pipeline run, JSON-serializable for the CLI."""

    mode: str
    spec: FanSpec
    partition: Optional[Partition]
    m: Optional[int]
    fans: tuple[FanCopy, ...]
    internal_edges_consumed: int
    residual_internal: Optional[int]
    claims_checked: tuple[tuple[str, bool], ...]
    phi_upper_bound: int
    target_fans: Optional[int]
    regime: Optional[str]
    t1: Optional[Fraction]
    t2: Optional[Fraction]
    trace: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.spec.k,
            "r": self.spec.r,
            "partition": self.partition.to_json() if self.partition else None,
            "m": self.m,
            "fans": [c.to_json() for c in self.fans],
            "fan_count": len(self.fans),
            "internal_edges_consumed": self.internal_edges_consumed,
            "residual_internal": self.residual_internal,
            "claims_checked": [
                {"id": name, "passed": ok} for name, ok in self.claims_checked
            ],
            "phi_upper_bound": self.phi_upper_bound,
            "target_fans": self.target_fans,
            "regime": self.regime,
            "t1": frac_json(self.t1) if self.t1 is not None else None,
            "t2": frac_json(self.t2) if self.t2 is not None else None,
            "trace": self.trace,
        }


# -- partitioning ------------------------------------------------------------


def _local_search(g: Graph, labels: list[int], part_count: int) -> list[int]:
    """Single-vertex moves until no move strictly increases the cross count."""
    masks = [0] * part_count
    for v, lab in enumerate(labels):
        masks[lab] |= 1 << v
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            row = g.adj[v]
            here = labels[v]
            counts = [(row & masks[p]).bit_count() for p in range(part_count)]
            best = min(range(part_count), key=lambda p: (counts[p], p))
            if counts[best] < counts[here]:
                masks[here] &= ~(1 << v)
                masks[best] |= 1 << v
                labels[v] = best
                improved = True
    return labels


def max_cut_partition(
    g: Graph, parts: int, seed: int = 0, restarts: int = 8
) -> Partition:
    """Locally optimal partition maximizing cross edges.

    Each restart seeds a greedy placement (vertices in random order go to the
    part holding fewest of their already-placed neighbors) and polishes it
    with single-vertex moves.  At a local optimum every vertex has at least
    as many edges into each other part as inside its own, which is the only
    property downstream stages rely on.
    """
    if parts < 2:
        raise ValueError("need at least 2 parts")
    rng = random.Random(seed)
    best_labels: Optional[list[int]] = None
    best_cross = -1
    for _ in range(max(1, restarts)):
        order = list(range(g.n))
        rng.shuffle(order)
        labels = [0] * g.n
        masks = [0] * parts
        for v in order:
            row = g.adj[v]
            counts = [(row & masks[p]).bit_count() for p in range(parts)]
            sizes = [m.bit_count() for m in masks]
            lab = min(range(parts), key=lambda p: (counts[p], sizes[p], p))
            labels[v] = lab
            masks[lab] |= 1 << v
        labels = _local_search(g, labels, parts)
        partition = Partition.from_labels(labels, parts)
        cross = partition.cross_edges(g)
        if cross > best_cross:
            best_cross = cross
            best_labels = labels
    assert best_labels is not None
    return Partition.from_labels(best_labels, parts)


# -- peeling -----------------------------------------------------------------


def peel_low_degree(g: Graph, spec: FanSpec) -> tuple[Graph, list[int]]:
    """Repeatedly delete a vertex of degree below the balanced-multipartite
    minimum floor((r-2) n' / (r-1)) at the current order n'.

    Returns the peeled graph and the deletion trace in original vertex ids.
    The caller decides whether the result is still large enough to host a fan.
    """
    current = g
    original = list(range(g.n))
    trace: list[int] = []
    r = spec.r
    while True:
        n = current.n
        threshold = (r - 2) * n // (r - 1)
        victim = None
        for v in range(n):
            if current.degree(v) < threshold:
                victim = v
                break
        if victim is None:
            return current, trace
        trace.append(original.pop(victim))
        current = current.delete_vertex(victim)


# -- classification and pruning ----------------------------------------------


def classify_vertices(
    g: Graph, partition: Partition, t1: Fraction | int
) -> tuple[VertexStatus, ...]:
    """bad iff the vertex's internal degree exceeds t1."""
    if t1 <= 0:
        raise ValueError("t1 must be positive")
    out = []
    for v in range(g.n):
        internal = (g.adj[v] & partition.parts[partition.part_of[v]]).bit_count()
        out.append(VertexStatus(bad=internal > t1))
    return tuple(out)


def activity_flags(
    g: Graph, partition: Partition, t2: Fraction | int
) -> tuple[bool, ...]:
    """active iff the residual cross degree into every other part exceeds t2."""
    flags = []
    for v in range(g.n):
        home = partition.part_of[v]
        row = g.adj[v]
        flags.append(
            all(
                (row & partition.parts[p]).bit_count() > t2
                for p in range(partition.part_count)
                if p != home
            )
        )
    return tuple(flags)


def prune_to_g0(
    g: Graph, partition: Partition, spec: FanSpec, t1: Fraction | int
) -> Graph:
    """Trim each bad vertex's internal edges to k * ceil(d / 2k) edges aimed at
    good vertices (lowest-index neighbors kept); good-good internal edges and
    all cross edges are untouched.
    """
    k = spec.k
    statuses = classify_vertices(g, partition, t1)
    good_mask = 0
    for v, status in enumerate(statuses):
        if status.good:
            good_mask |= 1 << v
    keep_rows = list(g.adj)
    for v, status in enumerate(statuses):
        if status.good:
            continue
        home = partition.parts[partition.part_of[v]]
        internal = g.adj[v] & home
        quota = k * ceil_div(internal.bit_count(), 2 * k)
        good_internal = internal & good_mask
        if good_internal.bit_count() < quota:
            raise PruningInfeasibleError(v, quota, good_internal.bit_count())
        kept = 0
        m = good_internal
        for _ in range(quota):
            low = m & -m
            kept |= low
            m ^= low
        keep_rows[v] = (g.adj[v] & ~internal) | kept
    # an internal edge between two bad vertices survives only if both kept it
    rows = list(keep_rows)
    for v in range(g.n):
        m = rows[v]
        for w in bits(m):
            if not keep_rows[w] >> v & 1:
                rows[v] &= ~(1 << w)
                rows[w] &= ~(1 << v)
    return Graph(g.n, rows)


# -- extraction --------------------------------------------------------------


@dataclass
class PipelineState:
    graph: Graph
    partition: Partition
    statuses: tuple[VertexStatus, ...]
    spec: FanSpec
    t2: Fraction
    max_iterations: Optional[int]
    assert_claims: bool
    fans: list[FanCopy] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    growth_failed: bool = False
    iterations: int = 0

    def budget_left(self) -> bool:
        return self.max_iterations is None or self.iterations < self.max_iterations


def _internal_degree(state: PipelineState, v: int) -> int:
    part = state.partition.parts[state.partition.part_of[v]]
    return (state.graph.adj[v] & part).bit_count()


def _candidate_order(state: PipelineState, mask: int) -> list[int]:
    """Vertices of ``mask`` by descending residual cross degree, ties by index."""
    part_of = state.partition.part_of
    parts = state.partition.parts
    adj = state.graph.adj

    def cross(v: int) -> int:
        return (adj[v] & ~parts[part_of[v]]).bit_count()

    return sorted(bits(mask), key=lambda v: (-cross(v), v))


def _grow_blades(
    state: PipelineState,
    center: int,
    seeds: list[tuple[int, ...]],
    part_order: list[int],
    eligible: int,
) -> Optional[list[tuple[int, ...]]]:
    """Complete blades part by part with good+active vertices.

    ``seeds`` holds the already-fixed vertices of each blade.  For every part
    in ``part_order`` each blade gets one vertex adjacent to the center and to
    the blade's current members; blades stay pairwise disjoint.  Backtracking
    over the candidate order makes the search exhaustive for the fixed seeds.
    """
    adj = state.graph.adj
    parts = state.partition.parts
    k = state.spec.k
    slots = [(pi, blade) for pi in part_order for blade in range(k)]
    blades = [list(s) for s in seeds]
    used = 0
    for s in seeds:
        for v in s:
            used |= 1 << v

    def rec(idx: int, used: int) -> bool:
        if idx == len(slots):
            return True
        part_index, blade = slots[idx]
        pool = adj[center] & parts[part_index] & eligible & ~used
        for v in blades[blade]:
            pool &= adj[v]
        for v in _candidate_order(state, pool):
            blades[blade].append(v)
            if rec(idx + 1, used | (1 << v)):
                return True
            blades[blade].pop()
        return False

    if rec(0, used):
        return [tuple(b) for b in blades]
    return None


def _eligible_mask(state: PipelineState) -> int:
    """good and active vertices of the current residual."""
    active = activity_flags(state.graph, state.partition, state.t2)
    mask = 0
    for v, status in enumerate(state.statuses):
        if status.good and active[v]:
            mask |= 1 << v
    return mask


def _apply_fan(state: PipelineState, copy: FanCopy, step: int, internal_used: int) -> None:
    if state.assert_claims:
        assert validate_fan_copy(state.graph, copy, state.spec)
        assert internal_used == state.spec.k
    state.graph = state.graph.with_edges_removed(copy.edge_pairs())
    state.fans.append(copy)
    state.events.append({"step": step, "center": copy.center})
    state.iterations += 1


def _count_internal(copy: FanCopy, partition: Partition) -> int:
    return sum(
        1
        for u, v in copy.edge_pairs()
        if partition.part_of[u] == partition.part_of[v]
    )


def step1_extract(state: PipelineState) -> list[FanCopy]:
    """Extract fans centered on vertices with k residual internal neighbors.

    Bad vertices go first, then good ones, by descending internal degree with
    index ties.  Each blade takes one internal neighbor of the center as its
    seed plus one good+active vertex from every other part.  Stops when no
    center qualifies or growth fails.
    """
    spec = state.spec
    k = spec.k
    found: list[FanCopy] = []
    while state.budget_left():
        candidates = [
            v for v in range(state.graph.n) if _internal_degree(state, v) >= k
        ]
        if not candidates:
            break
        candidates.sort(
            key=lambda v: (
                state.statuses[v].good,
                -_internal_degree(state, v),
                v,
            )
        )
        u = candidates[0]
        home = state.partition.part_of[u]
        internal = state.graph.adj[u] & state.partition.parts[home]
        eligible = _eligible_mask(state)
        part_order = [p for p in range(state.partition.part_count) if p != home]
        copy = _step1_grow(state, u, internal, part_order, eligible)
        if copy is None:
            state.growth_failed = True
            state.events.append({"step": 1, "center": u, "failed": True})
            break
        _apply_fan(state, copy, 1, _count_internal(copy, state.partition))
        found.append(copy)
    return found


def _step1_grow(
    state: PipelineState,
    center: int,
    internal: int,
    part_order: list[int],
    eligible: int,
) -> Optional[FanCopy]:
    k = state.spec.k
    seeds_pool = sorted(bits(internal))

    def rec(start: int, seeds: list[int]) -> Optional[FanCopy]:
        if len(seeds) == k:
            blades = _grow_blades(
                state, center, [(s,) for s in seeds], part_order, eligible
            )
            if blades is not None:
                return FanCopy(center, tuple(tuple(sorted(b)) for b in blades)).normalized()
            return None
        for i in range(start, len(seeds_pool)):
            if len(seeds_pool) - i < k - len(seeds):
                return None
            result = rec(i + 1, seeds + [seeds_pool[i]])
            if result is not None:
                return result
        return None

    return rec(0, [])


def _find_internal_matching(state: PipelineState, part_index: int, k: int) -> Optional[list[tuple[int, int]]]:
    """A matching of exactly k edges inside the part, or None; exhaustive."""
    part = state.partition.parts[part_index]
    adj = state.graph.adj
    verts = [v for v in bits(part) if adj[v] & part]
    out: list[tuple[int, int]] = []

    def rec(idx: int, used: int) -> bool:
        if len(out) == k:
            return True
        if idx >= len(verts):
            return False
        v = verts[idx]
        if used >> v & 1:
            return rec(idx + 1, used)
        for w in bits(adj[v] & part & ~used):
            if w <= v:
                continue
            out.append((v, w))
            if rec(idx + 1, used | (1 << v) | (1 << w)):
                return True
            out.pop()
        return rec(idx + 1, used)  # leave v unmatched

    if rec(0, 0):
        return out
    return None


def step2_extract(state: PipelineState) -> list[FanCopy]:
    """Turn internal k-matchings into fans centered in another part.

    The k matched pairs seed the blades; the center is a good+active common
    neighbor of all 2k endpoints drawn from the lowest-index feasible part,
    and remaining parts contribute one good+active vertex per blade.
    """
    spec = state.spec
    k = spec.k
    found: list[FanCopy] = []
    while state.budget_left():
        progress = False
        for part_index in range(state.partition.part_count):
            matching = _find_internal_matching(state, part_index, k)
            if matching is None:
                continue
            copy = _step2_grow(state, part_index, matching)
            if copy is None:
                state.growth_failed = True
                state.events.append({"step": 2, "part": part_index, "failed": True})
                continue
            _apply_fan(state, copy, 2, _count_internal(copy, state.partition))
            found.append(copy)
            progress = True
            break
        if not progress:
            break
    return found


def _step2_grow(
    state: PipelineState, part_index: int, matching: list[tuple[int, int]]
) -> Optional[FanCopy]:
    adj = state.graph.adj
    eligible = _eligible_mask(state)
    endpoints = [v for edge in matching for v in edge]
    for center_part in range(state.partition.part_count):
        if center_part == part_index:
            continue
        pool = state.partition.parts[center_part] & eligible
        for v in endpoints:
            pool &= adj[v]
        other_parts = [
            p
            for p in range(state.partition.part_count)
            if p not in (part_index, center_part)
        ]
        for center in _candidate_order(state, pool):
            blades = _grow_blades(
                state,
                center,
                [tuple(edge) for edge in matching],
                other_parts,
                eligible & ~(1 << center),
            )
            if blades is not None:
                return FanCopy(center, tuple(tuple(sorted(b)) for b in blades)).normalized()
    return None


# -- multipartite growth (sparse regime) --------------------------------------


def grow_complete_multipartite(
    g: Graph, a: Iterable[int], partition: Partition, size: int
) -> dict[int, tuple[int, ...]]:
    """Grow a complete multipartite subgraph around ``a``.

    ``a`` must sit inside one part; every other part contributes ``size``
    vertices that are isolated within their own part and adjacent to all
    previously chosen vertices.  Greedy, part by part in ascending order,
    taking lowest-index candidates.  Raises GrowthInfeasibleError naming the
    first part whose pool runs dry.
    """
    a = sorted(set(a))
    if not a:
        raise ValueError("seed set must be nonempty")
    homes = {partition.part_of[v] for v in a}
    if len(homes) != 1:
        raise ValueError("seed set must lie inside a single part")
    home = homes.pop()

    chosen_all = list(a)
    result: dict[int, tuple[int, ...]] = {}
    for part_index in range(partition.part_count):
        if part_index == home:
            continue
        part = partition.parts[part_index]
        isolated = 0
        for v in bits(part):
            if not g.adj[v] & part:
                isolated |= 1 << v
        pool = isolated
        for v in chosen_all:
            pool &= g.adj[v]
        if pool.bit_count() < size:
            raise GrowthInfeasibleError(part_index)
        picked = []
        m = pool
        for _ in range(size):
            low = m & -m
            picked.append(low.bit_length() - 1)
            m ^= low
        result[part_index] = tuple(picked)
        chosen_all.extend(picked)
    return result


# -- balance checks ------------------------------------------------------------


def check_balance(
    partition: Partition,
    gamma: Fraction,
    mode: str = "max-cut",
    bound: Optional[Fraction] = None,
) -> dict:
    """Per-part deviation report against the configured balance band.

    "max-cut" mode flags parts whose size deviates from n/(r-1) by more than
    the bound (default 2*sqrt(gamma)*n, exact when gamma is a square).
    "tight" mode uses the integer band ceil(n/p) - (p-1) <= size <= ceil(n/p)
    for p parts.
    """
    n = partition.n
    p = partition.part_count
    sizes = partition.part_sizes()
    target = Fraction(n, p)
    deviations = [Fraction(s) - target for s in sizes]
    violations: list[int] = []
    if mode == "tight":
        hi = ceil_div(n, p)
        lo = hi - (p - 1)
        used_bound: Fraction | None = None
        for i, s in enumerate(sizes):
            if not lo <= s <= hi:
                violations.append(i)
    elif mode == "max-cut":
        if bound is None:
            root = _fraction_sqrt(gamma)
            bound = 2 * root * n if root is not None else Fraction(
                int(2 * float(gamma) ** 0.5 * n * 10**9), 10**9
            )
        used_bound = bound
        for i, dev in enumerate(deviations):
            if abs(dev) > bound:
                violations.append(i)
    else:
        raise ValueError(f"unknown balance mode {mode!r}")
    return {
        "mode": mode,
        "sizes": sizes,
        "deviations": [frac_json(d) for d in deviations],
        "bound": frac_json(used_bound) if used_bound is not None else None,
        "violations": violations,
        "ok": not violations,
    }


def _fraction_sqrt(value: Fraction) -> Optional[Fraction]:
    import math

    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


# -- the full pipeline ---------------------------------------------------------


def run_pipeline(
    g: Graph, spec: FanSpec, config: Optional[PipelineConfig] = None
) -> DecompositionReport:
    """peel -> partition -> classify -> prune -> sweep 1 -> sweep 2.

    Never raises on a failed structural check: every check lands in
    ``claims_checked`` as (id, passed).  If peeling leaves fewer vertices than
    one fan needs, the report falls back to the exact packing solver.
    """
    if config is None:
        config = PipelineConfig()
    peeled, peel_trace = peel_low_degree(g, spec)

    if peeled.n < spec.vertex_count:
        result = phi_exact(
            g, spec, budget=config.packing_budget, on_budget="degrade"
        )
        return DecompositionReport(
            mode="exact-packing",
            spec=spec,
            partition=None,
            m=None,
            fans=result.packing.copies,
            internal_edges_consumed=0,
            residual_internal=None,
            claims_checked=(),
            phi_upper_bound=result.phi,
            target_fans=None,
            regime=None,
            t1=None,
            t2=None,
            trace={"peeled": peel_trace, "packing_exact": result.exact},
        )

    n = peeled.n
    k, r = spec.k, spec.r
    partition = max_cut_partition(peeled, r - 1, seed=config.seed, restarts=config.restarts)
    t1, t2 = config.resolve_thresholds(n, spec)
    statuses = classify_vertices(peeled, partition, t1)
    m = partition.internal_edges(peeled)

    claims: list[tuple[str, bool]] = []
    regime = None
    gamma = Fraction(1, (40 * k * r**4) ** 2)
    if config.assert_claims:
        balance = check_balance(partition, gamma, mode="max-cut", bound=config.balance_bound)
        claims.append(("balance", balance["ok"]))
    if k >= 2:
        consts = constants(n, spec)
        regime = (
            "dense-internal"
            if m > consts.m2
            else "moderate-internal"
            if m > consts.m1
            else "sparse-internal"
        )
        if config.assert_claims and regime == "sparse-internal":
            tight = check_balance(partition, gamma, mode="tight")
            claims.append(("tight-balance", tight["ok"]))

    try:
        g0 = prune_to_g0(peeled, partition, spec, t1)
    except PruningInfeasibleError as exc:
        claims.append(("prunable", False))
        g0 = peeled
        prune_note = str(exc)
    else:
        prune_note = None
    m0 = partition.internal_edges(g0)
    if config.assert_claims:
        claims.append(("prune-retention", 2 * m0 >= m))

    state = PipelineState(
        graph=g0,
        partition=partition,
        statuses=statuses,
        spec=spec,
        t2=t2,
        max_iterations=config.max_iterations,
        assert_claims=config.assert_claims,
    )
    step1 = step1_extract(state)
    step2 = step2_extract(state)
    fans = tuple(state.fans)

    residual_internal = partition.internal_edges(state.graph)
    if config.assert_claims:
        claims.append(("extraction-complete", not state.growth_failed))
        residual_ok = True
        for mask in partition.parts:
            sub_edges = (
                sum((state.graph.adj[v] & mask).bit_count() for v in bits(mask)) // 2
            )
            max_deg = max(
                ((state.graph.adj[v] & mask).bit_count() for v in bits(mask)),
                default=0,
            )
            if k >= 2:
                if sub_edges > hanson_bound(k - 1, k - 1) or max_deg >= k:
                    residual_ok = False
            elif sub_edges > 0:
                residual_ok = False
        claims.append(("residual-bound", residual_ok))

    e_fan = spec.edge_count
    target = ceil_div(m - surplus_g(k), e_fan - 1) + 1
    report = DecompositionReport(
        mode="pipeline",
        spec=spec,
        partition=partition,
        m=m,
        fans=fans,
        internal_edges_consumed=k * len(fans),
        residual_internal=residual_internal,
        claims_checked=tuple(claims),
        phi_upper_bound=g.edge_count - len(fans) * (e_fan - 1),
        target_fans=target,
        regime=regime,
        t1=t1,
        t2=t2,
        trace={
            "peeled": peel_trace,
            "pruned_internal_edges": m - m0,
            "prune_note": prune_note,
            "step1_fans": len(step1),
            "step2_fans": len(step2),
            "events": state.events,
            "seed": config.seed,
        },
    )
    return report
