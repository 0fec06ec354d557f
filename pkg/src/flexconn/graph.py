"""Multigraph representation, cut arithmetic, exact global minimum cut,
and enumeration of all cuts below a capacity threshold.

All types are immutable values; every operation here is a pure function
and safe to call from multiple threads.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphStructureError, TooLargeError

# Largest vertex count for which exhaustive bipartition scans are allowed.
DEFAULT_EXHAUSTIVE_LIMIT = 20

# Relative slop applied at enumeration thresholds so that capacities within
# floating-point noise of the threshold count as *at* it (strict inequality).
CUT_REL_TOL = 1e-9

# Contraction mode refuses thresholds further above the minimum cut than this.
DEFAULT_ALPHA_MAX = 4.0

# Multiplier in front of the n^(2*alpha) * ln(n/delta) repetition count.
DEFAULT_REPETITION_CONSTANT = 2.0


@dataclass(frozen=True)
class Multigraph:
    """Connected undirected multigraph without self-loops.

    Edges are identified by their dense index in ``edges``; parallel edges
    are permitted and count separately everywhere.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise GraphStructureError(f"need at least 2 vertices, got {self.n}")
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphStructureError(f"edge {eid}: endpoint out of range")
            if u == v:
                raise GraphStructureError(f"edge {eid}: self-loop at vertex {u}")
        if not self._connected():
            raise GraphStructureError("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def _connected(self) -> bool:
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            parent[find(u)] = find(v)
        root = find(0)
        return all(find(v) == root for v in range(self.n))


@dataclass(frozen=True)
class Cut:
    """Canonical nontrivial vertex bipartition.

    ``side_mask`` is a bitset over vertices holding the side that does NOT
    contain vertex 0, so each bipartition has exactly one representation.
    Python integers are arbitrary-width, so any vertex count is supported.
    ``capacity`` is a cache filled in by enumerations and is excluded from
    equality and hashing.
    """

    n: int
    side_mask: int
    capacity: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.side_mask <= 0 or self.side_mask >> self.n:
            raise ValueError("cut side must be a nonempty proper vertex subset")
        if self.side_mask & 1:
            raise ValueError("canonical cut side must not contain vertex 0")

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int], capacity=None) -> "Cut":
        mask = 0
        for v in vertices:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
            mask |= 1 << v
        full = (1 << n) - 1
        if mask == 0 or mask == full:
            raise ValueError("cut must be nontrivial")
        if mask & 1:
            mask ^= full
        return cls(n, mask, capacity)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if (self.side_mask >> v) & 1)

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if not (self.side_mask >> v) & 1)


def check_capacities(caps: Sequence, m: int) -> None:
    """Validate a per-edge capacity vector: length m, nonnegative, finite."""
    if len(caps) != m:
        raise ValueError(f"expected {m} capacities, got {len(caps)}")
    for eid, c in enumerate(caps):
        if c < 0:
            raise ValueError(f"capacity of edge {eid} is negative")
        if isinstance(c, float) and not math.isfinite(c):
            raise ValueError(f"capacity of edge {eid} is not finite")


def edge_crosses(mask: int, u: int, v: int) -> bool:
    return bool(((mask >> u) ^ (mask >> v)) & 1)


def cut_edges(g: Multigraph, r: Cut) -> frozenset[int]:
    """Edge ids with exactly one endpoint on the cut side."""
    if r.n != g.n:
        raise ValueError("cut and graph have different vertex counts")
    mask = r.side_mask
    return frozenset(eid for eid, (u, v) in enumerate(g.edges) if edge_crosses(mask, u, v))


def cut_capacity(g: Multigraph, caps: Sequence, mask: int):
    total = 0
    for eid, (u, v) in enumerate(g.edges):
        if ((mask >> u) ^ (mask >> v)) & 1:
            total += caps[eid]
    return total


def canonical_masks(n: int) -> Iterable[int]:
    """All canonical cut side masks in iteration order (increasing integer).

    Vertex 0 is fixed on the excluded side, giving 2^(n-1) - 1 masks.
    """
    for s in range(1, 1 << (n - 1)):
        yield s << 1


def min_cut(g: Multigraph, caps: Sequence) -> tuple[Cut, float]:
    """Exact global minimum cut by repeated maximum-adjacency phases.

    Deterministic: phase start vertices and ties are resolved by smallest
    index. Works for any ordered numeric capacity type (int, float,
    Fraction); the returned value has the promoted type of the inputs.
    """
    check_capacities(caps, g.m)
    n = g.n
    weight = [[0] * n for _ in range(n)]
    for eid, (u, v) in enumerate(g.edges):
        weight[u][v] += caps[eid]
        weight[v][u] += caps[eid]

    masks = [1 << v for v in range(n)]
    active = list(range(n))
    best_value = None
    best_mask = None

    while len(active) > 1:
        start = active[0]
        rest = [v for v in active if v != start]
        score = {v: weight[start][v] for v in rest}
        prev = start
        last = start
        while rest:
            # most tightly connected next vertex, smallest index on ties
            nxt = rest[0]
            for v in rest[1:]:
                if score[v] > score[nxt]:
                    nxt = v
            rest.remove(nxt)
            prev, last = last, nxt
            for v in rest:
                score[v] += weight[nxt][v]
        phase_value = score[last]
        if best_value is None or phase_value < best_value:
            best_value = phase_value
            best_mask = masks[last]
        # merge last into prev
        for v in active:
            if v != last and v != prev:
                weight[prev][v] += weight[last][v]
                weight[v][prev] = weight[prev][v]
        masks[prev] |= masks[last]
        active.remove(last)

    full = (1 << n) - 1
    if best_mask & 1:
        best_mask ^= full
    return Cut(n, best_mask, capacity=best_value), best_value


def enumerate_cuts_below(
    g: Multigraph,
    caps: Sequence,
    threshold,
    mode: str = "exhaustive",
    *,
    delta: float = 1e-6,
    seed: int = 0,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    alpha_max: float = DEFAULT_ALPHA_MAX,
    repetition_constant: float = DEFAULT_REPETITION_CONSTANT,
    rel_tol: float = CUT_REL_TOL,
) -> list[Cut]:
    """All canonical nontrivial cuts with capacity strictly below ``threshold``.

    Exhaustive mode scans every bipartition and is exact; it refuses graphs
    with more than ``exhaustive_limit`` vertices rather than silently
    degrading. Contraction mode runs ``ceil(K * n^(2a) * ln(n/delta))``
    independent capacity-weighted contraction runs (a = threshold / min cut,
    K = ``repetition_constant``); each run contracts down to max(2, ceil(2a))
    supervertices and scores every bipartition of the quotient against the
    original capacities. With probability at least 1 - delta the result
    contains every qualifying cut; it never contains a non-qualifying one.

    Capacities within ``rel_tol`` (relative) of the threshold count as at
    the threshold and are excluded; pass ``rel_tol=0`` for exact arithmetic.

    Results are sorted by (capacity, side_mask) and duplicate-free.
    """
    check_capacities(caps, g.m)
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    cutoff = threshold - rel_tol * threshold if rel_tol else threshold

    if mode == "exhaustive":
        if g.n > exhaustive_limit:
            raise TooLargeError(
                f"instance too large for exhaustive mode (n={g.n} > {exhaustive_limit})"
            )
        found = {}
        for mask in canonical_masks(g.n):
            cap = cut_capacity(g, caps, mask)
            if cap < cutoff:
                found[mask] = cap
    elif mode == "contraction":
        found = _enumerate_by_contraction(
            g, caps, cutoff, threshold, delta, seed, alpha_max, repetition_constant
        )
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")

    cuts = [Cut(g.n, mask, capacity=cap) for mask, cap in found.items()]
    cuts.sort(key=lambda c: (c.capacity, c.side_mask))
    return cuts


def _enumerate_by_contraction(g, caps, cutoff, threshold, delta, seed, alpha_max, constant):
    _, lam = min_cut(g, caps)
    if lam <= 0:
        raise ValueError("contraction mode requires a positive minimum cut")
    if lam >= cutoff:
        return {}
    alpha = float(threshold) / float(lam)
    if alpha > alpha_max:
        raise ValueError(
            f"threshold is {alpha:.3g}x the minimum cut, above alpha_max={alpha_max}"
        )
    runs = math.ceil(constant * g.n ** (2 * alpha) * math.log(g.n / delta))
    target = max(2, math.ceil(2 * alpha))
    rng = random.Random(seed)
    found = {}
    for _ in range(runs):
        _contraction_run(g, caps, cutoff, target, rng, found)
    return found


def _contraction_run(g, caps, cutoff, target, rng, found):
    """One capacity-weighted contraction down to ``target`` supervertices,
    then score every bipartition of the quotient."""
    n = g.n
    label = list(range(n))
    comp_mask = [1 << v for v in range(n)]
    weights = [float(c) for c in caps]
    alive = n
    while alive > target:
        crossing = []
        total = 0.0
        for eid, (u, v) in enumerate(g.edges):
            if label[u] != label[v] and weights[eid] > 0.0:
                crossing.append(eid)
                total += weights[eid]
        # every quotient cut weighs at least the (positive) min cut
        pick = rng.random() * total
        acc = 0.0
        chosen = crossing[-1]
        for eid in crossing:
            acc += weights[eid]
            if pick < acc:
                chosen = eid
                break
        lu, lv = label[g.edges[chosen][0]], label[g.edges[chosen][1]]
        for v in range(n):
            if label[v] == lv:
                label[v] = lu
        comp_mask[lu] |= comp_mask[lv]
        alive -= 1

    root0 = label[0]
    others = sorted({lab for lab in label if lab != root0})
    for bits in range(1, 1 << len(others)):
        mask = 0
        for i, lab in enumerate(others):
            if (bits >> i) & 1:
                mask |= comp_mask[lab]
        if mask in found:
            continue
        cap = cut_capacity(g, caps, mask)
        if cap < cutoff:
            found[mask] = cap
