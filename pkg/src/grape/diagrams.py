"""Distances between persistence diagrams and diagonal-gap selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import SizeLimitError
from .graph import WeightedGraph
from .persistence import Cornerpoint, PersistenceDiagram

__all__ = [
    "bottleneck_distance",
    "bottleneck_oracle",
    "DiagonalGap",
    "GapSelection",
    "diagonal_gaps",
    "select_above_gap",
    "natural_pseudodistance",
]

Point = tuple[float, float]


def _linf(p: Point, q: Point) -> float:
    p_inf, q_inf = math.isinf(p[1]), math.isinf(q[1])
    if p_inf and q_inf:
        return abs(p[0] - q[0])
    if p_inf or q_inf:
        return math.inf
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _to_diagonal(p: Point) -> float:
    return (p[1] - p[0]) / 2


def _split(d: PersistenceDiagram) -> tuple[list[Point], list[float]]:
    finite, births = [], []
    for b, dd in d.expanded():
        if math.isinf(dd):
            births.append(b)
        else:
            finite.append((b, dd))
    return finite, sorted(births)


def _perfect_matching_exists(a: list[Point], b: list[Point], t: float) -> bool:
    # Left: points of a, then one diagonal slot per point of b.
    # Right: points of b, then one diagonal slot per point of a.
    n, m = len(a), len(b)
    rows, cols = [], []
    for i, p in enumerate(a):
        for j, q in enumerate(b):
            if _linf(p, q) <= t:
                rows.append(i)
                cols.append(j)
        if _to_diagonal(p) <= t:
            rows.append(i)
            cols.append(m + i)
    for j, q in enumerate(b):
        if _to_diagonal(q) <= t:
            rows.append(n + j)
            cols.append(j)
        for i in range(n):
            rows.append(n + j)
            cols.append(m + i)
    size = n + m
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def _finite_bottleneck(a: list[Point], b: list[Point]) -> float:
    if not a and not b:
        return 0.0
    candidates = {_to_diagonal(p) for p in a} | {_to_diagonal(q) for q in b}
    candidates |= {_linf(p, q) for p in a for q in b}
    cands = sorted(candidates)
    lo, hi = 0, len(cands) - 1
    # the largest candidate (every point to the diagonal) is always feasible
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_matching_exists(a, b, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Bottleneck distance under the L-infinity ground metric.

    Cornerpoints at infinity can only be paired with each other; pairing
    sorted births is optimal for them.  Different counts give ``inf``.
    """
    a, inf_a = _split(d1)
    b, inf_b = _split(d2)
    if len(inf_a) != len(inf_b):
        return math.inf
    at_inf = max((abs(x - y) for x, y in zip(inf_a, inf_b)), default=0.0)
    return max(at_inf, _finite_bottleneck(a, b))


def bottleneck_oracle(d1: PersistenceDiagram, d2: PersistenceDiagram, max_points: int = 6) -> float:
    """Bottleneck distance by trying every partial pairing of cornerpoints.

    Unpaired cornerpoints go to the diagonal.  Exponential; capped at
    ``max_points`` cornerpoints (counted with multiplicity) per diagram.
    """
    p, q = d1.expanded(), d2.expanded()
    if len(p) > max_points or len(q) > max_points:
        raise SizeLimitError(f"bottleneck oracle accepts at most {max_points} cornerpoints per diagram")
    best = math.inf

    def rec(i: int, used: frozenset[int], worst: float):
        nonlocal best
        if worst >= best:
            return
        if i == len(p):
            rest = max((_to_diagonal(q[j]) for j in range(len(q)) if j not in used), default=0.0)
            best = min(best, max(worst, rest))
            return
        rec(i + 1, used, max(worst, _to_diagonal(p[i])))
        for j in range(len(q)):
            if j not in used:
                rec(i + 1, used | {j}, max(worst, _linf(p[i], q[j])))

    rec(0, frozenset(), 0.0)
    return best


# ------------------------------------------------------------- gap selection

@dataclass(frozen=True)
class DiagonalGap:
    """Open band ``lower < death - birth < upper`` holding no cornerpoint."""

    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class GapSelection:
    gaps: tuple[DiagonalGap, ...]
    k: int
    threshold: float
    selected: tuple[Cornerpoint, ...]

    @property
    def gap(self) -> DiagonalGap | None:
        return self.gaps[self.k - 1] if self.gaps else None


def diagonal_gaps(d: PersistenceDiagram) -> list[DiagonalGap]:
    """Gaps between consecutive distinct persistences of proper cornerpoints.

    The band from 0 to the smallest persistence counts as a gap.  Sorted by
    decreasing width, ties going to the higher gap.
    """
    pers = sorted({c.persistence for c in d.proper()})
    if not pers:
        return []
    bounds = [0.0] + pers
    gaps = [DiagonalGap(lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    gaps.sort(key=lambda g: (-g.width, -g.lower))
    return gaps


def select_above_gap(d: PersistenceDiagram, k: int = 1) -> GapSelection:
    """Cornerpoints lying above the ``k`` widest gaps.

    The cut sits at the lowest of the first ``k`` gaps, so the selection
    only grows with ``k``.  Cornerpoints at infinity are always selected.
    """
    gaps = diagonal_gaps(d)
    if not 1 <= k <= len(gaps):
        raise ValueError(f"gap index {k} out of range 1..{len(gaps)}")
    threshold = min(g.upper for g in gaps[:k])
    chosen = [c for c in d.cornerpoints if c.at_infinity or c.persistence >= threshold]
    chosen.sort(key=lambda c: (-c.persistence, c.birth))
    return GapSelection(tuple(gaps), k, threshold, tuple(chosen))


# ------------------------------------------------------ natural pseudodistance

def natural_pseudodistance(
    g1: WeightedGraph,
    g2: WeightedGraph,
    f1=None,
    f2=None,
    max_vertices: int = 8,
) -> float:
    """Smallest, over graph isomorphisms, of the largest weight change.

    ``f1``/``f2`` optionally replace the graphs' own weights (indexed by
    edge id).  Returns ``inf`` when the graphs are not isomorphic.
    """
    if g1.n_vertices > max_vertices or g2.n_vertices > max_vertices:
        raise SizeLimitError(f"pseudodistance oracle accepts at most {max_vertices} vertices")
    if g1.directed != g2.directed:
        return math.inf
    w1 = list(g1.weights if f1 is None else f1)
    w2 = list(g2.weights if f2 is None else f2)
    if g1.n_vertices != g2.n_vertices or g1.n_edges != g2.n_edges:
        return math.inf
    n = g1.n_vertices
    directed = g1.directed

    def arcs(g: WeightedGraph, w: list[float]) -> dict[tuple[int, int], float]:
        out = {}
        for e in g.edges:
            out[(e.u, e.v)] = w[e.id]
            if not directed:
                out[(e.v, e.u)] = w[e.id]
        return out

    a1, a2 = arcs(g1, w1), arcs(g2, w2)

    def degree_sig(g: WeightedGraph) -> list[tuple[int, int]]:
        outd, ind = [0] * n, [0] * n
        for e in g.edges:
            outd[e.u] += 1
            ind[e.v] += 1
        if not directed:
            return [(outd[v] + ind[v], 0) for v in range(n)]
        return list(zip(outd, ind))

    s1, s2 = degree_sig(g1), degree_sig(g2)
    if sorted(s1) != sorted(s2):
        return math.inf
    order = sorted(range(n), key=lambda v: -(s1[v][0] + s1[v][1]))
    phi: dict[int, int] = {}
    taken: set[int] = set()
    best = math.inf

    def rec(i: int, worst: float):
        nonlocal best
        if worst >= best:
            return
        if i == n:
            best = worst
            return
        x = order[i]
        for y in range(n):
            if y in taken or s2[y] != s1[x]:
                continue
            cost = worst
            ok = True
            for px, py in phi.items():
                for e1, e2 in (((x, px), (y, py)), ((px, x), (py, y))):
                    has1, has2 = e1 in a1, e2 in a2
                    if has1 != has2:
                        ok = False
                        break
                    if has1:
                        cost = max(cost, abs(a1[e1] - a2[e2]))
                if not ok:
                    break
            if ok:
                phi[x] = y
                taken.add(y)
                rec(i + 1, cost)
                del phi[x]
                taken.discard(y)

    rec(0, 0.0)
    return best
