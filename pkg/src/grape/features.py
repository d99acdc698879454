"""Features on (di)graphs and enumerators of their F-sets.

A feature is a predicate on subsets of ``V ∪ E``.  Each built-in feature
comes with a fast enumerator that lists all of its sets on a snapshot and
with the plain predicate it is defined by; :func:`brute_force_fsets`
evaluates the predicate over every subset and serves as the reference for
the enumerators.
"""

from __future__ import annotations

import operator
import os
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from .errors import EnumerationLimitError, SizeLimitError
from .graph import Snapshot, WeightedGraph

__all__ = [
    "FeatureSet",
    "Feature",
    "FEATURES",
    "get_feature",
    "enumerate_fsets",
    "brute_force_fsets",
    "default_max_sets",
]

DEFAULT_MAX_SETS = 10**6


def default_max_sets() -> int:
    raw = os.environ.get("GRAPE_MAX_SETS")
    if raw is None:
        return DEFAULT_MAX_SETS
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"GRAPE_MAX_SETS must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("GRAPE_MAX_SETS must be positive")
    return cap


@dataclass(frozen=True, order=True)
class FeatureSet:
    """A subset of ``V ∪ E`` given by sorted vertex ids and sorted edge ids.

    Ordering is lexicographic on ``(vertices, edges)``, which is also the
    canonical witness order inside cornerpoints.
    """

    vertices: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()

    @classmethod
    def of(cls, vertices: Iterable[int] = (), edges: Iterable[int] = ()) -> "FeatureSet":
        return cls(tuple(sorted(set(vertices))), tuple(sorted(set(edges))))

    def __len__(self) -> int:
        return len(self.vertices) + len(self.edges)

    def issubset(self, other: "FeatureSet") -> bool:
        return set(self.vertices) <= set(other.vertices) and set(self.edges) <= set(other.edges)

    def labels(self, graph: WeightedGraph) -> tuple[str, ...]:
        return tuple(graph.labels[v] for v in self.vertices) + tuple(
            graph.edge_label(e) for e in self.edges
        )


Enumerator = Callable[[Snapshot, int], Iterator[FeatureSet]]
Predicate = Callable[[Snapshot, FeatureSet], bool]


@dataclass(frozen=True)
class Feature:
    """A named feature with its enumerator and defining predicate.

    ``predicate`` is the base property; when ``maximal`` is set the feature
    holds on the inclusion-maximal sets satisfying it.
    """

    name: str
    kind: str  # "vertex" | "edge"
    enumerator: Enumerator
    predicate: Predicate
    maximal: bool = False
    monotone: bool = False
    directed: bool = False

    def check_graph(self, graph: WeightedGraph) -> None:
        if graph.directed != self.directed:
            want = "digraph" if self.directed else "undirected graph"
            raise ValueError(f"feature {self.name!r} needs a {want}")


# ----------------------------------------------------------------- hubs

def _dominates(strict: bool):
    return operator.gt if strict else operator.ge


def _hub_enumerator(score: Callable[[Snapshot, int], float], neighbours: str, strict: bool) -> Enumerator:
    cmp = _dominates(strict)

    def enumerate_hubs(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
        nbrs = _neighbour_map(snap, neighbours)
        scores = {v: score(snap, v) for v in snap.vertices}
        for v in sorted(snap.vertices):
            s = scores[v]
            if all(cmp(s, scores[u]) for u in nbrs[v]):
                yield FeatureSet((v,))

    return enumerate_hubs


def _hub_predicate(score: Callable[[Snapshot, int], float], neighbours: str, strict: bool) -> Predicate:
    cmp = _dominates(strict)

    def is_hub(snap: Snapshot, x: FeatureSet) -> bool:
        if x.edges or len(x.vertices) != 1:
            return False
        (v,) = x.vertices
        if v not in snap.vertices:
            return False
        nbrs = _neighbour_map(snap, neighbours)[v]
        return all(cmp(score(snap, v), score(snap, u)) for u in nbrs)

    return is_hub


def _neighbour_map(snap: Snapshot, which: str) -> dict[int, frozenset[int]]:
    if which == "all":
        return snap.neighbours
    if which == "out":
        return snap.out_neighbours
    if which == "in":
        return snap.in_neighbours
    raise ValueError(f"neighbours must be 'all', 'out' or 'in', not {which!r}")


def _degree(snap: Snapshot, v: int) -> float:
    return snap.degree(v)


def _weighted_degree(snap: Snapshot, v: int) -> float:
    return sum(e.weight for e in snap.incident[v])


def _out_degree(snap: Snapshot, v: int) -> float:
    return snap.out_degree(v)


def hub_feature(strict: bool = True) -> Feature:
    return Feature(
        "hub", "vertex",
        _hub_enumerator(_degree, "all", strict),
        _hub_predicate(_degree, "all", strict),
    )


def weighted_hub_feature(strict: bool = True) -> Feature:
    return Feature(
        "whub", "vertex",
        _hub_enumerator(_weighted_degree, "all", strict),
        _hub_predicate(_weighted_degree, "all", strict),
    )


def digraph_hub_feature(strict: bool = False, neighbours: str = "all") -> Feature:
    # Non-strict by default: it is the only convention that yields identical
    # steady and ranging functions on every weighted 3-tournament.
    if neighbours not in ("all", "out", "in"):
        raise ValueError(f"neighbours must be 'all', 'out' or 'in', not {neighbours!r}")
    return Feature(
        "dhub", "vertex",
        _hub_enumerator(_out_degree, neighbours, strict),
        _hub_predicate(_out_degree, neighbours, strict),
        directed=True,
    )


# ------------------------------------------------------ independent sets

def _is_independent(snap: Snapshot, x: FeatureSet) -> bool:
    if x.edges or not x.vertices:
        return False
    vs = set(x.vertices)
    if not vs <= snap.vertices:
        return False
    nbrs = snap.neighbours
    return all(not (nbrs[v] & vs) for v in vs)


def _independent_sets(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
    order = sorted(snap.vertices)
    nbrs = snap.neighbours

    def rec(start: int, chosen: tuple[int, ...], blocked: frozenset[int]):
        for j in range(start, len(order)):
            v = order[j]
            if v in blocked:
                continue
            grown = chosen + (v,)
            yield FeatureSet(grown)
            yield from rec(j + 1, grown, blocked | nbrs[v])

    yield from rec(0, (), frozenset())


def _maximal_independent_sets(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
    # Bron-Kerbosch with pivoting on the complement graph.
    nbrs = snap.neighbours
    found: list[FeatureSet] = []

    def non_nbrs(v: int, pool: set[int]) -> set[int]:
        return pool - nbrs[v] - {v}

    def bk(r: list[int], p: set[int], x: set[int]):
        if not p and not x:
            found.append(FeatureSet.of(r))
            if len(found) > cap:
                raise EnumerationLimitError("max-independent", cap)
            return
        pivot = max(sorted(p | x), key=lambda u: len(non_nbrs(u, p)))
        for v in sorted(p - non_nbrs(pivot, p)):
            bk(r + [v], non_nbrs(v, p), non_nbrs(v, x))
            p.discard(v)
            x.add(v)

    if snap.vertices:
        bk([], set(snap.vertices), set())
    yield from sorted(found)


# --------------------------------------------------------------- matchings

def _is_matching(snap: Snapshot, x: FeatureSet) -> bool:
    if x.vertices or not x.edges:
        return False
    if not set(x.edges) <= snap.edge_ids:
        return False
    covered: set[int] = set()
    for eid in x.edges:
        e = snap.graph.edges[eid]
        if e.u in covered or e.v in covered:
            return False
        covered.update((e.u, e.v))
    return True


def _matchings(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
    edges = sorted(snap.edges, key=lambda e: e.id)

    def rec(start: int, chosen: tuple[int, ...], used: frozenset[int]):
        for j in range(start, len(edges)):
            e = edges[j]
            if e.u in used or e.v in used:
                continue
            grown = chosen + (e.id,)
            yield FeatureSet((), grown)
            yield from rec(j + 1, grown, used | {e.u, e.v})

    yield from rec(0, (), frozenset())


def _maximal_matchings(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
    edges = sorted(snap.edges, key=lambda e: e.id)
    n = len(edges)
    # last index of an edge incident to each vertex, for pruning skipped edges
    last: dict[int, int] = {}
    for j, e in enumerate(edges):
        last[e.u] = j
        last[e.v] = j

    def rec(j: int, chosen: tuple[int, ...], used: frozenset[int], skipped: tuple[int, ...]):
        # every skipped edge must end up blocked by a chosen one
        for k in skipped:
            s = edges[k]
            if s.u not in used and s.v not in used and last[s.u] < j and last[s.v] < j:
                return
        if j == n:
            if chosen and all(edges[k].u in used or edges[k].v in used for k in skipped):
                yield FeatureSet((), tuple(sorted(chosen)))
            return
        e = edges[j]
        if e.u not in used and e.v not in used:
            yield from rec(j + 1, chosen + (e.id,), used | {e.u, e.v}, skipped)
            yield from rec(j + 1, chosen, used, skipped + (j,))
        else:
            yield from rec(j + 1, chosen, used, skipped)

    yield from rec(0, (), frozenset(), ())


# ---------------------------------------------------------- Eulerian sets

def _induced_edge_count(snap: Snapshot, vs: set[int]) -> dict[int, int]:
    nbrs = snap.neighbours
    return {v: len(nbrs[v] & vs) for v in vs}


def _is_connected(snap: Snapshot, vs: set[int]) -> bool:
    if not vs:
        return False
    nbrs = snap.neighbours
    start = min(vs)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in nbrs[v] & vs:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == vs


def _is_eulerian_set(snap: Snapshot, x: FeatureSet) -> bool:
    if x.edges or not x.vertices:
        return False
    vs = set(x.vertices)
    if not vs <= snap.vertices:
        return False
    degs = _induced_edge_count(snap, vs)
    if sum(degs.values()) == 0:
        return False
    return all(d % 2 == 0 for d in degs.values()) and _is_connected(snap, vs)


def _connected_vertex_sets(snap: Snapshot, cap: int, name: str) -> Iterator[frozenset[int]]:
    """Every connected vertex set exactly once (ESU-style extension)."""
    nbrs = snap.neighbours
    count = 0

    def extend(sub: frozenset[int], ext: list[int], root: int, closed: frozenset[int]):
        nonlocal count
        count += 1
        if count > cap:
            raise EnumerationLimitError(name, cap)
        yield sub
        ext = sorted(ext)
        while ext:
            w = ext.pop(0)
            excl = [u for u in nbrs[w] if u > root and u not in closed]
            yield from extend(sub | {w}, sorted(set(ext) | set(excl)), root, closed | nbrs[w] | {w})

    for v in sorted(snap.vertices):
        yield from extend(frozenset([v]), [u for u in nbrs[v] if u > v], v, nbrs[v] | {v})


def _maximal_only(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    ordered = sorted(set(sets), key=lambda s: (-len(s), sorted(s)))
    kept: list[frozenset[int]] = []
    for s in ordered:
        if not any(s < k for k in kept):
            kept.append(s)
    return kept


def _eulerian_sets(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
    nbrs = snap.neighbours
    candidates = []
    for vs in _connected_vertex_sets(snap, cap, "eulerian"):
        if len(vs) < 3:
            continue
        if all(len(nbrs[v] & vs) % 2 == 0 for v in vs):
            candidates.append(vs)
    yield from sorted(FeatureSet.of(s) for s in _maximal_only(candidates))


# ----------------------------------------------------------------- kernels

def _is_kernel(snap: Snapshot, x: FeatureSet) -> bool:
    if x.edges or not x.vertices:
        return False
    vs = set(x.vertices)
    if not vs <= snap.vertices:
        return False
    nbrs = snap.neighbours
    if any(nbrs[v] & vs for v in vs):
        return False
    out = snap.out_neighbours
    return all(out[w] & vs for w in snap.vertices - vs)


def _kernels(snap: Snapshot, cap: int) -> Iterator[FeatureSet]:
    order = sorted(snap.vertices)
    pos = {v: i for i, v in enumerate(order)}
    nbrs = snap.neighbours
    out = snap.out_neighbours
    n = len(order)

    def rec(i: int, chosen: frozenset[int], blocked: frozenset[int], excluded: tuple[int, ...]):
        # an excluded vertex needs an out-neighbour that is, or may still become, chosen
        for w in excluded:
            if not any(u in chosen or (pos[u] >= i and u not in blocked) for u in out[w]):
                return
        if i == n:
            if chosen and all(out[w] & chosen for w in excluded):
                yield FeatureSet(tuple(sorted(chosen)))
            return
        v = order[i]
        if v not in blocked:
            yield from rec(i + 1, chosen | {v}, blocked | nbrs[v], excluded)
        yield from rec(i + 1, chosen, blocked, excluded + (v,))

    yield from rec(0, frozenset(), frozenset(), ())


# ---------------------------------------------------------------- registry

def _independent() -> Feature:
    return Feature("independent", "vertex", _independent_sets, _is_independent, monotone=True)


def _max_independent() -> Feature:
    return Feature("max-independent", "vertex", _maximal_independent_sets, _is_independent, maximal=True)


def _matching() -> Feature:
    return Feature("matching", "edge", _matchings, _is_matching, monotone=True)


def _max_matching() -> Feature:
    return Feature("max-matching", "edge", _maximal_matchings, _is_matching, maximal=True)


def _eulerian() -> Feature:
    return Feature("eulerian", "vertex", _eulerian_sets, _is_eulerian_set, maximal=True)


def _kernel() -> Feature:
    return Feature("kernel", "vertex", _kernels, _is_kernel, directed=True)


FEATURES: dict[str, Feature] = {
    "hub": hub_feature(),
    "whub": weighted_hub_feature(),
    "eulerian": _eulerian(),
    "independent": _independent(),
    "max-independent": _max_independent(),
    "matching": _matching(),
    "max-matching": _max_matching(),
    "dhub": digraph_hub_feature(),
    "kernel": _kernel(),
}

GRAPH_FEATURES = tuple(name for name, f in FEATURES.items() if not f.directed)
DIGRAPH_FEATURES = tuple(name for name, f in FEATURES.items() if f.directed)


def get_feature(name: str | Feature, *, strict: bool | None = None, neighbours: str | None = None) -> Feature:
    """Look up a built-in feature, optionally overriding hub options."""
    if isinstance(name, Feature):
        return name
    if name not in FEATURES:
        raise KeyError(f"unknown feature {name!r}; choose from {', '.join(FEATURES)}")
    if name == "hub" and strict is not None:
        return hub_feature(strict)
    if name == "whub" and strict is not None:
        return weighted_hub_feature(strict)
    if name == "dhub" and (strict is not None or neighbours is not None):
        return digraph_hub_feature(
            strict=False if strict is None else strict,
            neighbours=neighbours or "all",
        )
    return FEATURES[name]


def enumerate_fsets(feature: Feature | str, snap: Snapshot, max_sets: int | None = None) -> list[FeatureSet]:
    """All F-sets of a snapshot, sorted canonically.

    Raises :class:`EnumerationLimitError` instead of truncating when more
    than ``max_sets`` sets (default: ``GRAPE_MAX_SETS`` or 10**6) appear.
    """
    feature = get_feature(feature)
    feature.check_graph(snap.graph)
    cap = default_max_sets() if max_sets is None else max_sets
    out = []
    for x in feature.enumerator(snap, cap):
        out.append(x)
        if len(out) > cap:
            raise EnumerationLimitError(feature.name, cap)
    out.sort()
    return out


def brute_force_fsets(feature: Feature | str, snap: Snapshot, max_universe: int = 22) -> list[FeatureSet]:
    """F-sets by evaluating the defining predicate on every subset.

    Exponential; only meant as a reference on small snapshots.
    """
    feature = get_feature(feature)
    feature.check_graph(snap.graph)
    if feature.kind == "edge":
        universe = sorted(snap.edge_ids)
        make = lambda c: FeatureSet((), c)  # noqa: E731
        # a matching has at most |V|/2 edges
        top = len(snap.vertices) // 2
    else:
        universe = sorted(snap.vertices)
        make = lambda c: FeatureSet(c)  # noqa: E731
        top = len(universe)
    if len(universe) > max_universe:
        raise SizeLimitError(f"brute force over {len(universe)} elements is too large")
    good = [
        make(c)
        for k in range(1, top + 1)
        for c in combinations(universe, k)
        if feature.predicate(snap, make(c))
    ]
    if feature.maximal:
        good = [x for x in good if not any(x != y and x.issubset(y) for y in good)]
    return sorted(good)
