"""Steady and ranging persistence diagrams of a feature along a filtration.

For every set that is an F-set at some critical level we record the union
of half-open level intervals on which it stays one (its activity).  A
*steady* diagram has one cornerpoint per maximal interval; a *ranging*
diagram has one per set, spanning from its first birth to its last death.
Counting cornerpoints with ``birth <= u`` and ``death > v`` then gives the
number of steady (resp. ranging) sets at ``(u, v)``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .features import Feature, FeatureSet, enumerate_fsets, get_feature
from .graph import Filtration, Snapshot, WeightedGraph, build_filtration

__all__ = [
    "ActivityProfile",
    "Cornerpoint",
    "PersistenceDiagram",
    "compute_activities",
    "steady_diagram",
    "ranging_diagram",
    "persistence_diagram",
    "sigma_at",
    "rho_at",
    "brute_force_sigma",
    "brute_force_rho",
]

Interval = tuple[float, float]
Witness = tuple[str, ...]

STEADY = "steady"
RANGING = "ranging"
MODES = (STEADY, RANGING)


@dataclass(frozen=True)
class ActivityProfile:
    """Levels at which one set has the feature, as disjoint maximal intervals ``[a, b)``."""

    fset: FeatureSet
    intervals: tuple[Interval, ...]
    labels: Witness = ()

    def __post_init__(self):
        prev = -math.inf
        for a, b in self.intervals:
            if not a < b:
                raise ValueError(f"empty interval [{a}, {b})")
            if a <= prev:
                raise ValueError("intervals must be sorted, disjoint and non-adjacent")
            prev = b

    @property
    def birth(self) -> float:
        return self.intervals[0][0]

    @property
    def death(self) -> float:
        return self.intervals[-1][1]

    def active_at(self, w: float) -> bool:
        return any(a <= w < b for a, b in self.intervals)


@dataclass(frozen=True, order=True)
class Cornerpoint:
    birth: float
    death: float
    multiplicity: int = 1
    witnesses: tuple[Witness, ...] = ()

    def __post_init__(self):
        if not self.birth < self.death:
            raise ValueError(f"cornerpoint needs birth < death, got ({self.birth}, {self.death})")
        if math.isinf(self.birth) or math.isnan(self.birth) or math.isnan(self.death):
            raise ValueError("cornerpoint birth must be finite")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.witnesses and len(self.witnesses) != self.multiplicity:
            raise ValueError("multiplicity must equal the number of witnesses")

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def at_infinity(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Finite multiset of cornerpoints; the diagonal is implicit.

    Cornerpoints are sorted by ``(birth, death)`` and no two share the same
    coordinates.  Use :meth:`build` to merge raw points.
    """

    cornerpoints: tuple[Cornerpoint, ...] = ()
    feature: str = ""
    mode: str = ""
    source: str = ""

    def __post_init__(self):
        keys = [(c.birth, c.death) for c in self.cornerpoints]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ValueError("cornerpoints must be sorted with distinct coordinates; use build()")

    @classmethod
    def build(cls, points: Iterable[Cornerpoint | tuple], **meta) -> "PersistenceDiagram":
        """Merge cornerpoints with equal coordinates into multiplicities.

        Accepts :class:`Cornerpoint` objects or ``(birth, death)`` /
        ``(birth, death, multiplicity)`` tuples.
        """
        mult: dict[Interval, int] = defaultdict(int)
        wit: dict[Interval, list[Witness]] = defaultdict(list)
        for p in points:
            if not isinstance(p, Cornerpoint):
                p = Cornerpoint(float(p[0]), float(p[1]), int(p[2]) if len(p) > 2 else 1)
            key = (p.birth, p.death)
            mult[key] += p.multiplicity
            wit[key].extend(p.witnesses)
        cps = []
        for key in sorted(mult):
            ws = tuple(wit[key])
            if ws and len(ws) != mult[key]:
                raise ValueError("cannot merge cornerpoints with and without witnesses")
            cps.append(Cornerpoint(key[0], key[1], mult[key], ws))
        return cls(tuple(cps), **meta)

    def __len__(self) -> int:
        return len(self.cornerpoints)

    def __iter__(self):
        return iter(self.cornerpoints)

    @property
    def total_multiplicity(self) -> int:
        return sum(c.multiplicity for c in self.cornerpoints)

    def points(self) -> tuple[tuple[float, float, int], ...]:
        """Coordinates with multiplicity, ignoring witnesses and metadata."""
        return tuple((c.birth, c.death, c.multiplicity) for c in self.cornerpoints)

    def same_points(self, other: "PersistenceDiagram") -> bool:
        return self.points() == other.points()

    def proper(self) -> list[Cornerpoint]:
        return [c for c in self.cornerpoints if not c.at_infinity]

    def at_infinity(self) -> list[Cornerpoint]:
        return [c for c in self.cornerpoints if c.at_infinity]

    def expanded(self) -> list[tuple[float, float]]:
        """One ``(birth, death)`` pair per unit of multiplicity."""
        return [(c.birth, c.death) for c in self.cornerpoints for _ in range(c.multiplicity)]


# ------------------------------------------------------------------ engine

def _level_sets(feature: Feature, filt: Filtration, max_sets: int | None) -> list[list[FeatureSet]]:
    return [enumerate_fsets(feature, snap, max_sets) for snap in filt.snapshots]


def compute_activities(
    feature: Feature | str,
    filt: Filtration | WeightedGraph,
    max_sets: int | None = None,
) -> list[ActivityProfile]:
    """Activity profile of every set that is an F-set at some critical level."""
    feature = get_feature(feature)
    if isinstance(filt, WeightedGraph):
        filt = build_filtration(filt)
    feature.check_graph(filt.graph)
    levels = filt.critical_levels
    active: dict[FeatureSet, list[int]] = defaultdict(list)
    for i, sets in enumerate(_level_sets(feature, filt, max_sets)):
        for x in sets:
            active[x].append(i)

    def end(j: int) -> float:
        return levels[j] if j < len(levels) else math.inf

    profiles = []
    for x in sorted(active):
        runs: list[list[int]] = []
        for i in active[x]:
            if runs and runs[-1][1] == i:
                runs[-1][1] = i + 1
            else:
                runs.append([i, i + 1])
        intervals = tuple((levels[a], end(b)) for a, b in runs)
        profiles.append(ActivityProfile(x, intervals, x.labels(filt.graph)))
    return profiles


def steady_diagram(activities: Sequence[ActivityProfile], **meta) -> PersistenceDiagram:
    points = [
        Cornerpoint(a, b, 1, (p.labels,))
        for p in activities
        for a, b in p.intervals
    ]
    meta.setdefault("mode", STEADY)
    return PersistenceDiagram.build(points, **meta)


def ranging_diagram(activities: Sequence[ActivityProfile], **meta) -> PersistenceDiagram:
    points = [Cornerpoint(p.birth, p.death, 1, (p.labels,)) for p in activities]
    meta.setdefault("mode", RANGING)
    return PersistenceDiagram.build(points, **meta)


def persistence_diagram(
    graph: WeightedGraph,
    feature: Feature | str,
    mode: str = STEADY,
    max_sets: int | None = None,
) -> PersistenceDiagram:
    """Steady or ranging diagram of ``feature`` on ``graph``."""
    if mode not in MODES:
        raise ValueError(f"mode must be 'steady' or 'ranging', not {mode!r}")
    feature = get_feature(feature)
    acts = compute_activities(feature, graph, max_sets)
    build = steady_diagram if mode == STEADY else ranging_diagram
    return build(acts, feature=feature.name, mode=mode, source=graph.name)


def _count(d: PersistenceDiagram, u: float, v: float) -> int:
    if not u < v:
        raise ValueError(f"need u < v, got u={u}, v={v}")
    return sum(c.multiplicity for c in d.cornerpoints if c.birth <= u and c.death > v)


def sigma_at(d: PersistenceDiagram, u: float, v: float) -> int:
    """Number of steady sets at ``(u, v)`` read off a steady diagram."""
    return _count(d, u, v)


def rho_at(d: PersistenceDiagram, u: float, v: float) -> int:
    """Number of ranging sets at ``(u, v)`` read off a ranging diagram."""
    return _count(d, u, v)


# ------------------------------------------------------------------ oracle

class _SnapshotSets:
    """F-sets per snapshot, keyed by how many edges the snapshot holds."""

    def __init__(self, feature: Feature, filt: Filtration, enumerate: Callable[[Feature, Snapshot], list]):
        self.feature = feature
        self.filt = filt
        self.enumerate = enumerate
        self._cache: dict[int, frozenset[FeatureSet]] = {}

    def at(self, w: float) -> frozenset[FeatureSet]:
        snap = self.filt.snapshot_at(w)
        key = len(snap.edges)
        if key not in self._cache:
            self._cache[key] = frozenset(self.enumerate(self.feature, snap))
        return self._cache[key]


def _oracle(feature, filt, enumerate):
    feature = get_feature(feature)
    if isinstance(filt, WeightedGraph):
        filt = build_filtration(filt)
    feature.check_graph(filt.graph)
    return _SnapshotSets(feature, filt, enumerate)


def brute_force_sigma(
    feature: Feature | str,
    filt: Filtration | WeightedGraph,
    u: float,
    v: float,
    enumerate: Callable = enumerate_fsets,
    sets: _SnapshotSets | None = None,
) -> int:
    """Count sets that are F-sets at every level of ``[u, v]``, straight from the definition.

    Snapshots only change at critical levels, so checking ``u``, ``v`` and
    the critical levels in between covers the whole closed interval.
    """
    if not u < v:
        raise ValueError(f"need u < v, got u={u}, v={v}")
    sets = sets or _oracle(feature, filt, enumerate)
    probe = [u, v] + [w for w in sets.filt.critical_levels if u < w < v]
    steady = set(sets.at(u))
    for w in probe[1:]:
        steady &= sets.at(w)
    return len(steady)


def brute_force_rho(
    feature: Feature | str,
    filt: Filtration | WeightedGraph,
    u: float,
    v: float,
    enumerate: Callable = enumerate_fsets,
    sets: _SnapshotSets | None = None,
) -> int:
    """Count sets that are F-sets at some level ``<= u`` and at some level ``>= v``."""
    if not u < v:
        raise ValueError(f"need u < v, got u={u}, v={v}")
    sets = sets or _oracle(feature, filt, enumerate)
    levels = sets.filt.critical_levels
    before: set[FeatureSet] = set(sets.at(u))
    for w in levels:
        if w <= u:
            before |= sets.at(w)
    after: set[FeatureSet] = set(sets.at(v))
    for w in levels:
        if w >= v:
            after |= sets.at(w)
    return len(before & after)


def oracle_sets(feature: Feature | str, filt: Filtration | WeightedGraph, enumerate: Callable = enumerate_fsets) -> _SnapshotSets:
    """Shared per-snapshot cache for repeated brute-force queries on one filtration."""
    return _oracle(feature, filt, enumerate)
