"""Persistent hubs, hub timelines and the search for unbalanced generators."""

from __future__ import annotations

import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .diagrams import diagonal_gaps, select_above_gap
from .features import Feature, get_feature
from .graph import WeightedGraph
from .persistence import (
    RANGING,
    STEADY,
    PersistenceDiagram,
    brute_force_rho,
    brute_force_sigma,
    persistence_diagram,
)
from .randgraphs import perturb, random_digraph, random_graph

__all__ = [
    "HubEntry",
    "PersistentHubReport",
    "persistent_hubs",
    "HubTimeline",
    "track_hubs",
    "Counterexample",
    "search_unbalanced",
    "count_grid",
]

HUB_FEATURES = ("hub", "whub", "dhub")


@dataclass(frozen=True)
class HubEntry:
    label: str
    birth: float
    death: float

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistentHubReport:
    feature: str
    mode: str
    gap_index: int | None
    n_gaps: int
    threshold: float | None
    selected: tuple[HubEntry, ...]
    diagram: PersistenceDiagram = field(repr=False)

    def names(self) -> list[str]:
        return sorted({e.label for e in self.selected})

    def to_dict(self) -> dict:
        return {
            "feature": self.feature,
            "mode": self.mode,
            "gap_index": self.gap_index,
            "n_gaps": self.n_gaps,
            "threshold": self.threshold,
            "hubs": self.names(),
            "selected": [
                {"label": e.label, "birth": e.birth, "death": e.death, "persistence": e.persistence}
                for e in self.selected
            ],
        }


def _check_hub_feature(feature: Feature) -> None:
    if feature.name not in HUB_FEATURES:
        raise ValueError(f"{feature.name!r} is not a hub feature ({', '.join(HUB_FEATURES)})")


def persistent_hubs(
    g: WeightedGraph,
    feature: Feature | str = "hub",
    mode: str = RANGING,
    gap_index: int | str = 1,
    max_sets: int | None = None,
) -> PersistentHubReport:
    """Hubs witnessing the cornerpoints above the ``gap_index`` widest diagonal gaps.

    ``gap_index="all"`` uses every gap, i.e. keeps every cornerpoint.  A
    diagram with only cornerpoints at infinity has no gaps; those
    cornerpoints are then reported as they are.
    """
    feature = get_feature(feature)
    _check_hub_feature(feature)
    d = persistence_diagram(g, feature, mode, max_sets)
    gaps = diagonal_gaps(d)
    if not gaps:
        chosen, k, threshold = d.at_infinity(), None, None
    else:
        k = len(gaps) if gap_index == "all" else int(gap_index)
        sel = select_above_gap(d, k)
        chosen, threshold = list(sel.selected), sel.threshold
    entries = [
        HubEntry(w[0], c.birth, c.death)
        for c in chosen
        for w in c.witnesses
    ]
    entries.sort(key=lambda e: (-e.persistence, e.label, e.birth))
    return PersistentHubReport(feature.name, mode, k, len(gaps), threshold, tuple(entries), d)


@dataclass(frozen=True)
class HubTimeline:
    """Top hubs per snapshot; a vertex without hub activity in a snapshot has no entry."""

    labels: tuple[str, ...]
    rankings: tuple[tuple[tuple[str, float], ...], ...]

    def persistence_of(self, vertex: str) -> list[float | None]:
        return [dict(r).get(vertex) for r in self.rankings]

    def to_dict(self) -> dict:
        return {
            "snapshots": [
                {"label": lab, "hubs": [{"label": v, "persistence": p} for v, p in r]}
                for lab, r in zip(self.labels, self.rankings)
            ]
        }


def hub_ranking(d: PersistenceDiagram) -> list[tuple[str, float]]:
    """Vertices by their longest hub cornerpoint, longest first."""
    best: dict[str, float] = {}
    for c in d.cornerpoints:
        for w in c.witnesses:
            best[w[0]] = max(best.get(w[0], -math.inf), c.persistence)
    return sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))


def track_hubs(
    snapshots: Sequence[tuple[str, WeightedGraph]],
    feature: Feature | str = "hub",
    mode: str = RANGING,
    top: int = 6,
    max_sets: int | None = None,
) -> HubTimeline:
    if not snapshots:
        raise ValueError("need at least one snapshot")
    feature = get_feature(feature)
    _check_hub_feature(feature)
    rankings = []
    for _, g in snapshots:
        d = persistence_diagram(g, feature, mode, max_sets)
        rankings.append(tuple(hub_ranking(d)[:top]))
    return HubTimeline(tuple(lab for lab, _ in snapshots), tuple(rankings))


# ------------------------------------------------------ unbalancedness search

@dataclass(frozen=True)
class Counterexample:
    """Weightings ``f``, ``g`` of one graph with ``sup|f - g| <= h`` and
    ``p_f(u - h, v + h) > p_g(u, v)``."""

    feature: str
    mode: str
    f: WeightedGraph
    g: WeightedGraph
    h: float
    u: float
    v: float
    value_f: int
    value_g: int
    trial: int

    def to_dict(self) -> dict:
        edges = [
            {"edge": self.f.edge_label(e), "f": e.weight, "g": self.g.edges[e.id].weight}
            for e in self.f.edges
        ]
        return {
            "feature": self.feature,
            "mode": self.mode,
            "h": self.h,
            "u": self.u,
            "v": self.v,
            "p_f(u-h,v+h)": self.value_f,
            "p_g(u,v)": self.value_g,
            "trial": self.trial,
            "edges": edges,
        }


def count_grid(d: PersistenceDiagram, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """``out[i, j]`` = number of cornerpoints with ``birth <= us[i]`` and ``death > vs[j]``."""
    if not d.cornerpoints:
        return np.zeros((len(us), len(vs)), dtype=np.int64)
    b = np.array([c.birth for c in d.cornerpoints])
    dd = np.array([c.death for c in d.cornerpoints])
    m = np.array([c.multiplicity for c in d.cornerpoints])
    born = (b[None, :] <= us[:, None]).astype(np.int64) * m[None, :]
    alive = (dd[None, :] > vs[:, None]).astype(np.int64)
    return born @ alive.T


def query_grid(*graphs: WeightedGraph) -> np.ndarray:
    """Critical levels of all graphs, midpoints between them and one value below."""
    levels = sorted({w for g in graphs for w in g.weights})
    if not levels:
        return np.array([0.0])
    mids = [(a + b) / 2 for a, b in zip(levels, levels[1:])]
    return np.array(sorted(set(levels) | set(mids) | {levels[0] - 1.0, levels[-1] + 1.0}))


def _find_violation(df: PersistenceDiagram, dg: PersistenceDiagram, grid: np.ndarray, h: float):
    pf = count_grid(df, grid - h, grid + h)
    pg = count_grid(dg, grid, grid)
    upper = np.triu(np.ones((len(grid), len(grid)), dtype=bool), k=1)
    bad = (pf > pg) & upper
    if not bad.any():
        return None
    i, j = map(int, np.argwhere(bad)[0])
    return float(grid[i]), float(grid[j]), int(pf[i, j]), int(pg[i, j])


def search_unbalanced(
    feature: Feature | str,
    mode: str = STEADY,
    max_vertices: int = 7,
    trials: int = 10**5,
    seed: int = 0,
    h_values: Sequence[int] = (1, 2),
    max_weight: int = 12,
) -> Counterexample | None:
    """Random search for a pair of close weightings breaking the balance inequality.

    Graphs have at most ``max_vertices`` vertices and integer weights in
    ``1..max_weight``; the second weighting moves each weight by at most
    ``h``.  Hits are re-counted with the brute-force oracle before being
    returned.  Returns ``None`` when the trial budget runs out.
    """
    feature = get_feature(feature)
    if mode not in (STEADY, RANGING):
        raise ValueError(f"mode must be 'steady' or 'ranging', not {mode!r}")
    if max_vertices > 7:
        raise ValueError("search is limited to graphs with at most 7 vertices")
    oracle = brute_force_sigma if mode == STEADY else brute_force_rho
    rng = random.Random(seed)
    for trial in range(trials):
        n = rng.randint(2, max_vertices)
        p = rng.uniform(0.3, 1.0)
        if feature.directed:
            base = random_digraph(rng, n, p, distinct=False, wmax=max_weight)
        else:
            base = random_graph(rng, n, p, distinct=False, wmax=max_weight)
        h = rng.choice(list(h_values))
        other = perturb(rng, base, h)
        d_base = persistence_diagram(base, feature, mode)
        d_other = persistence_diagram(other, feature, mode)
        grid = query_grid(base, other)
        for f, g, df, dg in ((base, other, d_base, d_other), (other, base, d_other, d_base)):
            hit = _find_violation(df, dg, grid, h)
            if hit is None:
                continue
            u, v, vf, vg = hit
            of = oracle(feature, f, u - h, v + h)
            og = oracle(feature, g, u, v)
            if (of, og) != (vf, vg):
                raise RuntimeError(
                    f"diagram counts ({vf}, {vg}) disagree with the oracle ({of}, {og})"
                )
            return Counterexample(feature.name, mode, f, g, float(h), u, v, of, og, trial)
    return None
