"""Weighted simple graphs and digraphs, their edge-weight filtrations and snapshots.

A weighted (di)graph carries one finite real weight per edge (arc).  The
filtration at level ``u`` is the subgraph induced by the edges of weight at
most ``u``: it contains exactly those edges and their endpoints, so no
snapshot ever has an isolated vertex.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import GraphError

__all__ = [
    "Edge",
    "WeightedGraph",
    "WeightedDigraph",
    "Snapshot",
    "Filtration",
    "build_filtration",
    "snapshot_at",
    "vertex_entry_level",
]


@dataclass(frozen=True, order=True)
class Edge:
    """An edge ``{u, v}`` (``u < v``) or an arc ``u -> v`` with its weight."""

    id: int
    u: int
    v: int
    weight: float

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


class WeightedGraph:
    """Immutable simple undirected graph with real edge weights.

    Vertices are the integers ``0 .. n-1``; ``labels[i]`` names vertex ``i``.
    Edge ids are the positions in ``edges``.
    """

    directed = False

    def __init__(
        self,
        labels: Sequence[str],
        edges: Iterable[tuple[int, int, float]],
        name: str = "",
    ):
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("vertex labels must be unique")
        self.name = name
        n = len(self.labels)
        built: list[Edge] = []
        seen: set[tuple[int, int]] = set()
        for eid, (a, b, w) in enumerate(edges):
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge {eid} has an endpoint outside 0..{n - 1}")
            if a == b:
                raise GraphError(f"self-loop at vertex {self.labels[a]!r}")
            w = float(w)
            if not math.isfinite(w):
                raise GraphError(f"edge {eid} has non-finite weight {w!r}")
            key = self._key(a, b)
            if key in seen:
                raise GraphError(
                    f"parallel edge between {self.labels[a]!r} and {self.labels[b]!r}"
                )
            seen.add(key)
            u, v = key
            built.append(Edge(eid, u, v, w))
        self.edges: tuple[Edge, ...] = tuple(built)

    @staticmethod
    def _key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, float]],
        vertices: Iterable[str] = (),
        name: str = "",
    ):
        """Build from labelled triples; ids follow first appearance.

        ``vertices`` may list extra (possibly isolated) vertices up front.
        """
        index: dict[str, int] = {}
        for lab in vertices:
            index.setdefault(str(lab), len(index))
        triples = []
        for a, b, w in edges:
            ia = index.setdefault(str(a), len(index))
            ib = index.setdefault(str(b), len(index))
            triples.append((ia, ib, w))
        return cls(list(index), triples, name=name)

    def __repr__(self) -> str:
        kind = type(self).__name__
        return f"<{kind} {self.name!r} |V|={self.n_vertices} |E|={self.n_edges}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.directed == other.directed
            and self.labels == other.labels
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.directed, self.labels, self.edges))

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(e.weight for e in self.edges)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def vertex(self, label: str) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def edge_label(self, e: Edge | int) -> str:
        if isinstance(e, int):
            e = self.edges[e]
        sep = "->" if self.directed else "-"
        return f"{self.labels[e.u]}{sep}{self.labels[e.v]}"

    def with_weights(self, weights: Sequence[float] | Mapping[int, float], name: str | None = None):
        """Same vertices and edges, new weights (indexed by edge id)."""
        if isinstance(weights, Mapping):
            ws = [weights.get(e.id, e.weight) for e in self.edges]
        else:
            ws = list(weights)
            if len(ws) != self.n_edges:
                raise GraphError(f"expected {self.n_edges} weights, got {len(ws)}")
        return type(self)(
            self.labels,
            [(e.u, e.v, w) for e, w in zip(self.edges, ws)],
            name=self.name if name is None else name,
        )

    def edge_induced(self, edge_ids: Iterable[int], level: float = math.inf) -> "Snapshot":
        """Subgraph induced by a set of edge ids."""
        ids = sorted(set(edge_ids))
        return Snapshot(self, tuple(self.edges[i] for i in ids), level)

    def full(self) -> "Snapshot":
        return Snapshot(self, self.edges, math.inf)


class WeightedDigraph(WeightedGraph):
    """Simple digraph: at most one arc per ordered pair; antiparallel arcs allowed."""

    directed = True

    @staticmethod
    def _key(a: int, b: int) -> tuple[int, int]:
        return (a, b)


class Snapshot:
    """An edge-induced subgraph of a weighted (di)graph."""

    def __init__(self, graph: WeightedGraph, edges: tuple[Edge, ...], level: float):
        self.graph = graph
        self.edges = edges
        self.level = level

    def __repr__(self) -> str:
        return f"<Snapshot level={self.level} |V|={len(self.vertices)} |E|={len(self.edges)}>"

    @property
    def directed(self) -> bool:
        return self.graph.directed

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(x for e in self.edges for x in (e.u, e.v))

    @cached_property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(e.id for e in self.edges)

    @cached_property
    def neighbours(self) -> dict[int, frozenset[int]]:
        """Adjacency in the underlying undirected graph."""
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def out_neighbours(self) -> dict[int, frozenset[int]]:
        if not self.directed:
            return self.neighbours
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.u].add(e.v)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def in_neighbours(self) -> dict[int, frozenset[int]]:
        if not self.directed:
            return self.neighbours
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.v].add(e.u)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def incident(self) -> dict[int, tuple[Edge, ...]]:
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append(e)
            inc[e.v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def degree(self, v: int) -> int:
        return len(self.incident.get(v, ()))

    def out_degree(self, v: int) -> int:
        if not self.directed:
            return self.degree(v)
        return sum(1 for e in self.incident.get(v, ()) if e.u == v)


class Filtration:
    """Sublevel filtration of a weighted (di)graph by edge weight.

    ``critical_levels`` are the distinct weights in increasing order.  The
    snapshot at ``u`` equals the snapshot at the largest critical level
    ``<= u``, and is empty below the first one.
    """

    def __init__(self, graph: WeightedGraph):
        self.graph = graph
        self._edges = tuple(sorted(graph.edges, key=lambda e: (e.weight, e.id)))
        self._weights = [e.weight for e in self._edges]
        self.critical_levels: tuple[float, ...] = tuple(sorted(set(self._weights)))

    def __repr__(self) -> str:
        return f"<Filtration of {self.graph!r}: {len(self.critical_levels)} levels>"

    def __len__(self) -> int:
        return len(self.critical_levels)

    def snapshot_at(self, u: float) -> Snapshot:
        k = bisect_right(self._weights, u)
        return Snapshot(self.graph, self._edges[:k], u)

    @cached_property
    def snapshots(self) -> tuple[Snapshot, ...]:
        """One snapshot per critical level, in order."""
        return tuple(self.snapshot_at(w) for w in self.critical_levels)

    def level_index(self, u: float) -> int:
        """Index of the largest critical level ``<= u``, or -1 below all of them."""
        return bisect_right(self.critical_levels, u) - 1


def build_filtration(g: WeightedGraph) -> Filtration:
    return Filtration(g)


def snapshot_at(filt: Filtration, u: float) -> Snapshot:
    return filt.snapshot_at(u)


def vertex_entry_level(g: WeightedGraph, v: int | str) -> float:
    """Level at which a vertex enters the filtration: its minimum incident weight.

    Isolated vertices never enter and get ``+inf``.
    """
    if isinstance(v, str):
        v = g.vertex(v)
    if not 0 <= v < g.n_vertices:
        raise KeyError(f"unknown vertex id {v}")
    return min((e.weight for e in g.edges if v in (e.u, e.v)), default=math.inf)
