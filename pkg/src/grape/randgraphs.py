"""Seeded random (di)graphs and weight perturbations for searches and tests."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import WeightedDigraph, WeightedGraph

__all__ = ["random_graph", "random_digraph", "tournament", "perturb"]


def _labels(n: int) -> list[str]:
    return [chr(ord("a") + i) if n <= 26 else f"v{i}" for i in range(n)]


def _weights(rng: random.Random, m: int, distinct: bool, wmax: int) -> list[float]:
    if distinct:
        ws = list(range(1, m + 1))
        rng.shuffle(ws)
        return [float(w) for w in ws]
    return [float(rng.randint(1, wmax)) for _ in range(m)]


def random_graph(
    rng: random.Random,
    n: int,
    p: float = 0.5,
    distinct: bool = True,
    wmax: int = 12,
    min_edges: int = 1,
) -> WeightedGraph:
    """G(n, p) with either a random permutation of 1..m or integers in 1..wmax as weights."""
    while True:
        pairs = [pr for pr in combinations(range(n), 2) if rng.random() < p]
        if len(pairs) >= min_edges:
            break
    ws = _weights(rng, len(pairs), distinct, wmax)
    return WeightedGraph(_labels(n), [(a, b, w) for (a, b), w in zip(pairs, ws)])


def random_digraph(
    rng: random.Random,
    n: int,
    p: float = 0.5,
    distinct: bool = True,
    wmax: int = 12,
    antiparallel: float = 0.1,
    min_edges: int = 1,
) -> WeightedDigraph:
    """Random orientation of G(n, p); each pair gets both arcs with probability ``antiparallel``."""
    while True:
        arcs = []
        for a, b in combinations(range(n), 2):
            if rng.random() >= p:
                continue
            if rng.random() < antiparallel:
                arcs += [(a, b), (b, a)]
            else:
                arcs.append((a, b) if rng.random() < 0.5 else (b, a))
        if len(arcs) >= min_edges:
            break
    ws = _weights(rng, len(arcs), distinct, wmax)
    return WeightedDigraph(_labels(n), [(a, b, w) for (a, b), w in zip(arcs, ws)])


def tournament(bits: str, weights=(1.0, 2.0, 3.0)) -> WeightedDigraph:
    """Weighted tournament on ``a, b, c``.

    Pairs ``ab``, ``bc``, ``ac`` carry ``weights`` in that order; bit ``i``
    set to ``1`` reverses the i-th pair's arc.
    """
    pairs = [(0, 1), (1, 2), (0, 2)]
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise ValueError(f"expected a 3-bit string, got {bits!r}")
    arcs = [((a, b) if bit == "0" else (b, a)) + (w,) for (a, b), bit, w in zip(pairs, bits, weights)]
    return WeightedDigraph(["a", "b", "c"], arcs, name=f"T{bits}")


def perturb(rng: random.Random, g: WeightedGraph, h: int) -> WeightedGraph:
    """Same graph with each integer weight moved by an integer in ``[-h, h]``."""
    return g.with_weights([w + rng.randint(-h, h) for w in g.weights])
