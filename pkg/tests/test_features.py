import random
from itertools import combinations

import pytest

from grape.errors import EnumerationLimitError
from grape.features import (
    DIGRAPH_FEATURES,
    FEATURES,
    GRAPH_FEATURES,
    FeatureSet,
    brute_force_fsets,
    default_max_sets,
    enumerate_fsets,
    get_feature,
)
from grape.randgraphs import random_digraph, random_graph

from conftest import digraph, graph


def names(g, sets):
    return sorted(tuple(x.labels(g)) for x in sets)


def fsets(name, g, **opts):
    return names(g, enumerate_fsets(get_feature(name, **opts), g.full()))


def test_registry_names():
    assert set(FEATURES) == {
        "hub", "whub", "eulerian", "independent", "max-independent",
        "matching", "max-matching", "dhub", "kernel",
    }
    assert set(DIGRAPH_FEATURES) == {"dhub", "kernel"}
    assert set(GRAPH_FEATURES) | set(DIGRAPH_FEATURES) == set(FEATURES)
    with pytest.raises(KeyError):
        get_feature("centrality")


def test_hub_on_star():
    g = graph(("c", "x", 1), ("c", "y", 2), ("c", "z", 3))
    assert fsets("hub", g) == [("c",)]


def test_hub_on_triangle_is_empty_when_strict():
    g = graph(("a", "b", 1), ("b", "c", 2), ("a", "c", 3))
    assert fsets("hub", g) == []
    assert fsets("hub", g, strict=False) == [("a",), ("b",), ("c",)]


def test_weighted_hub_uses_incident_weight_sums():
    # b has degree 2 but a heavy edge makes c the weighted hub
    g = graph(("a", "b", 1), ("b", "c", 2), ("c", "d", 10))
    assert fsets("hub", g) == []
    assert fsets("whub", g) == [("c",)]


def test_eulerian_on_triangle():
    g = graph(("a", "b", 1), ("b", "c", 2), ("a", "c", 3))
    assert fsets("eulerian", g) == [("a", "b", "c")]


def test_eulerian_keeps_maximal_sets_only():
    # bowtie: two triangles sharing c; the whole bowtie is Eulerian
    g = graph(("a", "b", 1), ("b", "c", 1), ("a", "c", 1), ("c", "d", 1), ("d", "e", 1), ("c", "e", 1))
    assert fsets("eulerian", g) == [("a", "b", "c", "d", "e")]


def test_eulerian_on_tree_is_empty():
    assert fsets("eulerian", graph(("a", "b", 1), ("b", "c", 2))) == []


def test_maximal_matching_on_path():
    g = graph(("a", "b", 1), ("b", "c", 2))
    assert fsets("max-matching", g) == [("a-b",), ("b-c",)]


def test_maximal_independent_on_triangle():
    g = graph(("a", "b", 1), ("b", "c", 2), ("a", "c", 3))
    assert fsets("max-independent", g) == [("a",), ("b",), ("c",)]


def test_independent_and_matching_counts_on_path4():
    g = graph(("a", "b", 1), ("b", "c", 1), ("c", "d", 1))
    # independent sets of P4 (nonempty): 4 singletons + ac, ad, bd
    assert len(fsets("independent", g)) == 7
    # matchings of P4 (nonempty): 3 singletons + {ab, cd}
    assert len(fsets("matching", g)) == 4


def test_digraph_hub_on_out_star():
    d = digraph(("a", "b", 1), ("a", "c", 2))
    assert fsets("dhub", d) == [("a",)]
    assert fsets("dhub", d, strict=True) == [("a",)]


def test_kernel_on_directed_cycle_is_empty():
    d = digraph(("a", "b", 1), ("b", "c", 2), ("c", "a", 3))
    assert fsets("kernel", d) == []


def test_kernel_on_transitive_tournament():
    d = digraph(("a", "b", 1), ("a", "c", 2), ("b", "c", 3))
    assert fsets("kernel", d) == [("c",)]


def test_kernel_independence_uses_underlying_graph():
    # a <-> b: neither {a} nor {b} is blocked by independence, {a, b} is
    d = digraph(("a", "b", 1), ("b", "a", 2))
    assert fsets("kernel", d) == [("a",), ("b",)]


def test_feature_rejects_wrong_graph_kind():
    with pytest.raises(ValueError):
        enumerate_fsets("kernel", graph(("a", "b", 1)).full())
    with pytest.raises(ValueError):
        enumerate_fsets("hub", digraph(("a", "b", 1)).full())


def test_enumeration_cap_raises(monkeypatch):
    g = graph(*[(a, b, 1) for a, b in combinations("abcdef", 2) if (a + b) not in ("ab", "cd", "ef")])
    with pytest.raises(EnumerationLimitError):
        enumerate_fsets("independent", g.full(), max_sets=2)
    monkeypatch.setenv("GRAPE_MAX_SETS", "3")
    assert default_max_sets() == 3
    with pytest.raises(EnumerationLimitError):
        enumerate_fsets("matching", g.full())
    monkeypatch.setenv("GRAPE_MAX_SETS", "lots")
    with pytest.raises(ValueError):
        default_max_sets()


def _random_snapshots(n_graphs, directed, seed):
    rng = random.Random(seed)
    for _ in range(n_graphs):
        n = rng.randint(2, 7)
        make = random_digraph if directed else random_graph
        g = make(rng, n, rng.uniform(0.2, 1.0))
        cut = rng.randint(1, g.n_edges)
        yield g.edge_induced(range(cut))


@pytest.mark.parametrize("name", GRAPH_FEATURES)
def test_enumerators_match_predicate_brute_force(name):
    feat = get_feature(name)
    for snap in _random_snapshots(60, False, seed=sum(map(ord, name))):
        assert enumerate_fsets(feat, snap) == brute_force_fsets(feat, snap)


@pytest.mark.parametrize("name", DIGRAPH_FEATURES)
def test_digraph_enumerators_match_predicate_brute_force(name):
    feat = get_feature(name)
    for snap in _random_snapshots(80, True, seed=len(name)):
        assert enumerate_fsets(feat, snap) == brute_force_fsets(feat, snap)


def _admissible_extensions(feat, snap, x):
    if feat.kind == "edge":
        return [FeatureSet(x.vertices, tuple(sorted(x.edges + (e,)))) for e in snap.edge_ids if e not in x.edges]
    return [FeatureSet(tuple(sorted(x.vertices + (v,))), x.edges) for v in snap.vertices if v not in x.vertices]


@pytest.mark.parametrize("name", ["max-independent", "max-matching", "eulerian"])
def test_maximal_features_are_maximal(name):
    feat = get_feature(name)
    for snap in _random_snapshots(60, False, seed=7):
        sets = enumerate_fsets(feat, snap)
        for x in sets:
            assert not any(x != y and x.issubset(y) for y in sets)
            assert not any(feat.predicate(snap, y) for y in _admissible_extensions(feat, snap, x))


@pytest.mark.parametrize("name", ["independent", "matching"])
def test_monotone_features_are_monotone(name):
    feat = get_feature(name)
    assert feat.monotone
    rng = random.Random(99)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 8), rng.uniform(0.2, 1.0))
        full = g.full()
        for x in enumerate_fsets(feat, full):
            elems = x.vertices if feat.kind == "vertex" else x.edges
            for k in range(1, len(elems)):
                for sub in combinations(elems, k):
                    y = FeatureSet(sub) if feat.kind == "vertex" else FeatureSet((), sub)
                    assert feat.predicate(full, y)
            # any subgraph still containing X keeps X an F-set
            needed = set(x.edges)
            if feat.kind == "vertex":
                keep = {e.id for e in g.edges if rng.random() < 0.5}
                # make sure every vertex of X is still present
                for v in x.vertices:
                    keep.add(next(e.id for e in g.edges if v in e.endpoints))
            else:
                keep = needed | {e.id for e in g.edges if rng.random() < 0.5}
            assert feat.predicate(g.edge_induced(keep), x)


@pytest.mark.parametrize("name", sorted(FEATURES))
def test_empty_snapshot_has_no_fsets(name):
    make = digraph if name in DIGRAPH_FEATURES else graph
    g = make(("a", "b", 1))
    assert enumerate_fsets(name, g.edge_induced([])) == []
