import math
import random

import pytest

from grape.features import FeatureSet, get_feature
from grape.persistence import (
    ActivityProfile,
    Cornerpoint,
    PersistenceDiagram,
    brute_force_rho,
    brute_force_sigma,
    compute_activities,
    persistence_diagram,
    ranging_diagram,
    rho_at,
    sigma_at,
    steady_diagram,
)
from grape.randgraphs import random_graph

from conftest import graph

INF = math.inf


def profile(*intervals, vs=(0,), labels=("x",)):
    return ActivityProfile(FeatureSet(vs), tuple(intervals), labels)


def flickering_hub():
    # c is a strict hub on [2, 3) and again on [4, 5); y takes over at 5
    return graph(("c", "x", 1), ("c", "y", 2), ("y", "z", 3), ("c", "w", 4), ("y", "v", 5), ("y", "u", 5))


def test_activity_of_flickering_hub():
    g = flickering_hub()
    acts = {p.labels: p.intervals for p in compute_activities("hub", g)}
    assert acts[("c",)] == ((2, 3), (4, 5))
    assert acts[("y",)] == ((5, INF),)


def test_steady_splits_and_ranging_spans():
    p = profile((2, 3), (4, 5))
    assert steady_diagram([p]).points() == ((2, 3, 1), (4, 5, 1))
    assert ranging_diagram([p]).points() == ((2, 5, 1),)


def test_activity_from_first_level_dies_at_infinity():
    p = profile((1, INF))
    d = steady_diagram([p])
    assert d.points() == ((1, INF, 1),)
    assert d.cornerpoints[0].at_infinity
    assert ranging_diagram([profile((1, 2), (6, INF))]).points() == ((1, INF, 1),)


def test_single_interval_ranging_equals_steady():
    p = profile((3, 7))
    assert steady_diagram([p]).same_points(ranging_diagram([p]))


def test_equal_intervals_merge_with_witnesses():
    a = profile((0, 7), vs=(0,), labels=("a",))
    b = profile((0, 7), vs=(1,), labels=("b",))
    d = steady_diagram([a, b])
    assert len(d) == 1
    c = d.cornerpoints[0]
    assert c.multiplicity == 2 and c.witnesses == (("a",), ("b",))


def test_never_active_set_is_absent():
    g = graph(("a", "b", 1), ("b", "c", 2), ("a", "c", 3))
    labels = {p.labels for p in compute_activities("hub", g)}
    # at level 2 b is the strict hub of the path a-b-c, nobody is at level 3
    assert labels == {("b",)}


def test_activity_profile_validation():
    with pytest.raises(ValueError):
        profile((2, 3), (3, 5))
    with pytest.raises(ValueError):
        profile((4, 5), (2, 3))
    with pytest.raises(ValueError):
        profile((3, 3))


def test_cornerpoint_validation():
    with pytest.raises(ValueError):
        Cornerpoint(3, 3)
    with pytest.raises(ValueError):
        Cornerpoint(-INF, 2)
    with pytest.raises(ValueError):
        Cornerpoint(1, 2, 0)
    with pytest.raises(ValueError):
        Cornerpoint(1, 2, 2, (("a",),))
    with pytest.raises(ValueError):
        PersistenceDiagram((Cornerpoint(4, 5), Cornerpoint(2, 3)))
    assert PersistenceDiagram.build([(4, 5), (2, 3), (2, 3)]).points() == ((2, 3, 2), (4, 5, 1))


def test_sigma_rho_examples():
    steady = PersistenceDiagram.build([(2, 3), (4, 5)])
    assert sigma_at(steady, 2, 2.5) == 1
    assert sigma_at(steady, 3.5, 4.5) == 0
    assert rho_at(PersistenceDiagram.build([(2, 5)]), 3.5, 4.5) == 1


def test_counting_convention_on_discontinuities():
    d = PersistenceDiagram.build([(2, 5)])
    assert sigma_at(d, 2, 4.9) == 1  # birth <= u is inclusive
    assert sigma_at(d, 2, 5) == 0  # death > v is strict


@pytest.mark.parametrize("u, v", [(3, 3), (4, 2)])
def test_sigma_outside_domain(u, v):
    d = PersistenceDiagram()
    with pytest.raises(ValueError):
        sigma_at(d, u, v)
    with pytest.raises(ValueError):
        rho_at(d, u, v)
    g = graph(("a", "b", 1))
    with pytest.raises(ValueError):
        brute_force_sigma("hub", g, u, v)
    with pytest.raises(ValueError):
        brute_force_rho("hub", g, u, v)


@pytest.mark.parametrize("name", ["hub", "whub", "eulerian", "independent", "max-independent", "matching", "max-matching"])
def test_oracle_is_zero_below_first_level(name):
    g = random_graph(random.Random(5), 6, 0.7)
    assert brute_force_sigma(name, g, -5, -1) == 0
    assert brute_force_rho(name, g, -5, 100) == 0


def test_max_matching_on_triangle_by_hand():
    g = graph(("a", "b", 1), ("b", "c", 2), ("a", "c", 3))
    assert brute_force_sigma("max-matching", g, 1, 1.5) == 1
    assert sigma_at(persistence_diagram(g, "max-matching"), 1, 1.5) == 1


def test_flickering_hub_counts():
    g = flickering_hub()
    steady = persistence_diagram(g, "hub", "steady")
    ranging = persistence_diagram(g, "hub", "ranging")
    # c is steady on [2, 2.5] but not on [2, 4.5]; it ranges over both
    assert sigma_at(steady, 2, 2.5) == brute_force_sigma("hub", g, 2, 2.5) == 1
    assert sigma_at(steady, 2, 4.5) == brute_force_sigma("hub", g, 2, 4.5) == 0
    assert rho_at(ranging, 2, 4.5) == brute_force_rho("hub", g, 2, 4.5) == 1


def test_diagram_metadata_and_mode_check():
    g = flickering_hub()
    d = persistence_diagram(g, get_feature("hub"), "ranging")
    assert (d.feature, d.mode) == ("hub", "ranging")
    with pytest.raises(ValueError):
        persistence_diagram(g, "hub", "sideways")


def test_witnesses_are_sorted_canonically():
    g = graph(("a", "b", 1), ("c", "d", 1), ("e", "f", 1))
    d = persistence_diagram(g, "matching")
    for c in d.cornerpoints:
        assert list(c.witnesses) == sorted(c.witnesses)
    assert d.total_multiplicity == 7
