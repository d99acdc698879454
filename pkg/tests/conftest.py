import random
from pathlib import Path

import pytest

from grape.graph import WeightedDigraph, WeightedGraph

DATA = Path(__file__).parent / "data"


def graph(*triples, vertices=()):
    return WeightedGraph.from_edges(triples, vertices=vertices)


def digraph(*triples, vertices=()):
    return WeightedDigraph.from_edges(triples, vertices=vertices)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def lesmis_csv():
    return DATA / "lesmiserables.csv"
