"""Steady and ranging persistence of features on edge-weighted graphs."""

from .diagrams import (
    bottleneck_distance,
    bottleneck_oracle,
    diagonal_gaps,
    natural_pseudodistance,
    select_above_gap,
)
from .errors import (
    DataError,
    EnumerationLimitError,
    GrapeError,
    GraphError,
    SchemaError,
    SizeLimitError,
)
from .features import FEATURES, Feature, FeatureSet, enumerate_fsets, get_feature
from .graph import Filtration, Snapshot, WeightedDigraph, WeightedGraph, build_filtration
from .hubs import persistent_hubs, search_unbalanced, track_hubs
from .io import dumps_diagram, export_diagram, import_diagram, load_edge_list, loads_diagram
from .persistence import (
    Cornerpoint,
    PersistenceDiagram,
    brute_force_rho,
    brute_force_sigma,
    persistence_diagram,
    rho_at,
    sigma_at,
)
from .svg import render_svg

__all__ = [
    "FEATURES",
    "Cornerpoint",
    "DataError",
    "EnumerationLimitError",
    "Feature",
    "FeatureSet",
    "Filtration",
    "GrapeError",
    "GraphError",
    "PersistenceDiagram",
    "SchemaError",
    "SizeLimitError",
    "Snapshot",
    "WeightedDigraph",
    "WeightedGraph",
    "bottleneck_distance",
    "bottleneck_oracle",
    "brute_force_rho",
    "brute_force_sigma",
    "build_filtration",
    "diagonal_gaps",
    "dumps_diagram",
    "enumerate_fsets",
    "export_diagram",
    "get_feature",
    "import_diagram",
    "load_edge_list",
    "loads_diagram",
    "natural_pseudodistance",
    "persistence_diagram",
    "persistent_hubs",
    "render_svg",
    "rho_at",
    "search_unbalanced",
    "select_above_gap",
    "sigma_at",
    "track_hubs",
]
