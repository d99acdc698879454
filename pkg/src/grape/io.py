"""CSV edge lists in, diagram JSON documents in and out."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError, SchemaError
from .graph import WeightedDigraph, WeightedGraph
from .persistence import Cornerpoint, PersistenceDiagram

__all__ = [
    "EdgeListRecord",
    "read_edge_records",
    "load_edge_list",
    "transform_weights",
    "export_diagram",
    "import_diagram",
    "dumps_diagram",
    "loads_diagram",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
TRANSFORMS = ("identity", "inverse", "negate_shift", "product")
_ALIASES = {"negshift": "negate_shift", "none": "identity"}


@dataclass(frozen=True)
class EdgeListRecord:
    source: str
    target: str
    weights: tuple[float, ...]
    line: int
    directed: bool = False


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_edge_records(
    path: str | Path,
    delimiter: str = ",",
    header: bool | None = None,
    directed: bool = False,
) -> list[EdgeListRecord]:
    """Parse ``source, target, weight[, weight...]`` rows.

    ``header=None`` treats the first row as a header when its third field is
    not a number (e.g. Graphistry's ``source,target,value``).  A header that
    names ``source`` and ``target`` may put them in any column.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [(i, row) for i, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1)]
    rows = [(i, [c.strip() for c in row]) for i, row in rows if any(c.strip() for c in row)]
    if not rows:
        return []
    src_col, tgt_col = 0, 1
    first_line, first = rows[0]
    if header is None:
        header = len(first) >= 3 and not _is_number(first[2])
    if header:
        names = [c.lower() for c in first]
        if "source" in names and "target" in names:
            src_col, tgt_col = names.index("source"), names.index("target")
        rows = rows[1:]
    records = []
    for line, row in rows:
        if len(row) < 3:
            raise DataError(f"expected at least 3 fields, got {len(row)}", line)
        source, target = row[src_col], row[tgt_col]
        for col, lab in ((src_col, source), (tgt_col, target)):
            if not lab:
                raise DataError("empty vertex label", line, col + 1)
        weights = []
        for col, text in enumerate(row):
            if col in (src_col, tgt_col):
                continue
            try:
                w = float(text)
            except ValueError:
                raise DataError(f"weight {text!r} is not a number", line, col + 1) from None
            if not math.isfinite(w):
                raise DataError(f"weight {text!r} is not finite", line, col + 1)
            weights.append(w)
        records.append(EdgeListRecord(source, target, tuple(weights), line, directed))
    return records


def _record_weight(rec: EdgeListRecord, transform: str, column: int) -> float:
    if transform == "product":
        if len(rec.weights) < 2:
            raise DataError("product transform needs two weight columns", rec.line)
        return rec.weights[0] * rec.weights[1]
    if column >= len(rec.weights):
        raise DataError(f"missing weight column {column + 1}", rec.line)
    return rec.weights[column]


def load_edge_list(
    path: str | Path,
    delimiter: str = ",",
    header: bool | None = None,
    directed: bool = False,
    transform: str = "identity",
    weight_column: int = 0,
    name: str | None = None,
) -> WeightedGraph:
    """Read a CSV edge list into a weighted graph or digraph.

    Vertex ids follow first appearance.  Self-loops and repeated edges are
    data errors that name the offending line.
    """
    transform = _ALIASES.get(transform, transform)
    if transform not in TRANSFORMS:
        raise ValueError(f"unknown transform {transform!r}")
    records = read_edge_records(path, delimiter, header, directed)
    index: dict[str, int] = {}
    seen: dict[tuple[int, int], int] = {}
    triples = []
    for rec in records:
        if rec.source == rec.target:
            raise DataError(f"self-loop at {rec.source!r}", rec.line)
        a = index.setdefault(rec.source, len(index))
        b = index.setdefault(rec.target, len(index))
        key = (a, b) if directed else (min(a, b), max(a, b))
        if key in seen:
            raise DataError(
                f"duplicate edge {rec.source}-{rec.target} (first on line {seen[key]})", rec.line
            )
        seen[key] = rec.line
        triples.append((a, b, _record_weight(rec, transform, weight_column)))
    cls = WeightedDigraph if directed else WeightedGraph
    g = cls(list(index), triples, name=Path(path).stem if name is None else name)
    if transform in ("inverse", "negate_shift"):
        g = transform_weights(g, transform)
    return g


def transform_weights(g: WeightedGraph, kind: str) -> WeightedGraph:
    """Re-weight a graph: ``identity``, ``inverse`` (1/w) or ``negate_shift`` (max w - w).

    ``product`` combines two CSV columns and therefore lives in
    :func:`load_edge_list`.
    """
    kind = _ALIASES.get(kind, kind)
    ws = g.weights
    if kind == "identity":
        return g
    if kind == "inverse":
        if any(w == 0 for w in ws):
            raise ZeroDivisionError("inverse transform needs nonzero weights")
        return g.with_weights([1.0 / w for w in ws])
    if kind == "negate_shift":
        top = max(ws, default=0.0)
        return g.with_weights([top - w for w in ws])
    if kind == "product":
        raise DataError("product needs two weight columns; use load_edge_list(..., transform='product')")
    raise ValueError(f"unknown transform {kind!r}")


# ---------------------------------------------------------------- documents

def _num_out(x: float):
    return "inf" if math.isinf(x) and x > 0 else x


def _num_in(x, what: str) -> float:
    if x == "inf":
        return math.inf
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(f"{what} must be a number or 'inf', got {x!r}")
    return float(x)


def export_diagram(d: PersistenceDiagram) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "feature": d.feature,
        "mode": d.mode,
        "source": d.source,
        "cornerpoints": [
            {
                "birth": _num_out(c.birth),
                "death": _num_out(c.death),
                "multiplicity": c.multiplicity,
                "witnesses": [list(w) for w in c.witnesses],
            }
            for c in d.cornerpoints
        ],
    }


def import_diagram(doc: dict) -> PersistenceDiagram:
    if not isinstance(doc, dict):
        raise SchemaError("diagram document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    cps = doc.get("cornerpoints")
    if not isinstance(cps, list):
        raise SchemaError("'cornerpoints' must be a list")
    meta = {}
    for key in ("feature", "mode", "source"):
        val = doc.get(key, "")
        if not isinstance(val, str):
            raise SchemaError(f"{key!r} must be a string")
        meta[key] = val
    points = []
    for i, cp in enumerate(cps):
        if not isinstance(cp, dict):
            raise SchemaError(f"cornerpoint {i} must be an object")
        try:
            birth = _num_in(cp["birth"], "birth")
            death = _num_in(cp["death"], "death")
            mult = cp["multiplicity"]
            wits = cp.get("witnesses", [])
        except KeyError as exc:
            raise SchemaError(f"cornerpoint {i} lacks {exc.args[0]!r}") from None
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise SchemaError(f"cornerpoint {i}: multiplicity must be an integer")
        if not isinstance(wits, list) or not all(
            isinstance(w, list) and all(isinstance(x, str) for x in w) for w in wits
        ):
            raise SchemaError(f"cornerpoint {i}: witnesses must be lists of labels")
        try:
            points.append(Cornerpoint(birth, death, mult, tuple(tuple(w) for w in wits)))
        except ValueError as exc:
            raise SchemaError(f"cornerpoint {i}: {exc}") from None
    try:
        return PersistenceDiagram(tuple(points), **meta)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def dumps_diagram(d: PersistenceDiagram) -> str:
    return json.dumps(export_diagram(d), sort_keys=True, indent=2) + "\n"


def loads_diagram(text: str) -> PersistenceDiagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return import_diagram(doc)
