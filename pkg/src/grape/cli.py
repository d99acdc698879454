"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .diagrams import bottleneck_distance, bottleneck_oracle, natural_pseudodistance
from .errors import DataError, EnumerationLimitError, GraphError, SizeLimitError
from .features import FEATURES, get_feature
from .hubs import HUB_FEATURES, persistent_hubs, search_unbalanced, track_hubs
from .io import dumps_diagram, load_edge_list, loads_diagram
from .persistence import (
    brute_force_rho,
    brute_force_sigma,
    persistence_diagram,
    rho_at,
    sigma_at,
)
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _print_json(obj) -> None:
    print(json.dumps(_jsonable(obj), sort_keys=True, indent=2))


def _gap(text: str):
    if text == "all":
        return "all"
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("gap index must be >= 1 or 'all'")
    return k


def _add_graph_args(p: argparse.ArgumentParser, default_transform: str = "identity") -> None:
    p.add_argument("--directed", action="store_true", help="read arcs source -> target")
    p.add_argument("--transform", default=default_transform,
                   choices=["identity", "inverse", "negshift", "product"])
    p.add_argument("--delimiter", default=",")


def _add_feature_options(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strict", action="store_true", default=None,
                   help="hub degree must exceed every neighbour's")
    g.add_argument("--non-strict", dest="strict", action="store_false",
                   help="hub degree must be at least every neighbour's")
    p.add_argument("--neighbours", choices=["all", "out", "in"], default=None,
                   help="neighbourhood used by dhub")


def _feature(args):
    return get_feature(args.feature, strict=args.strict, neighbours=args.neighbours)


def _load(path: str, args, directed: bool):
    return load_edge_list(
        path, delimiter=args.delimiter, directed=directed or args.directed, transform=args.transform
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grape", description="Steady and ranging persistence on weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("diagram", help="persistence diagram of a feature")
    p.add_argument("--input", required=True)
    p.add_argument("--feature", required=True, choices=list(FEATURES))
    p.add_argument("--mode", required=True, choices=["steady", "ranging"])
    p.add_argument("--out", required=True, help="diagram JSON path ('-' for stdout)")
    p.add_argument("--svg", help="also write an SVG rendering")
    _add_graph_args(p)
    _add_feature_options(p)

    p = sub.add_parser("hubs", help="persistent hubs above a diagonal gap")
    p.add_argument("--input", required=True)
    p.add_argument("--feature", required=True, choices=list(HUB_FEATURES))
    p.add_argument("--mode", required=True, choices=["steady", "ranging"])
    p.add_argument("--gap", type=_gap, default=1, help="gap index K, or 'all'")
    p.add_argument("--top", type=int, default=None, help="show at most N entries")
    p.add_argument("--json", action="store_true")
    _add_graph_args(p)
    _add_feature_options(p)

    p = sub.add_parser("bottleneck", help="bottleneck distance of two diagram files")
    p.add_argument("d1")
    p.add_argument("d2")

    p = sub.add_parser("track", help="top hubs across a sequence of graphs")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--feature", default="hub", choices=list(HUB_FEATURES))
    p.add_argument("--mode", default="ranging", choices=["steady", "ranging"])
    p.add_argument("--top", type=int, default=6)
    p.add_argument("--json", action="store_true")
    _add_graph_args(p, default_transform="inverse")
    _add_feature_options(p)

    p = sub.add_parser("oracle", help="brute-force verification commands")
    osub = p.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    for name in ("sigma", "rho"):
        q = osub.add_parser(name, help=f"definition-level {name} count vs the diagram")
        q.add_argument("--input", required=True)
        q.add_argument("--feature", required=True, choices=list(FEATURES))
        q.add_argument("--u", type=float, required=True)
        q.add_argument("--v", type=float, required=True)
        _add_graph_args(q)
        _add_feature_options(q)
    q = osub.add_parser("bottleneck", help="exhaustive bottleneck distance")
    q.add_argument("d1")
    q.add_argument("d2")
    q = osub.add_parser("pseudodistance", help="natural pseudodistance of two small graphs")
    q.add_argument("g1")
    q.add_argument("g2")
    _add_graph_args(q)
    q = osub.add_parser("unbalanced", help="search for a balance counterexample")
    q.add_argument("--feature", required=True, choices=list(FEATURES))
    q.add_argument("--mode", required=True, choices=["steady", "ranging"])
    q.add_argument("--trials", type=int, default=10**5)
    q.add_argument("--max-vertices", type=int, default=7)
    q.add_argument("--seed", type=int, default=0)
    _add_feature_options(q)
    return parser


def _cmd_diagram(args) -> int:
    feat = _feature(args)
    g = _load(args.input, args, feat.directed)
    d = persistence_diagram(g, feat, args.mode)
    text = dumps_diagram(d)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(render_svg(d), encoding="utf-8")
    return EXIT_OK


def _cmd_hubs(args) -> int:
    feat = _feature(args)
    g = _load(args.input, args, feat.directed)
    report = persistent_hubs(g, feat, args.mode, args.gap)
    entries = report.selected if args.top is None else report.selected[: args.top]
    if args.json:
        doc = report.to_dict()
        doc["selected"] = doc["selected"][: len(entries)]
        _print_json(doc)
        return EXIT_OK
    gap = "none" if report.gap_index is None else f"{report.gap_index} of {report.n_gaps}"
    print(f"persistent {report.mode} hubs ({report.feature}), gap {gap}")
    print(f"{'label':<24} {'birth':>10} {'death':>10} {'persistence':>12}")
    for e in entries:
        print(f"{e.label:<24} {e.birth:>10.4g} {e.death:>10.4g} {e.persistence:>12.4g}")
    return EXIT_OK


def _cmd_bottleneck(args, exhaustive: bool = False) -> int:
    d1 = loads_diagram(Path(args.d1).read_text(encoding="utf-8"))
    d2 = loads_diagram(Path(args.d2).read_text(encoding="utf-8"))
    dist = bottleneck_oracle(d1, d2) if exhaustive else bottleneck_distance(d1, d2)
    print(_jsonable(dist))
    return EXIT_OK


def _cmd_track(args) -> int:
    feat = _feature(args)
    snaps = [(Path(p).stem, _load(p, args, feat.directed)) for p in args.inputs]
    timeline = track_hubs(snaps, feat, args.mode, args.top)
    if args.json:
        _print_json(timeline.to_dict())
        return EXIT_OK
    for label, ranking in zip(timeline.labels, timeline.rankings):
        hubs = ", ".join(f"{v} ({p:.4g})" for v, p in ranking) or "-"
        print(f"{label}: {hubs}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.oracle in ("sigma", "rho"):
        feat = _feature(args)
        g = _load(args.input, args, feat.directed)
        mode = "steady" if args.oracle == "sigma" else "ranging"
        d = persistence_diagram(g, feat, mode)
        brute = brute_force_sigma if mode == "steady" else brute_force_rho
        read = sigma_at if mode == "steady" else rho_at
        expected = brute(feat, g, args.u, args.v)
        got = read(d, args.u, args.v)
        _print_json({"oracle": expected, "diagram": got, "agree": expected == got})
        return EXIT_OK if expected == got else EXIT_DATA
    if args.oracle == "bottleneck":
        return _cmd_bottleneck(args, exhaustive=True)
    if args.oracle == "pseudodistance":
        g1 = _load(args.g1, args, False)
        g2 = _load(args.g2, args, False)
        print(_jsonable(natural_pseudodistance(g1, g2)))
        return EXIT_OK
    feat = _feature(args)
    found = search_unbalanced(feat, args.mode, args.max_vertices, args.trials, args.seed)
    _print_json(None if found is None else found.to_dict())
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "diagram": _cmd_diagram,
        "hubs": _cmd_hubs,
        "bottleneck": _cmd_bottleneck,
        "track": _cmd_track,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (EnumerationLimitError, SizeLimitError) as exc:
        print(f"grape: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (DataError, GraphError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"grape: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
