"""Command-line front end.

Exit codes are part of the contract: 0 success, 1 bad input or usage
(including parse and format errors), 2 a work cap was hit, 3 file-system
trouble.  All subcommand output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import asymptotics
from .certificates import (BoundComparison, bound_comparison,
                           comparisons_csv, find_sphere_certificates)
from .complexes import (closed_set_poset, facet_list_text, lovasz_retract,
                        neighborhood_complex, parse_facet_list)
from .errors import ResourceCapError
from .experiments import (ExperimentConfig, aggregate, betti_sweep,
                          records_to_csv, records_to_jsonl, run_survey)
from .graphs import (density, from_family_spec, gnp_sample, parse_edge_list,
                     serialize_edge_list)
from .homology import (AtLeast, betti_field2, boundary_matrices,
                       graph_homology, homology_integer)

_FEATURES = ("homology", "neighborliness", "certificates", "cliques")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(obj, path: Optional[str]) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", path)


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", metavar="PATH",
                   help="read the graph from an edge list file")
    p.add_argument("--family", metavar="SPEC",
                   help="named graph, e.g. complete:5, cycle:7, path:4, "
                        "complete_bipartite:3,4, kneser:2,1, xn:3")
    p.add_argument("--gnp", nargs=3, metavar=("N", "P", "SEED"),
                   help="sample a random graph with the given seed")


def _load_graph(args):
    chosen = [name for name in ("input", "family", "gnp")
              if getattr(args, name, None) is not None]
    if len(chosen) != 1:
        raise ValueError(
            "choose exactly one graph source: -i/--input, --family, or --gnp")
    if args.input is not None:
        with open(args.input, encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    if args.family is not None:
        return from_family_spec(args.family)
    raw_n, raw_p, raw_seed = args.gnp
    try:
        n, p, seed = int(raw_n), float(raw_p), int(raw_seed)
    except ValueError:
        raise ValueError(
            f"--gnp expects an integer N, a float P and an integer SEED; "
            f"got {args.gnp}") from None
    return gnp_sample(n, p, seed)


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"bad probability list {text!r}") from None
    if not vals:
        raise ValueError("empty probability list")
    return vals


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args) -> int:
    _emit(serialize_edge_list(_load_graph(args)), args.output)
    return 0


def _cmd_complex(args) -> int:
    _emit(facet_list_text(neighborhood_complex(_load_graph(args))),
          args.output)
    return 0


def _cmd_homology(args) -> int:
    if args.facets is not None:
        if any(getattr(args, k) is not None
               for k in ("input", "family", "gnp")):
            raise ValueError("--facets replaces the graph sources")
        with open(args.facets, encoding="utf-8") as fh:
            comp = parse_facet_list(fh.read())
        data = boundary_matrices(comp, max_dim=args.max_dim)
        if args.coeff == "f2":
            out = {"betti": None, "torsion": None,
                   "field2": list(betti_field2(data)),
                   "truncated": data.truncated}
        else:
            out = homology_integer(
                data, with_field2=args.coeff == "both").to_json_dict()
        source = "facets"
    elif args.coeff == "f2":
        comp = neighborhood_complex(_load_graph(args))
        data = boundary_matrices(comp, max_dim=args.max_dim)
        out = {"betti": None, "torsion": None,
               "field2": list(betti_field2(data)),
               "truncated": data.truncated}
        source = "direct"
    else:
        result, source = graph_homology(_load_graph(args),
                                        max_dim=args.max_dim,
                                        with_field2=args.coeff == "both")
        out = result.to_json_dict()
    out["source"] = source
    _emit_json(out, args.output)
    return 0


def _cmd_retract(args) -> int:
    g = _load_graph(args)
    poset = closed_set_poset(g)
    retract = lovasz_retract(poset)
    _emit_json({
        "poset": poset.to_json_dict(),
        "retract": {
            "dimension": retract.dimension,
            "facet_count": len(retract.facets),
            "facets": [list(f) for f in retract.facets],
        },
    }, args.output)
    return 0


def _cmd_certify(args) -> int:
    certs = find_sphere_certificates(_load_graph(args))
    best = max((c.sphere_dim for c in certs), default=None)
    _emit_json({
        "count": len(certs),
        "best_sphere_dim": best,
        "certificates": [c.to_json_dict() for c in certs],
    }, args.output)
    return 0


def _comparison_json(r: BoundComparison) -> dict:
    conn = r.hom_connectivity
    if isinstance(conn, AtLeast):
        conn = str(conn)
    return {
        "n": r.n,
        "edges": r.edges,
        "chromatic_number": r.chromatic_number,
        "clique_number": r.clique_number,
        "neighborliness_bound": r.neighborliness_bound,
        "hom_connectivity": conn,
        "best_certificate_dim": r.best_certificate_dim,
        "missing": list(r.missing),
    }


def _cmd_chromatic(args) -> int:
    record = bound_comparison(_load_graph(args), coloring_cap=args.vertex_cap)
    if args.format == "csv":
        _emit(comparisons_csv([record]), args.output)
    else:
        _emit_json(_comparison_json(record), args.output)
    return 0


def _cmd_bounds(args) -> int:
    mode = args.mode
    if mode == "neighborly":
        out = {"kind": "neighborliness_failure_bound", "n": args.n,
               "level": args.level, "p": args.p,
               "value": asymptotics.neighborliness_failure_bound(
                   args.n, args.level, args.p)}
    elif mode == "biclique":
        out = {"kind": "biclique_count_bound", "n": args.n, "j": args.j,
               "k": args.k, "p": args.p,
               "value": asymptotics.biclique_count_bound(
                   args.n, args.j, args.k, args.p)}
    elif mode == "extension":
        out = {"kind": "clique_extension_bound", "n": args.n, "p": args.p,
               "k": args.k,
               "value": asymptotics.clique_extension_bound(
                   args.n, args.p, args.k)}
    elif mode == "vanishing-dimension":
        out = asymptotics.vanishing_dimension_window(
            args.n, args.eps).to_json_dict()
    elif mode == "vanishing-exponent":
        out = asymptotics.vanishing_exponent_bounds(args.level).to_json_dict()
    elif mode == "nonvanishing-dimension":
        out = asymptotics.nonvanishing_dimension_window(
            args.n, args.eps).to_json_dict()
    elif mode == "nonvanishing-exponent":
        out = asymptotics.nonvanishing_exponent_window(args.k).to_json_dict()
    else:
        g = _load_graph(args)
        out = {"kind": "subgraph_threshold_exponent",
               "density": str(density(g)),
               "exponent": str(asymptotics.subgraph_threshold_exponent(g))}
    _emit_json(out, args.output)
    return 0


def _survey_config(args) -> ExperimentConfig:
    if args.features:
        feats = {tok.strip() for tok in args.features.split(",") if tok.strip()}
    else:
        feats = {"homology"}
    unknown = feats - set(_FEATURES)
    if unknown:
        raise ValueError(f"unknown features {sorted(unknown)}; "
                         f"pick from {', '.join(_FEATURES)}")
    return ExperimentConfig(
        n=args.n, p_grid=_parse_float_list(args.p), trials=args.trials,
        master_seed=args.seed, max_dim=args.max_dim,
        homology="homology" in feats,
        neighborliness="neighborliness" in feats,
        certificates="certificates" in feats,
        clique_stats="cliques" in feats)


def _records_text(records, fmt: str) -> str:
    return records_to_csv(records) if fmt == "csv" else records_to_jsonl(records)


def _cmd_survey(args) -> int:
    cfg = _survey_config(args)
    records = run_survey(cfg, jobs=args.jobs)
    if args.summary is not None:
        _emit_json(aggregate(records, cfg).to_json_dict(), args.summary)
    if args.output is not None or args.summary is None:
        _emit(_records_text(records, args.format), args.output)
    return 0


def _cmd_sweep(args) -> int:
    records, summary = betti_sweep(
        args.n, _parse_float_list(args.p), args.trials, args.seed,
        args.max_dim, jobs=args.jobs)
    if args.output is not None:
        _emit(_records_text(records, args.format), args.output)
    _emit_json(summary.to_json_dict(), args.summary)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nbcomplex",
                     description="Neighborhood complexes of graphs: "
                                 "construction, homology, certificates, "
                                 "bounds, and seeded surveys.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="COMMAND")

    def command(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=handler)
        p.add_argument("-o", "--output", metavar="PATH",
                       help="write output here instead of stdout")
        return p

    p = command("gen", _cmd_gen, "write a graph as an edge list")
    _add_graph_source(p)

    p = command("complex", _cmd_complex,
                "facet list of a graph's neighborhood complex")
    _add_graph_source(p)

    p = command("homology", _cmd_homology,
                "reduced homology of a neighborhood complex")
    _add_graph_source(p)
    p.add_argument("--facets", metavar="PATH",
                   help="compute on a facet-list file instead of a graph")
    p.add_argument("--max-dim", type=int, default=None, metavar="K",
                   help="truncate above dimension K")
    p.add_argument("--coeff", choices=("z", "f2", "both"), default="z",
                   help="integer homology, GF(2) Betti numbers, or both")

    p = command("retract", _cmd_retract,
                "closed-set poset and its order complex")
    _add_graph_source(p)

    p = command("certify", _cmd_certify,
                "sphere certificates from maximal cliques")
    _add_graph_source(p)

    p = command("chromatic", _cmd_chromatic,
                "chromatic number vs lower bounds for one graph")
    _add_graph_source(p)
    p.add_argument("--vertex-cap", type=int, default=20,
                   help="largest graph the exact coloring search accepts")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = command("bounds", _cmd_bounds,
                "first-moment bounds and asymptotic windows")
    bsub = p.add_subparsers(dest="mode", required=True, metavar="MODE")

    def bounds_mode(name, help_text):
        bp = bsub.add_parser(name, help=help_text)
        bp.set_defaults(func=_cmd_bounds)
        bp.add_argument("-o", "--output", metavar="PATH")
        return bp

    bp = bounds_mode("neighborly",
                     "expected count of level-i neighborliness failures")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--level", type=int, required=True)
    bp.add_argument("--p", type=float, required=True)

    bp = bounds_mode("biclique", "expected count of complete bipartite pairs")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--j", type=int, required=True)
    bp.add_argument("--k", type=int, required=True)
    bp.add_argument("--p", type=float, required=True)

    bp = bounds_mode("extension",
                     "expected count of blocked clique extensions")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--p", type=float, required=True)
    bp.add_argument("--k", type=int, required=True)

    bp = bounds_mode("vanishing-dimension",
                     "dimension window where homology vanishes a.a.s.")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--eps", type=float, default=0.0)

    bp = bounds_mode("vanishing-exponent",
                     "density exponents forcing vanishing at a fixed level")
    bp.add_argument("--level", type=int, required=True)

    bp = bounds_mode("nonvanishing-dimension",
                     "dimension window with nonvanishing homology a.a.s.")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--eps", type=float, default=0.0)

    bp = bounds_mode("nonvanishing-exponent",
                     "density exponents giving nonvanishing at a fixed level")
    bp.add_argument("--k", type=int, required=True)

    bp = bounds_mode("threshold",
                     "appearance-threshold exponent of a strictly "
                     "balanced graph")
    _add_graph_source(bp)

    p = command("survey", _cmd_survey,
                "seeded random-graph survey over a probability grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, metavar="P1,P2,...",
                   help="comma-separated probability grid")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--features", metavar="LIST", default=None,
                   help=f"comma list from: {', '.join(_FEATURES)} "
                        "(default homology)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", metavar="PATH",
                   help="also write aggregate statistics here")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")

    p = command("sweep", _cmd_sweep,
                "expected Betti curves across a probability grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True, metavar="P1,P2,...")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", metavar="PATH",
                   help="write the summary here instead of stdout")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapError as err:
        print(f"nbcomplex: resource cap: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"nbcomplex: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"nbcomplex: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
