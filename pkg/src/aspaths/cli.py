"""Command-line interface.

Subcommands::

    paths         enumerate all walks within a length bound
    nbp-paths     enumerate nonbacktracking walks within a bound
    nbp-dist      dump per-arc shortest nonbacktracking distances as CSV
    gen           sample graphs / degree sequences (chung-lu | er | mcmc-seq)
    prob          existence probability of a given walk under a degree model
    bounds        closed-form lower/upper expected path-count bounds
    ratio-exp     walks-vs-simple-paths ratio study
    deletion-exp  path survival under random edge deletion

Exit codes: 0 success, 2 validation error, 3 enumeration budget error.
Errors are reported as one JSON object per line on stderr.  Every
randomized subcommand requires an explicit ``--seed``; identical argv
produce identical bytes on stdout and in output files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath

from . import counting, experiments, graph as graphmod, nonbacktracking, paths as pathsmod
from .errors import AsPathsError, BudgetError
from .randgraph import McmcConfig, RngSeed, mcmc_degree_sequence, sample_chung_lu, sample_erdos_renyi

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class _CliError(Exception):
    """Internal: validation failure discovered while running a subcommand."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _print_error("ArgumentError", message)
        raise SystemExit(EXIT_VALIDATION)


def _print_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aspaths", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--epsilon", type=float, default=graphmod.EPSILON,
                       help="length comparison tolerance (default 1e-9)")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="output format where both are supported")
        p.add_argument("--out", metavar="DIR", default=None,
                       help="write results into DIR instead of stdout")

    def add_graph_args(p):
        p.add_argument("--graph", required=True, help="edge-list file")
        p.add_argument("--directed", action="store_true",
                       help="treat the edge list as directed arcs")

    def add_query_args(p):
        p.add_argument("--source", required=True, help="source node label")
        p.add_argument("--target", required=True, help="target node label")
        p.add_argument("--bound", type=float, default=None,
                       help="absolute length bound D")
        p.add_argument("--offset", type=float, default=None,
                       help="bound D = (shortest distance) + offset")
        p.add_argument("--max-paths", type=int,
                       default=pathsmod.DEFAULT_PATH_NODE_BUDGET,
                       help="aggregate output path-node budget")
        p.add_argument("--max-tree-nodes", type=int,
                       default=pathsmod.DEFAULT_TREE_NODE_BUDGET,
                       help="search tree node budget")
        p.add_argument("--lengths", action="store_true",
                       help="append :length to each output path line")

    p = sub.add_parser("paths", help="all walks within a length bound")
    add_graph_args(p)
    add_query_args(p)
    add_common(p)

    p = sub.add_parser("nbp-paths", help="nonbacktracking walks within a bound")
    add_graph_args(p)
    add_query_args(p)
    add_common(p)

    p = sub.add_parser("nbp-dist", help="per-arc nonbacktracking distance dump")
    add_graph_args(p)
    p.add_argument("--target", required=True, help="target node label")
    add_common(p)

    p = sub.add_parser("gen", help="sample graphs or degree sequences")
    gen_sub = p.add_subparsers(dest="model", required=True)

    g = gen_sub.add_parser("chung-lu", help="independent-edge expected-degree graph")
    g.add_argument("--seq", required=True, help="degree sequence file")
    g.add_argument("--seed", type=int, required=True)
    add_common(g)

    g = gen_sub.add_parser("er", help="Erdos-Renyi G(n, p) by average degree")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--avg-degree", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    add_common(g)

    g = gen_sub.add_parser("mcmc-seq", help="constrained expected-degree sequence")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--avg-degree", type=float, required=True)
    g.add_argument("--ratio", type=float, required=True,
                   help="target second-moment ratio S2/S")
    g.add_argument("--hubs", type=int, default=0,
                   help="number of entries pinned to sqrt(S)")
    g.add_argument("--tol", type=float, default=0.02)
    g.add_argument("--max-iters", type=int, default=200_000)
    g.add_argument("--d-min", type=float, default=1.0)
    g.add_argument("--seed", type=int, required=True)
    add_common(g)

    p = sub.add_parser("prob", help="walk existence probability under a degree model")
    p.add_argument("--seq", required=True, help="degree sequence file")
    p.add_argument("--path", required=True,
                   help="comma-separated node indices, e.g. 0,1,2,1,3")
    add_common(p)

    p = sub.add_parser("bounds", help="expected path-count bounds")
    p.add_argument("--seq", required=True, help="degree sequence file")
    p.add_argument("--s", type=int, required=True, help="source node index")
    p.add_argument("--t", type=int, required=True, help="target node index")
    p.add_argument("--r", type=int, required=True, help="path length (edges)")
    add_common(p)

    p = sub.add_parser("ratio-exp", help="walks vs simple paths ratio study")
    p.add_argument("--n", type=int, default=800)
    p.add_argument("--avg-degree", type=float, default=8.0)
    p.add_argument("--ratio-targets", default="12.0",
                   help="comma-separated S2/S targets")
    p.add_argument("--sequences", type=int, default=10)
    p.add_argument("--pairs", type=int, default=10)
    p.add_argument("--min-pair-degree", type=int, default=5)
    p.add_argument("--offsets", default="2,3,4", help="comma-separated length slacks")
    p.add_argument("--hubs", type=int, default=4)
    p.add_argument("--max-paths", type=int, default=pathsmod.DEFAULT_PATH_NODE_BUDGET)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    add_common(p)

    p = sub.add_parser("deletion-exp", help="path survival under edge deletion")
    add_graph_args(p)
    p.add_argument("--p-values", default="0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08,0.09,0.10")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--pair-degree-floor", type=int, default=10)
    p.add_argument("--slack", type=float, default=3.0)
    p.add_argument("--all-walks", action="store_true",
                   help="assess survival on all walks, not just simple paths")
    p.add_argument("--max-paths", type=int, default=pathsmod.DEFAULT_PATH_NODE_BUDGET)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    add_common(p)

    return parser


def _load_graph(args) -> graphmod.Graph:
    return graphmod.read_edge_list(args.graph, directed=args.directed)


def _node_id(g: graphmod.Graph, label: str) -> int:
    try:
        return g.id_of(label)
    except KeyError:
        raise _CliError(f"node label {label!r} not present in the graph") from None


def _resolve_bound(g, args, source, target):
    if (args.bound is None) == (args.offset is None):
        raise _CliError("exactly one of --bound or --offset is required")
    if args.bound is not None:
        return args.bound, None
    dist = graphmod.shortest_distances(g, source, graphmod.FROM_SOURCE)
    if dist[target] == float("inf"):
        raise _CliError("target is unreachable from source; --offset needs a finite distance")
    return dist[target] + args.offset, dist


def _emit(args, default_name: str, text: str) -> None:
    if args.out:
        outdir = FsPath(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / default_name).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _paths_output(args, found, labels) -> str:
    if args.format == "json":
        return json.dumps(pathsmod.paths_to_json(found, labels), indent=2) + "\n"
    lines = [pathsmod.format_path_line(p, labels, with_length=args.lengths) for p in found]
    return "".join(line + "\n" for line in lines)


def _cmd_paths(args) -> None:
    g = _load_graph(args)
    s, t = _node_id(g, args.source), _node_id(g, args.target)
    bound, dist = _resolve_bound(g, args, s, t)
    query = pathsmod.PathQuery(s, t, bound, max_paths=args.max_paths,
                               max_tree_nodes=args.max_tree_nodes)
    found = pathsmod.pathfind(g, query, epsilon=args.epsilon, dist_from_source=dist)
    ext = "json" if args.format == "json" else "txt"
    _emit(args, f"paths.{ext}", _paths_output(args, found, g.labels))


def _cmd_nbp_paths(args) -> None:
    g = _load_graph(args)
    s, t = _node_id(g, args.source), _node_id(g, args.target)
    bound, _ = _resolve_bound(g, args, s, t)
    query = pathsmod.PathQuery(s, t, bound, max_paths=args.max_paths,
                               max_tree_nodes=args.max_tree_nodes)
    found = nonbacktracking.nbp_pathfind(g, query, epsilon=args.epsilon)
    ext = "json" if args.format == "json" else "txt"
    _emit(args, f"nbp_paths.{ext}", _paths_output(args, found, g.labels))


def _cmd_nbp_dist(args) -> None:
    g = _load_graph(args)
    t = _node_id(g, args.target)
    tree = nonbacktracking.build_shortest_path_tree(g, t, epsilon=args.epsilon)
    nbp = nonbacktracking.nbp_distances(g, tree, epsilon=args.epsilon)
    if args.format == "json":
        payload = {
            "target": g.label_of(t),
            "values": [
                [g.label_of(a), g.label_of(b), v]
                for (a, b), v in sorted(nbp.values.items())
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
        _emit(args, "nbp_dist.json", text)
    else:
        _emit(args, "nbp_dist.csv", nonbacktracking.nbp_values_csv(nbp, g.labels))


def _cmd_gen(args) -> None:
    if args.model == "chung-lu":
        seq = counting.load_degree_sequence(args.seq)
        g = sample_chung_lu(seq, RngSeed(args.seed))
        _emit_graph(args, g, "chung_lu.txt")
    elif args.model == "er":
        g = sample_erdos_renyi(args.n, args.avg_degree, RngSeed(args.seed))
        _emit_graph(args, g, "erdos_renyi.txt")
    else:
        cfg = McmcConfig(n=args.n, target_avg=args.avg_degree, target_ratio=args.ratio,
                         hub_count=args.hubs, tolerance=args.tol,
                         max_iters=args.max_iters, d_min=args.d_min)
        seq = mcmc_degree_sequence(cfg, RngSeed(args.seed))
        if args.format == "json":
            text = json.dumps([float(v) for v in seq.d]) + "\n"
            _emit(args, "degrees.json", text)
        else:
            text = "".join(f"{float(v)!r}\n" for v in seq.d)
            _emit(args, "degrees.txt", text)


def _emit_graph(args, g, name) -> None:
    import io

    buf = io.StringIO()
    graphmod.write_edge_list(g, buf)
    _emit(args, name, buf.getvalue())


def _parse_walk(spec: str) -> list:
    try:
        nodes = [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise _CliError("--path must be comma-separated integer node indices") from None
    if len(nodes) < 2:
        raise _CliError("--path needs at least two nodes")
    return nodes


def _cmd_prob(args) -> None:
    seq = counting.load_degree_sequence(args.seq)
    nodes = _parse_walk(args.path)
    if max(nodes) >= seq.n or min(nodes) < 0:
        raise _CliError(f"walk references node outside [0, {seq.n})")
    prob = counting.path_probability(nodes, seq)
    if args.format == "json":
        cls = counting.classify_edges(nodes)
        payload = {"probability": prob, **cls.to_json()}
        _emit(args, "prob.json", json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, "prob.txt", f"{prob!r}\n")


def _cmd_bounds(args) -> None:
    seq = counting.load_degree_sequence(args.seq)
    for name, v in (("--s", args.s), ("--t", args.t)):
        if not 0 <= v < seq.n:
            raise _CliError(f"{name} must be a node index in [0, {seq.n})")
    if args.s == args.t or args.r < 1:
        raise _CliError("need s != t and r >= 1")
    lower = counting.expected_sp_lower(seq, args.s, args.t, args.r)
    try:
        upper = counting.expected_nbp_upper(seq, args.s, args.t, args.r)
        upper_note = None
    except AsPathsError as exc:
        upper, upper_note = None, str(exc)
    if args.format == "json":
        payload = {
            "r": args.r,
            "lower": lower,
            "lower_vacuous": lower <= 0,
            "upper": upper,
            "upper_note": upper_note,
        }
        _emit(args, "bounds.json", json.dumps(payload, indent=2) + "\n")
    else:
        lines = [f"lower {lower!r}" + (" (vacuous)" if lower <= 0 else "")]
        if upper is None:
            lines.append(f"upper unavailable ({upper_note})")
        else:
            lines.append(f"upper {upper!r}")
        _emit(args, "bounds.txt", "".join(line + "\n" for line in lines))


def _parse_float_list(spec: str, flag: str) -> tuple:
    try:
        return tuple(float(tok) for tok in spec.split(",") if tok.strip())
    except ValueError:
        raise _CliError(f"{flag} must be a comma-separated list of numbers") from None


def _cmd_ratio_exp(args) -> None:
    offsets = tuple(int(o) for o in _parse_float_list(args.offsets, "--offsets"))
    cfg = experiments.RatioConfig(
        n=args.n,
        avg_degree=args.avg_degree,
        ratio_targets=_parse_float_list(args.ratio_targets, "--ratio-targets"),
        sequences_per_target=args.sequences,
        pairs_per_graph=args.pairs,
        min_pair_degree=args.min_pair_degree,
        offsets=offsets,
        seed=args.seed,
        hub_count=args.hubs,
        max_paths=args.max_paths,
    )
    report = experiments.ratio_experiment(cfg, jobs=args.jobs)
    if args.format == "json":
        _emit(args, "ratio_report.json",
              json.dumps(experiments.ratio_report_json(report), indent=2) + "\n")
    else:
        import io

        buf = io.StringIO()
        experiments.write_ratio_samples_csv(report, buf)
        _emit(args, "ratio_samples.csv", buf.getvalue())
        buf = io.StringIO()
        experiments.write_ratio_stats_csv(report, buf)
        _emit(args, "ratio_stats.csv", buf.getvalue())


def _cmd_deletion_exp(args) -> None:
    g = _load_graph(args)
    cfg = experiments.DeletionConfig(
        p_values=_parse_float_list(args.p_values, "--p-values"),
        trials_per_p=args.trials,
        pair_count=args.pairs,
        pair_degree_floor=args.pair_degree_floor,
        slack=args.slack,
        path_budget=args.max_paths,
        seed=args.seed,
        simple_only=not args.all_walks,
    )
    report = experiments.edge_deletion_experiment(g, cfg, jobs=args.jobs)
    if args.format == "json":
        _emit(args, "deletion_report.json",
              json.dumps(experiments.deletion_report_json(report), indent=2) + "\n")
    else:
        import io

        buf = io.StringIO()
        experiments.write_deletion_samples_csv(report, buf)
        _emit(args, "deletion_samples.csv", buf.getvalue())
        buf = io.StringIO()
        experiments.write_deletion_stats_csv(report, buf)
        _emit(args, "deletion_stats.csv", buf.getvalue())
        buf = io.StringIO()
        experiments.write_deletion_medians_csv(report, buf)
        _emit(args, "deletion_medians.csv", buf.getvalue())


_COMMANDS = {
    "paths": _cmd_paths,
    "nbp-paths": _cmd_nbp_paths,
    "nbp-dist": _cmd_nbp_dist,
    "gen": _cmd_gen,
    "prob": _cmd_prob,
    "bounds": _cmd_bounds,
    "ratio-exp": _cmd_ratio_exp,
    "deletion-exp": _cmd_deletion_exp,
}


def run(argv=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        _COMMANDS[args.command](args)
    except BudgetError as exc:
        _print_error(type(exc).__name__, str(exc))
        return EXIT_BUDGET
    except _CliError as exc:
        _print_error("ValidationError", str(exc))
        return EXIT_VALIDATION
    except (AsPathsError, OSError, ValueError) as exc:
        _print_error(type(exc).__name__, str(exc))
        return EXIT_VALIDATION
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
