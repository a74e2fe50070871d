"""Command-line driver: generate models, project to MAGs, learn structure,
and benchmark independence-test counts.

All outputs are plain text (graph format or CSV), UTF-8, LF-terminated, and
deterministic for fixed seeds and flags; the learn stats file additionally
carries a wall-clock column that naturally varies between runs.
"""

from __future__ import annotations

import argparse
import statistics
import sys

from .baseline import DEFAULT_NODE_CAP, exhaustive_dsep_search
from .discovery import augment, fci_plus_run, pc_skeleton
from .graph import OBSERVED, validate_ancestral
from .io import read_graph, write_graph
from .models import CausalModel, GenConfig, project_to_mag, random_model
from .separation import oracle_from_mag


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def _default_counts(n: int, latents, selection):
    """~20% latents and ~10% selection nodes unless given explicitly."""
    lat = round(0.2 * n) if latents is None else latents
    sel = round(0.1 * n) if selection is None else selection
    return lat, sel


def cmd_generate(args) -> int:
    lat, sel = _default_counts(args.n, args.latents, args.selection)
    cfg = GenConfig(
        n_observed=args.n,
        n_latent=lat,
        n_selection=sel,
        max_degree=args.k,
        edge_prob=args.edge_prob,
        seed=args.seed,
    )
    model = random_model(cfg)
    write_graph(args.out, model.graph)
    return 0


def cmd_project(args) -> int:
    g = read_graph(args.input)
    model = CausalModel(g)
    model.validate()
    mag = project_to_mag(model)
    violations = validate_ancestral(mag)
    if violations:
        raise RuntimeError(f"internal error: projection is not ancestral: {violations}")
    write_graph(args.out, mag)
    return 0


def _learn_once(mag, k, algo, cap):
    """Run one algorithm against a fresh oracle; returns (graph, stats rows, queries)."""
    oracle = oracle_from_mag(mag)
    if algo == "fciplus":
        skel, _, stats = fci_plus_run(oracle, mag.n, k, names=mag.names,
                                      kinds=[OBSERVED] * mag.n)
        return skel.graph, stats.csv_rows(), stats.total_queries
    if k is None:
        raise ValueError("--k is required for the exhaustive algorithm")
    skel, records = pc_skeleton(oracle, mag.n, k, names=mag.names,
                                kinds=[OBSERVED] * mag.n)
    q_pc = oracle.count
    before = skel.graph.edge_count()
    skel, records = exhaustive_dsep_search(oracle, skel, records, cap=cap)
    removed = before - skel.graph.edge_count()
    q_sweep = oracle.count - q_pc
    skel = augment(skel, records, oracle)
    q_aug = oracle.count - q_pc - q_sweep
    rows = [
        ("pc", q_pc, 0, 0, 0.0),
        ("exhaustive", q_sweep, before, removed, 0.0),
        ("augment", q_aug, 0, 0, 0.0),
        ("total", oracle.count, before, removed, 0.0),
    ]
    return skel.graph, rows, oracle.count


def cmd_learn(args) -> int:
    mag = read_graph(args.input)
    if mag.has_circle_marks:
        raise ValueError("learn expects a MAG file without circle marks")
    learned, rows, _ = _learn_once(mag, args.k, args.algo, args.cap)
    write_graph(args.out, learned)
    if args.stats:
        lines = ["stage,queries,candidates,removed,seconds"]
        lines += [f"{s},{q},{c},{r},{t:.3f}" for s, q, c, r, t in rows]
        _write_lines(args.stats, lines)
    return 0


def cmd_bench(args) -> int:
    sizes = [int(tok) for tok in args.n.split(",") if tok]
    if not sizes or min(sizes) < 1:
        raise ValueError("--n must be a comma-separated list of positive sizes")
    rows = []
    for n in sizes:
        lat, sel = _default_counts(n, args.latents, args.selection)
        per_algo = {"fciplus": [], "exhaustive": []}
        for rep in range(args.reps):
            cfg = GenConfig(
                n_observed=n,
                n_latent=lat,
                n_selection=sel,
                max_degree=args.k,
                edge_prob=args.edge_prob if args.edge_prob is not None else min(1.0, 1.4 / max(1, n - 1)),
                seed=args.seed + 1000 * rep + n,
            )
            model = random_model(cfg)
            mag = project_to_mag(model, method="fast")
            oracle = oracle_from_mag(mag)
            _, _, stats = fci_plus_run(oracle, mag.n, args.k, names=mag.names)
            per_algo["fciplus"].append(stats.total_queries)
            if mag.n <= args.cap:
                oracle2 = oracle_from_mag(mag)
                skel, records = pc_skeleton(oracle2, mag.n, args.k, names=mag.names)
                exhaustive_dsep_search(oracle2, skel, records, cap=args.cap)
                per_algo["exhaustive"].append(oracle2.count)
        for algo in ("exhaustive", "fciplus"):
            counts = per_algo[algo]
            if not counts:
                continue
            rows.append(
                (n, algo, len(counts),
                 statistics.median(counts), statistics.fmean(counts))
            )
    rows.sort(key=lambda r: (r[0], r[1]))
    lines = ["n,algo,reps,median_queries,mean_queries"]
    lines += [f"{n},{algo},{reps},{med:g},{mean:.1f}" for n, algo, reps, med, mean in rows]
    _write_lines(args.out, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fciplus",
        description="Causal structure discovery on independence oracles: "
        "model generation, MAG projection, FCI+/exhaustive learning, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a random causal model and write it")
    p.add_argument("--n", type=int, required=True, help="observed node count")
    p.add_argument("--latents", type=int, default=None,
                   help="latent node count (default: ~20%% of --n)")
    p.add_argument("--selection", type=int, default=None,
                   help="selection node count (default: ~10%% of --n)")
    p.add_argument("--k", type=int, default=3, help="max projected-MAG degree (default 3)")
    p.add_argument("--edge-prob", type=float, default=0.25, help="DAG edge probability")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--out", required=True, help="output model file")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("project", help="project a model file to its observed MAG")
    p.add_argument("--in", dest="input", required=True, help="input model file")
    p.add_argument("--out", required=True, help="output MAG file")
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("learn", help="learn structure from a MAG oracle")
    p.add_argument("--in", dest="input", required=True, help="input MAG file")
    p.add_argument("--k", type=int, default=None,
                   help="max conditioning-set size / degree bound (default: adaptive)")
    p.add_argument("--algo", choices=("fciplus", "exhaustive"), default="fciplus")
    p.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP,
                   help="node cap for the exhaustive algorithm (default 16)")
    p.add_argument("--out", required=True, help="output learned-graph file")
    p.add_argument("--stats", default=None, help="optional stats CSV path")
    p.set_defaults(fn=cmd_learn)

    p = sub.add_parser("bench", help="compare independence-test counts across sizes")
    p.add_argument("--n", required=True, help="comma-separated observed sizes, e.g. 10,20,40")
    p.add_argument("--latents", type=int, default=None)
    p.add_argument("--selection", type=int, default=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--edge-prob", type=float, default=None,
                   help="DAG edge probability (default: ~1.4/(n-1))")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except Exception as exc:  # single-line diagnostic, non-zero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
