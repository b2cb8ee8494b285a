"""Command-line front end.

Subcommands: gen, cluster, train, eval, decode, dist, bench. File formats
are the package's JSON model format, plain-text sequence files (one
sequence per line), and JSON cluster tables. Every command exits 0 only if
all of its steps succeeded.

HMMACCEL_THREADS is honored as a cap on internal parallelism; the current
implementation computes everything on one thread, so any cap is satisfied.
"""

from __future__ import annotations

import argparse
import importlib.resources
import sys
from pathlib import Path
from time import perf_counter

from . import bench as bench_mod
from .clustering import build_clusters, filter_low_weight, load_cluster_table, save_cluster_table
from .dtw import dtw_distance, euclidean_distance
from .inference import ImpossibleSequenceError, likelihood, viterbi
from .model import HmmModel, load_model, load_sequences, sample_sequences, save_model, save_sequences
from .training import TrainingConfig, em_train, initialize_model, weighted_em_train, write_trace_csv

DEFAULT_BENCH_SIZES = "100,1000,10000"


def _bundled_bench_model() -> HmmModel:
    ref = importlib.resources.files("hmmaccel").joinpath("data/bench_model.json")
    with importlib.resources.as_file(ref) as path:
        return load_model(path)


def _looks_like_json(path) -> bool:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            stripped = line.strip()
            if stripped:
                return stripped.startswith("{")
    return False


def _cmd_gen(args) -> int:
    model = load_model(args.model, renormalize=args.renormalize)
    data = sample_sequences(model, args.count, args.length, args.seed)
    save_sequences(data, args.out)
    return 0


def _cmd_cluster(args) -> int:
    data = load_sequences(args.input, category_id=args.category_id)
    t0 = perf_counter()
    table = build_clusters(data, distance=args.distance)
    seconds = perf_counter() - t0
    if args.min_weight is not None:
        table = filter_low_weight(table, args.min_weight)
    save_cluster_table(table, args.out)
    print(f"clusters={len(table)} total_weight={table.total_weight} seconds={seconds:.6g}")
    return 0


def _cmd_train(args) -> int:
    if args.init_model is not None:
        init = load_model(args.init_model, renormalize=args.renormalize)
    else:
        if args.states is None or args.symbols is None:
            raise ValueError("--states and --symbols are required without --init-model")
        init = initialize_model(args.states, args.symbols, args.seed)

    weighted = _looks_like_json(args.input)
    config = TrainingConfig(
        iterations=args.iterations,
        seed=args.seed,
        ll_tolerance=args.ll_tolerance,
        mode="weighted" if weighted else "classical",
    )
    if weighted:
        table = load_cluster_table(args.input)
        trace = weighted_em_train(init, table, config)
    else:
        data = load_sequences(args.input)
        trace = em_train(init, data, config)

    save_model(trace.final_model, args.out)
    trace_path = args.trace or str(Path(args.out).with_suffix("")) + ".trace.csv"
    write_trace_csv(trace, trace_path)
    for note in trace.warnings:
        print(f"warning: {note}", file=sys.stderr)
    print(
        f"mode={config.mode} iterations={len(trace.per_iteration_log_likelihood)} "
        f"final_ll={trace.per_iteration_log_likelihood[-1]!r} "
        f"seconds={trace.wall_time_seconds:.6g}"
    )
    return 0


def _cmd_eval(args) -> int:
    model = load_model(args.model, renormalize=args.renormalize)
    data = load_sequences(args.input)
    for seq in data.sequences:
        try:
            print(repr(likelihood(model, seq)))
        except ImpossibleSequenceError:
            print("-inf")
    return 0


def _cmd_decode(args) -> int:
    model = load_model(args.model, renormalize=args.renormalize)
    data = load_sequences(args.input)
    for seq in data.sequences:
        try:
            path, log_prob = viterbi(model, seq)
        except ImpossibleSequenceError:
            print("-inf")
            continue
        print(" ".join(str(int(s)) for s in path) + "\t" + repr(log_prob))
    return 0


def _cmd_dist(args) -> int:
    data_a = load_sequences(args.file_a)
    data_b = load_sequences(args.file_b)
    for i, x in enumerate(data_a.sequences, start=1):
        for j, y in enumerate(data_b.sequences, start=1):
            if args.distance == "dtw":
                d = dtw_distance(x, y).distance
            else:
                d = euclidean_distance(x, y)
            print(f"{i} {j} {d!r}")
    return 0


def _cmd_bench(args) -> int:
    model = load_model(args.model) if args.model else _bundled_bench_model()
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    if args.include_100k and 100000 not in sizes:
        sizes.append(100000)
    reports = bench_mod.run_bench(
        model,
        sizes,
        length=args.length,
        iterations=args.iterations,
        runs=args.runs,
        seed=args.seed,
        distance=args.distance,
    )
    sys.stdout.write(bench_mod.report_text(reports))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(bench_mod.report_csv(reports))
    return 0


def _add_renormalize(parser) -> None:
    parser.add_argument(
        "--renormalize",
        action="store_true",
        help="renormalize off-sum rows when loading a model instead of failing",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmmaccel",
        description="Discrete-HMM training accelerated by weighted sequence clustering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample sequences from a model into a file")
    p.add_argument("model", help="model JSON file")
    p.add_argument("out", help="output sequence file")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_renormalize(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("cluster", help="cluster a sequence file into a weighted table")
    p.add_argument("input", help="sequence file")
    p.add_argument("out", help="output cluster table JSON")
    p.add_argument("--distance", choices=("dtw", "euclidean"), default="dtw")
    p.add_argument("--min-weight", type=int, default=None, help="drop clusters below this weight")
    p.add_argument("--category-id", type=int, default=0)
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("train", help="train a model on a sequence or cluster file")
    p.add_argument("input", help="sequence file (classical) or cluster JSON (weighted)")
    p.add_argument("out", help="output model JSON")
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--seed", type=int, default=0, help="seed for the random initial model")
    p.add_argument("--states", type=int, default=None, help="state count for seeded init")
    p.add_argument("--symbols", type=int, default=None, help="symbol count for seeded init")
    p.add_argument("--init-model", default=None, help="explicit initial model JSON")
    p.add_argument("--ll-tolerance", type=float, default=None, help="early-stop threshold")
    p.add_argument("--trace", default=None, help="trace CSV path (default: OUT.trace.csv)")
    _add_renormalize(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="log-likelihood of each sequence in a file")
    p.add_argument("model")
    p.add_argument("input", help="sequence file")
    _add_renormalize(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("decode", help="Viterbi state path of each sequence in a file")
    p.add_argument("model")
    p.add_argument("input", help="sequence file")
    _add_renormalize(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("dist", help="pairwise distances between two sequence files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--distance", choices=("dtw", "euclidean"), default="dtw")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("bench", help="classical vs cluster-weighted training benchmark")
    p.add_argument("--model", default=None, help="generator model JSON (default: bundled)")
    p.add_argument("--sizes", default=DEFAULT_BENCH_SIZES, help="comma-separated corpus sizes")
    p.add_argument("--include-100k", action="store_true", help="append the 100000-sequence row")
    p.add_argument("--length", type=int, default=5)
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distance", choices=("dtw", "euclidean"), default="euclidean")
    p.add_argument("--csv", default=None, help="also write the report as CSV here")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # descriptive failure, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
