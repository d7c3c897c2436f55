"""Batch command-line front end.

Every subcommand loads a temporal graph from an edge list, runs one pipeline,
and writes line-oriented results plus a provenance sidecar (input digest,
parameters, per-phase timings).  Results are deterministic for a fixed
configuration and seed; all nondeterministic bookkeeping lives in the sidecar.

Exit codes: 0 success, 1 usage or parameter error, 2 input error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from pathlib import Path

from . import analytics
from .community_search import tcs_basic, tcs_efficient
from .graph import EdgeListFormatError, TemporalGraph, load_edge_list, rewire_null_model, write_edge_list
from .maximal_cores import filter_maximal, maximal_span_cores
from .min_community import greedy_minimum_community
from .span_cores import DecompositionStats, naive_span_cores, span_cores, write_span_cores

OUTPUT_DIR_ENV = "SPANCORES_OUTPUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed_value(text: str) -> int:
    if text == "random":
        return random.SystemRandom().randrange(2**32)
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"--seed must be an integer or 'random', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spancores",
                     description="Span-core decomposition and temporal community search")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", help="edge-list file (raw 'time u v' records; .gz accepted)")
        p.add_argument("--window", type=int,
                       help="window width for discretizing raw times")
        p.add_argument("--pre-windowed", action="store_true",
                       help="input timestamps are already discrete indices")
        p.add_argument("--time-origin", type=int, default=None,
                       help="raw time of the first window (default: minimum raw time)")
        p.add_argument("-o", "--output", default="-",
                       help="output path ('-' for stdout); relative paths honor "
                            f"${OUTPUT_DIR_ENV}")

    p = sub.add_parser("decompose", help="enumerate all span-cores")
    add_common(p)
    p.add_argument("--naive", action="store_true",
                   help="use the per-interval full decomposition baseline")

    p = sub.add_parser("maximal", help="extract only the maximal span-cores")
    add_common(p)
    p.add_argument("--filter", action="store_true",
                   help="use the enumerate-then-filter baseline")

    p = sub.add_parser("tcs", help="temporal community search")
    add_common(p)
    p.add_argument("--q", required=True,
                   help="comma-separated query vertex labels")
    p.add_argument("--h", dest="segments", type=int, required=True,
                   help="number of output communities")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--basic", action="store_true", help="DP over the full time domain")
    mode.add_argument("--efficient", action="store_true",
                      help="DP over the reduced boundary domain (default)")
    p.add_argument("--penalty-backend", choices=["maximal-cores", "full-decomposition"],
                   default="maximal-cores",
                   help="interval score backend for the efficient route")
    p.add_argument("--minimize", action="store_true",
                   help="shrink each community greedily, reporting both sizes")

    p = sub.add_parser("anomalies", help="flag and filter anomalously persistent contacts")
    add_common(p)
    p.add_argument("--tr", type=int, required=True, help="span-length threshold")
    p.add_argument("--ratio", type=float, required=True,
                   help="original/filtered edge-count ratio flagging a timestamp")

    p = sub.add_parser("embed", help="per-vertex community-search embeddings")
    add_common(p)
    p.add_argument("--h", dest="segments", type=int, required=True,
                   help="embedding width (number of segments)")
    p.add_argument("--threads", type=int, default=1,
                   help="rows computed concurrently")

    p = sub.add_parser("stats", help="activity, purity, and span-length tables")
    add_common(p)
    p.add_argument("--report", choices=["activity", "purity", "span-length"],
                   required=True)
    p.add_argument("--attrs", help="two-column 'vertex_label value' file (purity)")
    p.add_argument("--min-span", type=int, default=analytics.DEFAULT_MIN_SPAN,
                   help="discard cores with spans shorter than this")

    p = sub.add_parser("reshuffle", help="degree-preserving per-timestamp null model")
    add_common(p)
    p.add_argument("--seed", default="0")

    p = sub.add_parser("sample-queries", help="sample interacting query vertices")
    add_common(p)
    p.add_argument("--q-size", type=int, required=True)
    p.add_argument("--p", type=float, default=0.8, help="walk continuation probability")
    p.add_argument("--pool", type=int, default=None,
                   help="visited-pool size (default 3 * q_size)")
    p.add_argument("--seed", default="0")

    return parser


def _resolve_output(raw: str) -> Path | None:
    if raw == "-":
        return None
    path = Path(raw)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _load(args) -> TemporalGraph:
    if args.pre_windowed:
        return load_edge_list(args.input, window=1, time_origin=args.time_origin,
                              pre_windowed=True)
    if args.window is None:
        raise UsageError("--window is required unless --pre-windowed is given")
    return load_edge_list(args.input, window=args.window,
                          time_origin=args.time_origin)


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class _Run:
    """Collects results, provenance, and timings for one invocation."""

    def __init__(self, args):
        self.args = args
        self.output = _resolve_output(args.output)
        self.timings: dict[str, float] = {}
        self.counters: dict[str, int] = {}

    def open_sink(self):
        if self.output is None:
            return sys.stdout
        self.output.parent.mkdir(parents=True, exist_ok=True)
        return open(self.output, "w", encoding="utf-8")

    def close_sink(self, sink):
        if sink is not sys.stdout:
            sink.close()

    def write_provenance(self):
        args = self.args
        parameters = {k: v for k, v in vars(args).items()
                      if k not in {"command", "input", "output"} and v is not None}
        meta = {
            "command": args.command,
            "input": {"path": args.input, "sha256": _digest(args.input)},
            "parameters": parameters,
            "timings_seconds": {k: round(v, 6) for k, v in self.timings.items()},
            "counters": self.counters,
        }
        if self.output is None:
            print(json.dumps({"provenance": meta}, sort_keys=True), file=sys.stderr)
        else:
            side = self.output.with_name(self.output.name + ".meta.json")
            side.write_text(json.dumps({"provenance": meta}, indent=2, sort_keys=True) + "\n",
                            encoding="utf-8")


def _timed(run: _Run, phase: str, fn):
    tick = time.perf_counter()
    result = fn()
    run.timings[phase] = time.perf_counter() - tick
    return result


def _cmd_decompose(run: _Run, g: TemporalGraph):
    stats = DecompositionStats()
    algorithm = naive_span_cores if run.args.naive else span_cores
    cores = _timed(run, "solve", lambda: algorithm(g, stats))
    run.counters["peel_vertices"] = stats.peel_vertices
    run.counters["intervals_processed"] = stats.intervals_processed
    sink = run.open_sink()
    try:
        run.counters["records"] = write_span_cores(cores, sink, g)
    finally:
        run.close_sink(sink)


def _cmd_maximal(run: _Run, g: TemporalGraph):
    stats = DecompositionStats()
    if run.args.filter:
        cores = _timed(run, "solve", lambda: filter_maximal(span_cores(g, stats)))
    else:
        cores = _timed(run, "solve", lambda: maximal_span_cores(g, stats))
    run.counters["peel_vertices"] = stats.peel_vertices
    sink = run.open_sink()
    try:
        run.counters["records"] = write_span_cores(cores, sink, g, maximal=True)
    finally:
        run.close_sink(sink)


def _cmd_tcs(run: _Run, g: TemporalGraph):
    args = run.args
    query = frozenset(g.index_of(label) for label in args.q.split(",") if label)
    if not query:
        raise UsageError("--q must name at least one vertex")
    timings: dict[str, float] = {}
    if args.basic:
        solution = tcs_basic(g, query, args.segments, timings=timings)
    else:
        solution = tcs_efficient(g, query, args.segments,
                                 penalty_backend=args.penalty_backend, timings=timings)
    run.timings.update(timings)

    records = []
    for segment in solution.segments:
        full_size = len(segment.members)
        members = segment.members
        if args.minimize and segment.min_degree > 0:
            members = frozenset(greedy_minimum_community(
                g, query, segment.span, segment.members, segment.min_degree))
        records.append({
            "ts": segment.span.start,
            "te": segment.span.end,
            "min_degree": segment.min_degree,
            "size": len(members),
            "full_size": full_size,
            "vertices": sorted(g.label_of(u) for u in members),
        })
    sink = run.open_sink()
    try:
        json.dump({"objective": solution.objective, "segments": records},
                  sink, indent=2, sort_keys=True)
        sink.write("\n")
    finally:
        run.close_sink(sink)
    run.counters["objective"] = solution.objective


def _cmd_anomalies(run: _Run, g: TemporalGraph):
    if run.output is None:
        raise UsageError("anomalies requires -o/--output (it writes a table and a graph)")
    report = _timed(run, "solve",
                    lambda: analytics.detect_anomalies(g, run.args.tr, run.args.ratio))
    sink = run.open_sink()
    try:
        sink.write("t\toriginal_edges\tvertex_filtered_edges\tfinal_edges\tflagged\n")
        flagged = set(report.flagged_timestamps)
        for t, (orig, mid, fin) in enumerate(report.edge_counts):
            sink.write(f"{t}\t{orig}\t{mid}\t{fin}\t{int(t in flagged)}\n")
    finally:
        run.close_sink(sink)
    graph_path = run.output.with_name(run.output.name + ".filtered.edges")
    with open(graph_path, "w", encoding="utf-8") as fh:
        write_edge_list(report.filtered, fh)
    run.counters["flagged_timestamps"] = len(report.flagged_timestamps)
    run.counters["flagged_vertex_steps"] = len(report.flagged_vertex_steps)


def _cmd_embed(run: _Run, g: TemporalGraph):
    rows = _timed(run, "solve",
                  lambda: analytics.tcs_embeddings(g, run.args.segments,
                                                   threads=run.args.threads))
    sink = run.open_sink()
    try:
        header = "\t".join(["vertex"] + [f"x{j}" for j in range(run.args.segments)])
        sink.write(header + "\n")
        for u, row in enumerate(rows):
            sink.write("\t".join([g.label_of(u)] + [str(x) for x in row]) + "\n")
    finally:
        run.close_sink(sink)


def _cmd_stats(run: _Run, g: TemporalGraph):
    args = run.args
    sink = run.open_sink()
    try:
        if args.report == "activity":
            cores = _timed(run, "solve", lambda: span_cores(g))
            sink.write("start\tspan_length\tmax_order\n")
            for cell in analytics.activity_summary(cores, min_span=args.min_span):
                sink.write(f"{cell.start}\t{cell.span_length}\t{cell.max_order}\n")
        elif args.report == "span-length":
            cores = _timed(run, "solve", lambda: maximal_span_cores(g))
            sink.write("span_length\tcount\tpercent\n")
            for row in analytics.span_length_distribution(cores):
                sink.write(f"{row.length}\t{row.count}\t{row.percent:.4f}\n")
        else:
            if not args.attrs:
                raise UsageError("stats --report purity requires --attrs")
            attributes = analytics.read_attribute_table(args.attrs, g)
            cores = _timed(run, "solve", lambda: maximal_span_cores(g))
            kept = [c for c in cores if c.span.length >= args.min_span]
            timeline = analytics.purity_timeline(kept, attributes, g.t_max)
            sink.write("t\tmean_purity\n")
            for t, value in enumerate(timeline):
                sink.write(f"{t}\t{'nan' if value is None else f'{value:.6f}'}\n")
    finally:
        run.close_sink(sink)


def _cmd_reshuffle(run: _Run, g: TemporalGraph):
    seed = _seed_value(run.args.seed)
    rewired = _timed(run, "solve", lambda: rewire_null_model(g, seed=seed))
    sink = run.open_sink()
    try:
        run.counters["edges"] = write_edge_list(rewired, sink)
    finally:
        run.close_sink(sink)


def _cmd_sample_queries(run: _Run, g: TemporalGraph):
    args = run.args
    seed = _seed_value(args.seed)
    chosen = _timed(run, "solve",
                    lambda: analytics.sample_query_vertices(
                        g, args.q_size, p=args.p, pool_size=args.pool, seed=seed))
    sink = run.open_sink()
    try:
        sink.write("vertex\n")
        for label in sorted(g.label_of(u) for u in chosen):
            sink.write(label + "\n")
    finally:
        run.close_sink(sink)


_HANDLERS = {
    "decompose": _cmd_decompose,
    "maximal": _cmd_maximal,
    "tcs": _cmd_tcs,
    "anomalies": _cmd_anomalies,
    "embed": _cmd_embed,
    "stats": _cmd_stats,
    "reshuffle": _cmd_reshuffle,
    "sample-queries": _cmd_sample_queries,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        run = _Run(args)
        run.timings["precompute"] = 0.0
        graph = _timed(run, "load", lambda: _load(args))
        _HANDLERS[args.command](run, graph)
        run.write_provenance()
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except EdgeListFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"input error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (RuntimeError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
