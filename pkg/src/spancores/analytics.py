"""Downstream analytics over decomposition outputs: activity summaries,
attribute purity, span-length statistics, anomaly filtering, per-vertex
community-search embeddings, and query sampling."""

from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from .community_search import tcs_efficient
from .graph import Interval, TemporalGraph
from .maximal_cores import maximal_span_cores
from .span_cores import SpanCore

logger = logging.getLogger(__name__)

DEFAULT_MIN_SPAN = 2  # single-window cores are short interactions, not structure


@dataclass(frozen=True)
class ActivityCell:
    """Peak order among cores starting at ``start`` with span length ``span_length``."""

    start: int
    span_length: int
    max_order: int


def activity_summary(cores: Iterable[SpanCore],
                     min_span: int = DEFAULT_MIN_SPAN) -> list[ActivityCell]:
    """One record per (start, span length) cell holding the highest order there."""
    peaks: dict[tuple[int, int], int] = {}
    for core in cores:
        length = core.span.length
        if length < min_span:
            continue
        key = (core.span.start, length)
        if core.order > peaks.get(key, 0):
            peaks[key] = core.order
    return [ActivityCell(start=s, span_length=w, max_order=k)
            for (s, w), k in sorted(peaks.items())]


def purity(core: SpanCore, attributes: Mapping[int, str]) -> float:
    """Fraction of the core's labeled members carrying the most common label."""
    labels = [attributes[u] for u in core.members if u in attributes]
    if not labels:
        raise ValueError("purity undefined: no labeled member in the core")
    (_, top_count), = Counter(labels).most_common(1)
    return top_count / len(labels)


def purity_timeline(cores: Iterable[SpanCore], attributes: Mapping[int, str],
                    t_max: int) -> list[float | None]:
    """Per-timestamp mean purity over the cores whose span covers the timestamp.

    Timestamps covered by no core yield ``None``; cores without any labeled
    member are skipped with a warning.
    """
    scored: list[tuple[Interval, float]] = []
    for core in cores:
        try:
            scored.append((core.span, purity(core, attributes)))
        except ValueError:
            logger.warning("skipping core %s/%s: no labeled member",
                           core.order, core.span)
    timeline: list[float | None] = []
    for t in range(t_max + 1):
        values = [p for span, p in scored if span.covers(t)]
        timeline.append(sum(values) / len(values) if values else None)
    return timeline


@dataclass(frozen=True)
class SpanLengthBin:
    length: int
    count: int
    percent: float


def span_length_distribution(cores: Iterable[SpanCore]) -> list[SpanLengthBin]:
    """Histogram of span lengths with percentages."""
    counts = Counter(core.span.length for core in cores)
    total = sum(counts.values())
    return [SpanLengthBin(length=length, count=count, percent=100.0 * count / total)
            for length, count in sorted(counts.items())]


# -- anomaly detection ---------------------------------------------------------


@dataclass(frozen=True)
class AnomalyReport:
    """Output of the two-stage anomaly filter.

    ``vertex_filtered`` is the graph after removing edges incident to flagged
    vertices; ``filtered`` additionally empties flagged timestamps.
    ``edge_counts[t]`` holds (original, after vertex filter, final) counts.
    """

    flagged_vertex_steps: tuple[tuple[int, int], ...]
    flagged_timestamps: tuple[int, ...]
    vertex_filtered: TemporalGraph
    filtered: TemporalGraph
    edge_counts: tuple[tuple[int, int, int], ...]


def detect_anomalies(g: TemporalGraph, tr: int, ratio: float) -> AnomalyReport:
    """Flag steady long-lived group contacts and filter them out.

    Maximal cores with span longer than ``tr`` mark anomalously persistent
    activity; within each such span, every vertex of the span's order-1 core
    is flagged at every covered timestamp and its edges removed there.
    Timestamps whose original-to-filtered edge-count ratio then exceeds
    ``ratio`` are emptied entirely (a filtered count of zero with a nonzero
    original counts as an infinite ratio).
    """
    if tr < 1:
        raise ValueError("span threshold tr must be at least 1")
    if ratio <= 1:
        raise ValueError("edge-count ratio threshold must exceed 1")

    long_spans = [core.span for core in maximal_span_cores(g)
                  if core.span.length > tr]

    flagged: dict[int, set[int]] = {}
    for span in long_spans:
        endpoints: set[int] = set()
        for u, v in g.interval_edges(span):
            endpoints.add(u)
            endpoints.add(v)
        for t in span:
            flagged.setdefault(t, set()).update(endpoints)

    intermediate: list[list] = []
    for t, snapshot in enumerate(g.snapshots):
        bad = flagged.get(t)
        if bad:
            intermediate.append([e for e in snapshot if e[0] not in bad and e[1] not in bad])
        else:
            intermediate.append(list(snapshot))

    flagged_timestamps = []
    final: list[list] = []
    for t, kept in enumerate(intermediate):
        original = len(g.snapshots[t])
        if original > 0 and (len(kept) == 0 or original / len(kept) > ratio):
            flagged_timestamps.append(t)
            final.append([])
        else:
            final.append(kept)

    vertex_steps = tuple((t, u) for t in sorted(flagged) for u in sorted(flagged[t]))
    counts = tuple((len(g.snapshots[t]), len(intermediate[t]), len(final[t]))
                   for t in range(g.t_max + 1))
    return AnomalyReport(
        flagged_vertex_steps=vertex_steps,
        flagged_timestamps=tuple(flagged_timestamps),
        vertex_filtered=TemporalGraph(intermediate, g.labels),
        filtered=TemporalGraph(final, g.labels),
        edge_counts=counts,
    )


# -- embeddings ------------------------------------------------------------------


def tcs_embeddings(g: TemporalGraph, h: int, threads: int = 1) -> list[list[int]]:
    """Per-vertex embedding: the temporally ordered minimum degrees of that
    vertex's own h-segment community-search solution.

    Rows are independent; ``threads`` controls how many are computed
    concurrently against the shared graph.  Row order is vertex index order.
    """
    if h < 1 or h > g.t_max + 1:
        raise ValueError(f"embedding width h must be within 1..{g.t_max + 1}")

    def row(u: int) -> list[int]:
        solution = tcs_efficient(g, frozenset({u}), h)
        return [segment.min_degree for segment in solution.segments]

    if threads <= 1:
        return [row(u) for u in g.vertices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(row, g.vertices))


# -- query sampling ------------------------------------------------------------------


def sample_query_vertices(g: TemporalGraph, q_size: int, p: float = 0.8,
                          pool_size: int | None = None, seed: int | None = 0,
                          max_steps: int | None = None) -> set[int]:
    """Sample query vertices that plausibly interact, via a temporal random walk.

    A single query vertex is drawn uniformly from the whole vertex set.  For
    larger queries a walker starts at a uniform vertex and timestamp 0; with
    probability ``p`` it moves to a neighbor in the current snapshot (jumping
    forward, wrapping at the domain end, to the next timestamp where the
    current vertex has a neighbor), otherwise it stays and time advances.
    Visits accumulate until ``pool_size`` distinct vertices (default
    ``3 * q_size``) are seen, then ``q_size`` distinct vertices are drawn with
    probability proportional to visit frequency.
    """
    if q_size < 1:
        raise ValueError("q_size must be at least 1")
    rng = random.Random(seed)
    if q_size == 1:
        return {rng.randrange(g.n)}
    if g.temporal_edge_count() == 0:
        raise ValueError("cannot sample interacting vertices from an edgeless graph")

    pool = pool_size if pool_size is not None else 3 * q_size
    if pool < q_size:
        raise ValueError("pool size must be at least q_size")
    if max_steps is None:
        max_steps = max(10_000, 200 * pool * (g.t_max + 1))

    current = rng.randrange(g.n)
    visits: Counter[int] = Counter({current: 1})
    t = 0
    for _ in range(max_steps):
        if len(visits) >= pool:
            break
        if rng.random() < p:
            neighbors = g.neighbors(t, current)
            if not neighbors:
                t = _next_active_timestamp(g, current, t)
                neighbors = g.neighbors(t, current)
            current = neighbors[rng.randrange(len(neighbors))]
            visits[current] += 1
        else:
            t = 0 if t == g.t_max else t + 1
    else:
        if len(visits) < q_size:
            raise ValueError("random walk could not reach enough distinct vertices")
        logger.warning("query sampling stopped early with %d of %d pool vertices",
                       len(visits), pool)

    chosen: set[int] = set()
    candidates = sorted(visits)
    weights = [visits[v] for v in candidates]
    for _ in range(q_size):
        total = sum(weights)
        mark = rng.random() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if mark < acc:
                chosen.add(candidates[i])
                del candidates[i]
                del weights[i]
                break
    return chosen


def _next_active_timestamp(g: TemporalGraph, vertex: int, t: int) -> int:
    """First timestamp after ``t`` (wrapping, inclusive of ``t`` after a full
    cycle) where ``vertex`` has a neighbor."""
    span = g.t_max + 1
    for step in range(1, span + 1):
        candidate = (t + step) % span
        if g.neighbors(candidate, vertex):
            return candidate
    raise ValueError(f"vertex {vertex} is isolated at every timestamp")


# -- attribute ingestion ---------------------------------------------------------------


def read_attribute_table(source, g: TemporalGraph) -> dict[int, str]:
    """Read a two-column ``vertex_label attribute_value`` table keyed to graph vertices.

    Unknown vertex labels are warned about and skipped.
    """
    stream = source if hasattr(source, "read") else open(source, "r", encoding="utf-8")
    attributes: dict[int, str] = {}
    unknown = 0
    try:
        for lineno, line in enumerate(stream, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.replace(",", " ").split()
            if len(parts) < 2:
                raise ValueError(f"line {lineno}: expected 'vertex_label value'")
            label, value = parts[0], parts[1]
            try:
                attributes[g.index_of(label)] = value
            except KeyError:
                unknown += 1
    finally:
        if stream is not source:
            stream.close()
    if unknown:
        logger.warning("skipped %d attribute rows with unknown vertex labels", unknown)
    return attributes
