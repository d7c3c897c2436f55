"""Temporal community search: segment the time domain into h intervals, each
carrying a subgraph that contains the query vertices, maximizing the summed
minimum degree.

The per-interval subproblem is solved by the highest-order core containing the
query, whose order acts as the interval's score.  Segmenting the domain is
then classic optimal sequence segmentation by dynamic programming.  The basic
route scores every interval up front; the efficient route scores intervals
through a dominance lookup over the query-constrained maximal cores and runs
the DP only over a reduced set of candidate boundary timestamps, which is
sufficient for optimality.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Collection, Sequence

from .graph import Interval, TemporalGraph
from .maximal_cores import query_constrained_scan
from .span_cores import DecompositionStats, SpanCore, SpanCoreSet, _seeded_intervals
from .static_core import core_decomposition, query_constrained_decomposition


@dataclass(frozen=True)
class Segment:
    """One community: its interval, member set, and minimum interval degree."""

    span: Interval
    members: frozenset[int]
    min_degree: int


@dataclass(frozen=True)
class Segmentation:
    """An ordered partition of the time domain into scored communities."""

    segments: tuple[Segment, ...]
    objective: int

    def spans(self) -> list[Interval]:
        return [seg.span for seg in self.segments]


def single_tcs(g: TemporalGraph, query: Collection[int],
               interval: Interval) -> tuple[int, set[int]]:
    """Best community for one fixed interval: the highest-order core of the
    interval graph that still contains every query vertex.

    Returns order 0 with the full vertex set when the query is not jointly
    inside any core; an empty query yields the unconstrained innermost core.
    """
    edges = g.interval_edges(interval)
    return query_constrained_decomposition(g.vertices, edges, query)


class FullPenaltyTable:
    """Interval scores materialized for every interval with a positive score."""

    def __init__(self, values: dict[tuple[int, int], int]):
        self._values = values

    def value(self, ts: int, te: int) -> int:
        return self._values.get((ts, te), 0)

    def profile_for_end(self, te: int, starts: Sequence[int]) -> list[int]:
        values = self._values
        return [values.get((a, te), 0) for a in starts]

    def positive_items(self) -> dict[tuple[int, int], int]:
        return dict(self._values)


class DominancePenaltyTable:
    """Interval scores answered from the query-constrained maximal cores.

    The score of an interval is the highest order among stored cores whose
    span contains it (0 if none), so no per-interval table is materialized.
    """

    def __init__(self, cores: Collection[SpanCore]):
        self._spans = sorted((c.span.start, c.span.end, c.order) for c in cores)

    def value(self, ts: int, te: int) -> int:
        best = 0
        for s, e, k in self._spans:
            if s > ts:
                break
            if e >= te and k > best:
                best = k
        return best

    def profile_for_end(self, te: int, starts: Sequence[int]) -> list[int]:
        """Scores of [a, te] for each start a in ascending order, via one sweep."""
        eligible = [(s, k) for s, e, k in self._spans if e >= te]
        out = []
        best = 0
        pointer = 0
        for a in starts:
            while pointer < len(eligible) and eligible[pointer][0] <= a:
                if eligible[pointer][1] > best:
                    best = eligible[pointer][1]
                pointer += 1
            out.append(best)
        return out


def _validate_query(g: TemporalGraph, query: Collection[int]) -> frozenset[int]:
    qs = frozenset(query)
    for q in qs:
        if not (0 <= q < g.n):
            raise ValueError(f"query vertex {q} outside 0..{g.n - 1}")
    return qs


def penalty_table_full(g: TemporalGraph, query: Collection[int],
                       stats: DecompositionStats | None = None) -> FullPenaltyTable:
    """Score every interval by one seeded enumeration pass.

    Each interval's peel is seeded exactly as in the full span-core
    enumeration; the interval's score is the smallest coreness among the query
    vertices there (0 when some query vertex is missing or isolated).
    Intervals never reached by the enumeration keep score 0.
    """
    qs = _validate_query(g, query)
    values: dict[tuple[int, int], int] = {}
    for span, vertices, edges in _seeded_intervals(g):
        if stats is not None:
            stats.record(len(vertices))
        labeling = core_decomposition(vertices, edges)
        if qs:
            coreness = labeling.coreness
            v = min(coreness.get(q, 0) for q in qs)
        else:
            v = labeling.k_max
        if v > 0:
            values[(span.start, span.end)] = v
    return FullPenaltyTable(values)


def query_constrained_maximal(g: TemporalGraph, query: Collection[int],
                              stats: DecompositionStats | None = None,
                              ) -> tuple[SpanCoreSet, DominancePenaltyTable]:
    """Maximal query-constrained cores plus the dominance score structure over them."""
    qs = _validate_query(g, query)
    cores = query_constrained_scan(g, qs, stats)
    return SpanCoreSet(iter(cores)), DominancePenaltyTable(cores)


@dataclass(frozen=True)
class ReducedDomain:
    """Candidate segment-boundary timestamps, with construction provenance.

    ``timestamps`` is sorted ascending, always contains the last timestamp,
    and has at least ``min(h + 1, |T|)`` entries.
    """

    timestamps: tuple[int, ...]
    covered: frozenset[int]
    successors: frozenset[int]
    predecessors: frozenset[int]
    padding: frozenset[int]


def reduced_time_domain(t_max: int, h: int, spans: Collection[Interval]) -> ReducedDomain:
    """Timestamps sufficient for an optimal segmentation: every timestamp under
    some maximal span, the immediate flanks of each span, the domain end, and
    enough early filler timestamps to allow h nonempty segments."""
    covered: set[int] = set()
    successors: set[int] = set()
    predecessors: set[int] = set()
    for span in spans:
        covered.update(range(span.start, span.end + 1))
        successors.add(min(span.end + 1, t_max))
        predecessors.add(max(span.start - 1, 0))
    base = covered | successors | predecessors | {t_max}
    padding: set[int] = set()
    need = h + 1 - len(base)
    if need > 0:
        for t in range(t_max + 1):
            if t not in base:
                padding.add(t)
                need -= 1
                if need == 0:
                    break
    return ReducedDomain(
        timestamps=tuple(sorted(base | padding)),
        covered=frozenset(covered),
        successors=frozenset(successors),
        predecessors=frozenset(predecessors),
        padding=frozenset(padding),
    )


def _segment_dp(ends: Sequence[int], table, h: int):
    """Optimal segmentation DP over candidate end timestamps.

    ``P[r][i]`` is the least cost (negated summed score) of splitting the
    prefix ending at ``ends[r]`` into ``i + 1`` nonempty segments; ``R[r][i]``
    records the chosen previous end index.  Ties go to the smallest split
    index, making reconstruction deterministic.
    """
    n = len(ends)
    P: list[list[int | None]] = [[None] * h for _ in range(n)]
    R: list[list[int]] = [[-1] * h for _ in range(n)]
    for r in range(n):
        profile = table.profile_for_end(ends[r], ends[:r + 1])
        P[r][0] = -table.value(0, ends[r])
        for i in range(1, min(h, r + 1)):
            best = None
            best_split = -1
            for split in range(i - 1, r):
                prev = P[split][i - 1]
                if prev is None:
                    continue
                cost = prev - profile[split + 1]
                if best is None or cost < best:
                    best = cost
                    best_split = split
            P[r][i] = best
            R[r][i] = best_split
    return P, R


def _materialize(g: TemporalGraph, query: frozenset[int], h: int,
                 ends: Sequence[int], P, R) -> Segmentation:
    n = len(ends)
    objective = P[n - 1][h - 1]
    if objective is None:
        raise RuntimeError(f"internal: no feasible {h}-segmentation over {n} boundaries")
    objective = -objective

    end_indices = [0] * h
    idx = n - 1
    for i in range(h - 1, 0, -1):
        end_indices[i] = idx
        idx = R[idx][i]
    end_indices[0] = idx

    segments: list[Segment] = []
    previous_end = -1
    for i in range(h):
        span = Interval(previous_end + 1, ends[end_indices[i]])
        order, members = single_tcs(g, query, span)
        if order == 0:
            # any vertex set scores 0 here; the query itself is the least misleading
            members = set(query)
        segments.append(Segment(span=span, members=frozenset(members), min_degree=order))
        previous_end = span.end

    if sum(seg.min_degree for seg in segments) != objective:
        raise RuntimeError("internal: segmentation objective does not match its segments")
    return Segmentation(segments=tuple(segments), objective=objective)


def _validate_h(g: TemporalGraph, h: int) -> None:
    if h < 1:
        raise ValueError("segment count h must be at least 1")
    if h > g.t_max + 1:
        raise ValueError(f"cannot split {g.t_max + 1} timestamps into {h} nonempty segments")


def tcs_basic(g: TemporalGraph, query: Collection[int], h: int,
              stats: DecompositionStats | None = None,
              timings: dict | None = None) -> Segmentation:
    """Temporal community search with the DP over every timestamp of the domain."""
    _validate_h(g, h)
    qs = _validate_query(g, query)
    tick = time.perf_counter()
    table = penalty_table_full(g, qs, stats)
    tock = time.perf_counter()
    ends = list(range(g.t_max + 1))
    P, R = _segment_dp(ends, table, h)
    result = _materialize(g, qs, h, ends, P, R)
    if timings is not None:
        timings["precompute"] = tock - tick
        timings["solve"] = time.perf_counter() - tock
    return result


def tcs_efficient(g: TemporalGraph, query: Collection[int], h: int,
                  penalty_backend: str = "maximal-cores",
                  stats: DecompositionStats | None = None,
                  timings: dict | None = None) -> Segmentation:
    """Temporal community search over the reduced boundary domain.

    The objective always equals ``tcs_basic``'s; the chosen segmentation may
    differ where ties exist.  ``penalty_backend`` selects how interval scores
    are answered: ``"maximal-cores"`` (default) runs the direct maximal-core
    scan and answers scores by dominance lookup; ``"full-decomposition"``
    materializes all interval scores and derives the maximal spans from them.
    """
    _validate_h(g, h)
    qs = _validate_query(g, query)
    tick = time.perf_counter()
    if penalty_backend == "maximal-cores":
        cores, table = query_constrained_maximal(g, qs, stats)
        spans = [core.span for core in cores]
    elif penalty_backend == "full-decomposition":
        table = penalty_table_full(g, qs, stats)
        spans = _maximal_spans_from_values(table.positive_items())
    else:
        raise ValueError(f"unknown penalty backend {penalty_backend!r}")
    tock = time.perf_counter()
    domain = reduced_time_domain(g.t_max, h, spans)
    ends = list(domain.timestamps)
    P, R = _segment_dp(ends, table, h)
    result = _materialize(g, qs, h, ends, P, R)
    if timings is not None:
        timings["precompute"] = tock - tick
        timings["solve"] = time.perf_counter() - tock
    return result


def _maximal_spans_from_values(values: dict[tuple[int, int], int]) -> list[Interval]:
    """Non-dominated spans among per-interval top scores.

    Scores are anti-monotone in the span, so domination by any superinterval
    always shows at an immediate one.
    """
    out = []
    for (ts, te), v in values.items():
        if values.get((ts - 1, te), 0) >= v or values.get((ts, te + 1), 0) >= v:
            continue
        out.append(Interval(ts, te))
    return out
