"""Temporal graph storage, ingestion, and the incremental edge structures.

A temporal graph is a fixed vertex set observed over a contiguous range of
discrete timestamps ``0..t_max``; each timestamp holds an undirected simple
snapshot.  Interval semantics are conjunctive: an edge exists over an interval
only if it exists in every timestamp of the interval.

Instances are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import gzip
import io
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class EdgeListFormatError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval of timestamps ``[start, end]`` with ``start <= end``."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValueError(f"invalid interval [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def within(self, other: "Interval") -> bool:
        """True if ``other`` contains this interval."""
        return other.start <= self.start and other.end >= self.end

    def covers(self, t: int) -> bool:
        return self.start <= t <= self.end

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.start, self.end + 1))

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class TemporalGraph:
    """Immutable undirected temporal graph over dense integer vertex ids.

    ``snapshots[t]`` is a frozenset of canonically ordered vertex pairs; every
    timestamp in ``0..t_max`` has an entry, possibly empty.  External vertex
    labels map bijectively onto ``0..n-1``.
    """

    __slots__ = ("n", "t_max", "snapshots", "labels", "dropped_self_loops",
                 "_index", "_adjacency")

    def __init__(self, snapshots: Sequence[Iterable[Edge]], labels: Sequence[str],
                 dropped_self_loops: int = 0):
        if not snapshots:
            raise ValueError("a temporal graph needs at least one timestamp")
        self.n = len(labels)
        self.labels = tuple(str(x) for x in labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != self.n:
            raise ValueError("vertex labels must be unique")
        self.dropped_self_loops = dropped_self_loops

        frozen = []
        adjacency: list[dict[int, list[int]]] = []
        for t, snapshot in enumerate(snapshots):
            edges = set()
            adj: dict[int, list[int]] = {}
            for u, v in snapshot:
                if u == v:
                    raise ValueError(f"self-loop ({u},{u}) at timestamp {t}")
                if not (0 <= u < self.n and 0 <= v < self.n):
                    raise ValueError(f"edge ({u},{v}) out of vertex range at timestamp {t}")
                e = canonical_edge(u, v)
                if e in edges:
                    continue
                edges.add(e)
                adj.setdefault(e[0], []).append(e[1])
                adj.setdefault(e[1], []).append(e[0])
            frozen.append(frozenset(edges))
            adjacency.append(adj)
        self.snapshots: tuple[frozenset[Edge], ...] = tuple(frozen)
        self._adjacency = tuple(adjacency)
        self.t_max = len(self.snapshots) - 1

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_snapshot_edges(cls, snapshots: Sequence[Iterable[tuple[str, str]]]) -> "TemporalGraph":
        """Build from per-timestamp lists of label pairs (labels indexed by first appearance)."""
        labels: list[str] = []
        index: dict[str, int] = {}
        dropped = 0

        def idx(lab: str) -> int:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            return index[lab]

        indexed: list[list[Edge]] = []
        for snapshot in snapshots:
            rows = []
            for a, b in snapshot:
                if a == b:
                    dropped += 1
                    continue
                rows.append((idx(str(a)), idx(str(b))))
            indexed.append(rows)
        return cls(indexed, labels, dropped_self_loops=dropped)

    # -- label access ----------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r} (graph has {self.n} labels)") from None

    def label_of(self, vertex: int) -> str:
        return self.labels[vertex]

    def temporal_edge_count(self) -> int:
        return sum(len(s) for s in self.snapshots)

    # -- interval views ----------------------------------------------------------

    def _check_interval(self, interval: Interval) -> None:
        if interval.end > self.t_max:
            raise ValueError(f"interval {interval} outside time domain [0,{self.t_max}]")

    def interval_edges(self, interval: Interval) -> frozenset[Edge]:
        """Edges existing in every timestamp of ``interval`` (computed on demand)."""
        self._check_interval(interval)
        edges = self.snapshots[interval.start]
        for t in range(interval.start + 1, interval.end + 1):
            if not edges:
                break
            edges = edges & self.snapshots[t]
        return edges

    def neighbors(self, t: int, u: int) -> Sequence[int]:
        return self._adjacency[t].get(u, ())

    def induced_degree(self, interval: Interval, members: frozenset[int] | set[int], u: int) -> int:
        """Number of neighbors of ``u`` inside ``members`` under the interval edge set."""
        if u not in members:
            raise ValueError(f"vertex {u} is not a member of the induced set")
        if interval.length == 1:
            return sum(1 for v in self.neighbors(interval.start, u) if v in members)
        edges = self.interval_edges(interval)
        return sum(1 for a, b in edges if (a == u and b in members) or (b == u and a in members))

    # -- incremental structures used by the top-down maximal-core scan -----------

    def edge_shrinkage(self, start: int) -> "EdgeShrinkage":
        """Decompose the snapshot at ``start`` by how long each edge persists.

        Walking the window end forward from ``start``, the interval edge set
        only shrinks.  The result records, for each end ``t`` short of the
        last nonempty end, the edges that vanish when the window is extended
        past ``t``, plus the edges that persist through the last nonempty end.
        Folding the vanishing sets back onto the persistent set reconstructs
        every intermediate interval edge set exactly.
        """
        if start > self.t_max:
            raise ValueError(f"start {start} outside time domain [0,{self.t_max}]")
        current = self.snapshots[start]
        if not current:
            return EdgeShrinkage(start=start, last_nonempty_end=None,
                                 persistent=frozenset(), vanishing=())
        vanishing: list[frozenset[Edge]] = []
        t = start
        while t < self.t_max:
            shrunk = current & self.snapshots[t + 1]
            if not shrunk:
                break
            vanishing.append(current - shrunk)
            current = shrunk
            t += 1
        return EdgeShrinkage(start=start, last_nonempty_end=t,
                             persistent=current, vanishing=tuple(vanishing))


@dataclass(frozen=True)
class EdgeShrinkage:
    """Per-start family of vanishing edge sets; see ``TemporalGraph.edge_shrinkage``.

    ``vanishing[i]`` holds the edges present in the interval ending at
    ``start + i`` but not in the one ending at ``start + i + 1``.  The sets are
    pairwise disjoint and together with ``persistent`` partition the snapshot
    at ``start``.
    """

    start: int
    last_nonempty_end: int | None
    persistent: frozenset[Edge]
    vanishing: tuple[frozenset[Edge], ...]

    def edges_at(self, end: int) -> set[Edge]:
        """Reconstruct the interval edge set for ``[start, end]``."""
        if self.last_nonempty_end is None or end > self.last_nonempty_end:
            return set()
        edges = set(self.persistent)
        for i in range(end - self.start, len(self.vanishing)):
            edges |= self.vanishing[i]
        return edges


class DegreeBucketMap:
    """Vertices bucketed by degree threshold for the current interval graph.

    Built by adding edges as the interval end retreats (degrees only grow).
    Bucket ``k`` holds exactly the vertices whose current degree exceeds ``k``,
    so the subgraph seed for a lower bound ``lb`` is a single O(1) lookup.
    """

    __slots__ = ("degree", "_buckets")

    def __init__(self):
        self.degree: dict[int, int] = {}
        self._buckets: list[set[int]] = []

    def add_edges(self, edges: Iterable[Edge]) -> None:
        degree = self.degree
        buckets = self._buckets
        for u, v in edges:
            for w in (u, v):
                d = degree.get(w, 0)
                if d == len(buckets):
                    buckets.append(set())
                buckets[d].add(w)
                degree[w] = d + 1

    def vertices_above(self, lb: int) -> set[int]:
        """All vertices with degree strictly greater than ``lb`` (read-only view)."""
        if lb < 0:
            raise ValueError("degree lower bound must be >= 0")
        if lb >= len(self._buckets):
            return set()
        return self._buckets[lb]


# -- ingestion ------------------------------------------------------------------


def _open_source(source) -> IO[str]:
    if isinstance(source, (str, Path)):
        path = Path(source)
        if path.suffix == ".gz":
            return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
        return open(path, "r", encoding="utf-8")
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8"))
    return source


def parse_edge_records(source) -> Iterator[tuple[int, str, str]]:
    """Yield ``(raw_time, u_label, v_label)`` records from a text edge list.

    Lines are whitespace- or comma-separated; blank lines and ``#`` comments
    are skipped; extra trailing columns are ignored (face-to-face contact
    datasets commonly carry metadata columns).
    """
    stream = _open_source(source)
    try:
        for lineno, line in enumerate(stream, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.replace(",", " ").split()
            if len(parts) < 3:
                raise EdgeListFormatError(
                    f"expected at least 3 fields (time u v), got {len(parts)}", lineno)
            try:
                raw_time = int(parts[0])
            except ValueError:
                raise EdgeListFormatError(
                    f"non-integer timestamp {parts[0]!r}", lineno) from None
            if raw_time < 0:
                raise EdgeListFormatError(f"negative timestamp {raw_time}", lineno)
            yield raw_time, parts[1], parts[2]
    finally:
        if stream is not source:
            stream.close()


def load_edge_list(source, window: int, time_origin: int | None = None,
                   pre_windowed: bool = False) -> TemporalGraph:
    """Load a temporal graph from a raw edge list, discretizing time into windows.

    Raw times are bucketed into contiguous windows of equal width starting at
    ``time_origin`` (default: the minimum raw time seen).  Repeated contacts of
    the same pair within one window collapse to a single edge; self-loop
    records are dropped (count retained on the graph).  With ``pre_windowed``
    the first column is taken verbatim as the timestamp index and ``window``
    is ignored.
    """
    if not pre_windowed and window <= 0:
        raise ValueError("window must be a positive duration")

    records = list(parse_edge_records(source))
    if not records:
        raise EdgeListFormatError("empty edge list: graph must have at least one timestamp")

    if pre_windowed:
        buckets = [t for t, _, _ in records]
    else:
        origin = time_origin if time_origin is not None else min(t for t, _, _ in records)
        early = [t for t, _, _ in records if t < origin]
        if early:
            raise EdgeListFormatError(
                f"record at raw time {min(early)} precedes time origin {origin}")
        buckets = [(t - origin) // window for t, _, _ in records]

    t_max = max(buckets)
    snapshots: list[list[tuple[str, str]]] = [[] for _ in range(t_max + 1)]
    for bucket, (_, u, v) in zip(buckets, records):
        snapshots[bucket].append((u, v))
    return TemporalGraph.from_snapshot_edges(snapshots)


def write_edge_list(g: TemporalGraph, sink) -> int:
    """Emit the graph in pre-windowed format (``t u v`` per line); returns line count."""
    stream = sink if hasattr(sink, "write") else open(sink, "w", encoding="utf-8")
    count = 0
    try:
        for t, snapshot in enumerate(g.snapshots):
            for u, v in sorted(snapshot):
                stream.write(f"{t}\t{g.label_of(u)}\t{g.label_of(v)}\n")
                count += 1
    finally:
        if stream is not sink:
            stream.close()
    return count


# -- degree-preserving null model -------------------------------------------------


def rewire_null_model(g: TemporalGraph, seed: int | None = 0,
                      swap_factor: int = 10) -> TemporalGraph:
    """Reshuffle every snapshot by repeated degree-preserving double edge swaps.

    Two edges with four distinct endpoints are replaced by their crosswise
    recombination when neither replacement already exists.  Per-vertex degree
    and edge count in every timestamp are preserved exactly; correlations
    between consecutive snapshots are destroyed.  ``swap_factor * |edges|``
    swaps are attempted per snapshot.
    """
    rng = random.Random(seed)
    new_snapshots: list[list[Edge]] = []
    for snapshot in g.snapshots:
        edges = sorted(snapshot)
        m = len(edges)
        if m < 2:
            new_snapshots.append(edges)
            continue
        present = set(edges)
        for _ in range(swap_factor * m):
            i = rng.randrange(m)
            j = rng.randrange(m)
            if i == j:
                continue
            u, v = edges[i]
            w, z = edges[j]
            if len({u, v, w, z}) < 4:
                continue
            if rng.random() < 0.5:
                w, z = z, w
            e1 = canonical_edge(u, z)
            e2 = canonical_edge(w, v)
            if e1 in present or e2 in present:
                continue
            present.discard(edges[i])
            present.discard(edges[j])
            present.add(e1)
            present.add(e2)
            edges[i] = e1
            edges[j] = e2
        new_snapshots.append(edges)
    return TemporalGraph(new_snapshots, g.labels)
