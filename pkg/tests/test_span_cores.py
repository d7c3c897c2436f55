import io

import pytest

from spancores import (
    DecompositionStats,
    Interval,
    TemporalGraph,
    core_decomposition,
    naive_span_cores,
    read_span_cores,
    span_cores,
    write_span_cores,
)


def members(g, core):
    return sorted(g.label_of(u) for u in core.members)


class TestNaiveEnumeration:
    def test_fix1_has_nine_cores(self, fix1):
        assert len(naive_span_cores(fix1)) == 9

    def test_fix1_specific_cores(self, fix1):
        g = fix1
        cores = naive_span_cores(g)
        triangle = cores.get(2, Interval(0, 1))
        assert triangle is not None and members(g, triangle) == ["a", "b", "c"]
        snapshot_one_core = cores.get(1, Interval(0, 0))
        assert snapshot_one_core is not None
        assert members(g, snapshot_one_core) == ["a", "b", "c", "d"]

    def test_every_member_meets_degree_bound(self, fix1):
        g = fix1
        for core in naive_span_cores(g):
            for u in core.members:
                assert g.induced_degree(core.span, core.members, u) >= core.order

    def test_maximality_of_members(self, fix1):
        g = fix1
        for core in naive_span_cores(g):
            outside = set(g.vertices) - core.members
            for extra in outside:
                grown = core.members | {extra}
                degrees_ok = all(
                    g.induced_degree(core.span, grown, u) >= core.order for u in grown)
                assert not degrees_ok, (core.order, core.span, extra)


class TestSeededEnumeration:
    def test_fix1_matches_oracle(self, fix1):
        assert span_cores(fix1) == naive_span_cores(fix1)

    def test_single_timestamp_graph(self):
        g = TemporalGraph([[(0, 1), (1, 2), (0, 2), (2, 3)]], ["a", "b", "c", "d"])
        cores = span_cores(g)
        labeling = core_decomposition(g.vertices, g.snapshots[0])
        for k in range(1, labeling.k_max + 1):
            core = cores.get(k, Interval(0, 0))
            assert core is not None and core.members == frozenset(labeling.core(k))
        assert len(cores) == labeling.k_max

    def test_disjoint_snapshots_kill_the_branch(self):
        g = TemporalGraph([[(0, 1)], [(2, 3)]], ["a", "b", "c", "d"])
        stats = DecompositionStats()
        cores = span_cores(g, stats)
        assert all(core.span.length == 1 for core in cores)
        # the width-2 interval has an empty edge intersection and is never enqueued
        assert stats.intervals_processed == 2

    def test_oracle_equivalence_sample(self, corpus):
        for g in corpus[:60]:
            assert span_cores(g) == naive_span_cores(g)

    def test_containment_property(self, corpus):
        for g in corpus[:25]:
            cores = list(span_cores(g))
            for inner in cores:
                for outer in cores:
                    if outer.order <= inner.order and outer.span.within(inner.span):
                        assert inner.members <= outer.members

    def test_vertical_nesting_per_span(self, corpus):
        for g in corpus[:25]:
            by_span = {}
            for core in span_cores(g):
                by_span.setdefault(core.span, {})[core.order] = core.members
            for orders in by_span.values():
                for k in orders:
                    if k + 1 in orders:
                        assert orders[k + 1] <= orders[k]

    def test_never_feeds_more_peel_vertices_than_naive(self, corpus):
        for g in corpus[:60]:
            fast_stats = DecompositionStats()
            naive_stats = DecompositionStats()
            span_cores(g, fast_stats)
            naive_span_cores(g, naive_stats)
            assert fast_stats.peel_vertices <= naive_stats.peel_vertices


class TestSerialization:
    def test_fix1_record_count_and_order(self, fix1):
        sink = io.StringIO()
        assert write_span_cores(span_cores(fix1), sink, fix1) == 9
        lines = sink.getvalue().strip().splitlines()
        assert len(lines) == 9
        import json
        keys = [(r["ts"], r["te"], r["k"]) for r in map(json.loads, lines)]
        assert keys == sorted(keys)

    def test_empty_graph_period(self):
        g = TemporalGraph([[], []], ["a", "b"])
        sink = io.StringIO()
        assert write_span_cores(span_cores(g), sink, g) == 0

    def test_round_trip(self, fix1):
        cores = span_cores(fix1)
        sink = io.StringIO()
        write_span_cores(cores, sink, fix1)
        assert read_span_cores(io.StringIO(sink.getvalue()), fix1) == cores

    def test_maximal_flag_present(self, fix1):
        import json
        from spancores import maximal_span_cores
        sink = io.StringIO()
        write_span_cores(maximal_span_cores(fix1), sink, fix1, maximal=True)
        for line in sink.getvalue().strip().splitlines():
            assert json.loads(line)["maximal"] is True

    def test_duplicate_key_rejected(self, fix1):
        from spancores import SpanCore, SpanCoreSet
        cores = SpanCoreSet()
        cores.add(SpanCore(1, Interval(0, 0), frozenset({0, 1})))
        with pytest.raises(ValueError):
            cores.add(SpanCore(1, Interval(0, 0), frozenset({0, 2})))
