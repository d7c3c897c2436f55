import pytest

from spancores import (
    DecompositionStats,
    Interval,
    SpanCore,
    SpanCoreSet,
    TemporalGraph,
    filter_maximal,
    innermost_core,
    maximal_span_cores,
    naive_span_cores,
    span_cores,
)


class TestFilterBaseline:
    def test_fix1_two_survivors(self, fix1):
        g = fix1
        result = filter_maximal(naive_span_cores(g))
        assert len(result) == 2
        top = result.get(2, Interval(0, 1))
        low = result.get(1, Interval(0, 2))
        assert top is not None and top.members == frozenset(
            {g.index_of(x) for x in "abc"})
        assert low is not None and low.members == frozenset(
            {g.index_of("a"), g.index_of("b")})

    def test_single_core_survives(self):
        cores = SpanCoreSet([SpanCore(1, Interval(0, 0), frozenset({0, 1}))])
        assert filter_maximal(cores) == cores

    def test_same_span_higher_order_dominates(self):
        cores = SpanCoreSet([
            SpanCore(1, Interval(0, 0), frozenset({0, 1, 2})),
            SpanCore(2, Interval(0, 0), frozenset({0, 1, 2})),
        ])
        survivors = list(filter_maximal(cores))
        assert len(survivors) == 1 and survivors[0].order == 2


class TestDirectScan:
    def test_fix1_exact(self, fix1):
        assert maximal_span_cores(fix1) == filter_maximal(naive_span_cores(fix1))

    def test_equivalence_on_corpus(self, corpus):
        for g in corpus[:60]:
            assert maximal_span_cores(g) == filter_maximal(span_cores(g))

    def test_antichain(self, corpus):
        for g in corpus[:40]:
            found = list(maximal_span_cores(g))
            for x in found:
                for y in found:
                    if x is not y:
                        assert not x.dominates(y) and not y.dominates(x)

    def test_each_output_is_a_true_innermost_core(self, corpus):
        for g in corpus[:40]:
            for core in maximal_span_cores(g):
                order, members = innermost_core(
                    g.vertices, g.interval_edges(core.span))
                assert (order, members) == (core.order, set(core.members))

    def test_per_span_uniqueness(self, corpus):
        for g in corpus[:40]:
            spans = [core.span for core in maximal_span_cores(g)]
            assert len(spans) == len(set(spans))

    def test_work_bound_vs_filtering_baseline(self, corpus):
        for g in corpus[:60]:
            direct = DecompositionStats()
            baseline = DecompositionStats()
            maximal_span_cores(g, direct)
            filter_maximal(span_cores(g, baseline))
            assert direct.peel_vertices <= baseline.peel_vertices

    def test_empty_start_snapshots_skipped(self):
        g = TemporalGraph([[], [(0, 1), (1, 2), (0, 2)], []], ["a", "b", "c"])
        result = maximal_span_cores(g)
        assert len(result) == 1
        core = next(iter(result))
        assert (core.order, core.span) == (2, Interval(1, 1))

    def test_fix1_scan_trace(self, fix1):
        # hand-derived walkthrough: start 0 peels [0,2] with seed {a,b}, then
        # [0,1] with seed {a,b,c}, then [0,0] where the bound already reached 2
        # and only c keeps degree above it; later starts find empty seeds
        stats = DecompositionStats()
        maximal_span_cores(fix1, stats)
        assert stats.intervals_processed == 6
        assert stats.peel_vertices == 2 + 3 + 1
        assert stats.emitted_cores == 2
