import random

import pytest

from bgpscope.graph.build import build_graph
from bgpscope.ingest.delegations import Registry, parse_delegations
from bgpscope.metrics.complexity import complexity_score, egress_bottlenecks
from bgpscope.metrics.country import country_view
from bgpscope.records import AsPath, Prefix, RibEntry


def entry(vantage, prefix, path, ts=100):
    return RibEntry(ts, vantage, Prefix.parse(prefix), AsPath(tuple(path)))


def iran_registry(asns):
    rows = [f"ripencc|IR|asn|{a}|1|20000101|allocated" for a in asns]
    return Registry(parse_delegations(rows))


def make(entries, domestic_asns, cc="IR"):
    reg = iran_registry(domestic_asns)
    g = build_graph(entries, reg)
    return country_view(g, reg, cc), g


class TestComplexityScore:
    def test_pure_star_scores_zero(self):
        # every prefix reaches the world over exactly one domestic segment
        entries = [
            entry("vp1", f"10.0.{i}.0/24", [99, 1, 10 + i]) for i in range(5)
        ]
        view, _g = make(entries, [1] + [10 + i for i in range(5)])
        assert complexity_score(view, entries) == 0.0

    def test_one_prefix_four_segments_is_two_bits(self):
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 1, 5]),
            entry("vp2", "10.0.0.0/24", [99, 2, 5]),
            entry("vp3", "10.0.0.0/24", [99, 3, 5]),
            entry("vp4", "10.0.0.0/24", [99, 4, 5]),
        ]
        view, _g = make(entries, [1, 2, 3, 4, 5])
        assert complexity_score(view, entries) == pytest.approx(2.0)

    def test_weighted_mix_of_two_and_eight_segments(self):
        # equal-weight prefixes with R=2 and R=8: 0.5*1 + 0.5*3 = 2 bits
        entries = []
        for i in range(2):
            entries.append(entry(f"vpa{i}", "10.0.0.0/24", [99, 20 + i, 1]))
        for i in range(8):
            entries.append(entry(f"vpb{i}", "10.0.1.0/24", [99, 30 + i, 2]))
        domestic = [1, 2] + [20 + i for i in range(2)] + [30 + i for i in range(8)]
        view, _g = make(entries, domestic)
        assert complexity_score(view, entries) == pytest.approx(2.0)

    def test_invariant_under_duplicate_rows(self):
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 1, 5]),
            entry("vp2", "10.0.0.0/24", [99, 2, 5]),
        ]
        view, _g = make(entries, [1, 2, 5])
        base = complexity_score(view, entries)
        assert complexity_score(view, entries + entries) == pytest.approx(base)

    def test_new_distinct_segment_strictly_increases(self):
        rng = random.Random(3)
        for _ in range(10):
            n_segments = rng.randint(1, 4)
            entries = [
                entry(f"vp{i}", "10.0.0.0/24", [99, 10 + i, 1]) for i in range(n_segments)
            ]
            entries.append(entry("vpx", "10.0.1.0/24", [99, 2, 1]))
            domestic = [1, 2] + [10 + i for i in range(n_segments + 1)]
            view, _g = make(entries, domestic)
            before = complexity_score(view, entries)
            extra = entry("vpnew", "10.0.0.0/24", [99, 10 + n_segments, 1])
            after = complexity_score(view, entries + [extra])
            assert after > before

    def test_prefix_without_path_excluded_from_normalization(self, caplog):
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 1, 5]),
            entry("vp2", "10.0.0.0/24", [99, 2, 5]),
        ]
        view, _g = make(entries, [1, 2, 5])
        # photocopy the view with a phantom prefix that never shows a path
        view.prefix_origins[Prefix.parse("10.9.0.0/16")] = {5}
        score = complexity_score(view, entries)
        assert score == pytest.approx(1.0)  # single prefix, R=2, weight 1 after exclusion

    def test_foreign_origin_rows_ignored(self):
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 1, 5]),
            entry("vp2", "10.0.0.0/24", [99, 1, 5, 77][:3]),  # still domestic
        ]
        view, _g = make(entries, [1, 5])
        foreign_row = entry("vp3", "10.0.0.0/24", [99, 77])
        assert complexity_score(view, entries + [foreign_row]) == complexity_score(view, entries)


class TestEgressBottlenecks:
    def test_single_gatekeeper(self):
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 7, 1]),
            entry("vp1", "10.0.1.0/24", [99, 7, 2]),
        ]
        view, g = make(entries, [1, 2, 7])
        report = egress_bottlenecks(view, entries, g)
        assert len(report.shares) == 1
        assert report.shares[0].asn == 7
        assert report.shares[0].share == pytest.approx(1.0)
        assert set(report.cut.nodes) == {7} and not report.cut.impossible

    def test_three_to_one_split_by_addresses(self):
        # AS7 carries three /24s out, AS8 one /24
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 7, 1]),
            entry("vp1", "10.0.1.0/24", [99, 7, 1]),
            entry("vp1", "10.0.2.0/24", [99, 7, 2]),
            entry("vp1", "10.0.3.0/24", [99, 8, 2]),
        ]
        view, g = make(entries, [1, 2, 7, 8])
        report = egress_bottlenecks(view, entries, g)
        shares = {s.asn: s.share for s in report.shares}
        assert shares[7] == pytest.approx(0.75)
        assert shares[8] == pytest.approx(0.25)

    def test_shares_sum_to_one_when_all_paths_exit(self):
        rng = random.Random(13)
        entries = []
        for i in range(12):
            gate = rng.choice([7, 8, 9])
            entries.append(entry(f"vp{i % 3}", f"10.1.{i}.0/24", [99, gate, rng.choice([1, 2])]))
        view, g = make(entries, [1, 2, 7, 8, 9])
        report = egress_bottlenecks(view, entries, g)
        assert sum(s.share for s in report.shares) == pytest.approx(1.0, abs=1e-9)

    def test_internal_only_paths_not_crossings(self):
        entries = [
            entry("vp1", "10.0.0.0/24", [99, 7, 1]),
            entry("vpdom", "10.0.0.0/24", [2, 7, 1]),  # fully domestic view of it
        ]
        view, g = make(entries, [1, 2, 7])
        report = egress_bottlenecks(view, entries, g)
        assert {s.asn for s in report.shares} == {7}
        assert report.shares[0].crossings_weight == 256

    def test_no_frontier_is_an_error(self):
        entries = [entry("vp1", "10.0.0.0/24", [1, 2])]
        view, g = make(entries, [1, 2])
        with pytest.raises(ValueError, match="frontier"):
            egress_bottlenecks(view, entries, g)
