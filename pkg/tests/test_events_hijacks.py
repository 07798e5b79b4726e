import random

import pytest

from bgpscope.events.detect import DetectorStats, detect_hijacks
from bgpscope.events.model import Snapshot
from bgpscope.records import AsPath, Prefix, RelRecord, RibEntry


def entry(ts, vantage, prefix, origin):
    return RibEntry(ts, vantage, Prefix.parse(prefix), AsPath((990, origin)))


def snap(ts, announcements):
    """announcements: list of (prefix, origin) pairs, one vantage per row."""
    return Snapshot.from_entries(
        ts, [entry(ts, f"vp{i}", p, o) for i, (p, o) in enumerate(announcements)]
    )


def steady(prefix, origin, n, start=100, step=100):
    return [snap(start + i * step, [(prefix, origin)]) for i in range(n)]


class TestMoasDetection:
    def test_new_origin_after_stable_window(self):
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/24", 64500), ("10.0.0.0/24", 64666)]))
        (event,) = detect_hijacks(snaps, learn_window=7)
        assert event.kind == "moas_hijack"
        assert event.expected_origin == 64500
        assert event.observed_origin == 64666
        assert event.t_start == 800 and event.t_end is None

    def test_episode_closes_when_offender_leaves(self):
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/24", 64500), ("10.0.0.0/24", 64666)]))
        snaps.append(snap(900, [("10.0.0.0/24", 64500)]))
        (event,) = detect_hijacks(snaps, learn_window=7)
        assert event.t_end == 900

    def test_sibling_origin_change_is_exempt(self):
        rels = [RelRecord(64500, 64501, "s2s")]
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/24", 64500), ("10.0.0.0/24", 64501)]))
        assert detect_hijacks(snaps, learn_window=7, rels=rels) == []

    def test_no_stable_origin_skipped_and_counted(self):
        # the prefix flaps between two origins; no baseline, no event
        snaps = [
            snap(100 + i * 100, [("10.0.0.0/24", 64500 if i % 2 else 64501)]) for i in range(8)
        ]
        stats = DetectorStats()
        assert detect_hijacks(snaps, learn_window=7, stats=stats) == []
        assert stats.no_stable_origin >= 1

    def test_needs_window_plus_one(self):
        with pytest.raises(ValueError, match="need history"):
            detect_hijacks(steady("10.0.0.0/24", 64500, 7), learn_window=7)


class TestSubprefixDetection:
    def test_more_specific_from_foreign_origin(self):
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/24", 64500), ("10.0.0.0/25", 64666)]))
        (event,) = detect_hijacks(snaps, learn_window=7)
        assert event.kind == "subprefix_hijack"
        assert str(event.prefix) == "10.0.0.0/25"
        assert event.expected_origin == 64500
        assert event.observed_origin == 64666

    def test_own_origin_deaggregation_is_fine(self):
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/24", 64500), ("10.0.0.0/25", 64500)]))
        assert detect_hijacks(snaps, learn_window=7) == []

    def test_sibling_deaggregation_exempt(self):
        rels = [RelRecord(64500, 64501, "s2s")]
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/24", 64500), ("10.0.0.0/25", 64501)]))
        assert detect_hijacks(snaps, learn_window=7, rels=rels) == []

    def test_covering_origin_must_persist(self):
        snaps = steady("10.0.0.0/24", 64500, 7)
        snaps.append(snap(800, [("10.0.0.0/25", 64666)]))  # covering prefix gone
        assert detect_hijacks(snaps, learn_window=7) == []

    def test_longstanding_subprefix_is_not_new(self):
        snaps = [
            snap(100 + i * 100, [("10.0.0.0/24", 64500), ("10.0.0.0/25", 64666)])
            for i in range(8)
        ]
        assert detect_hijacks(snaps, learn_window=7) == []


def naive_origin_change_oracle(snaps, siblings=()):
    """Openings per simple origin-change detection with a 1-step memory."""
    sib = {frozenset(s) for s in siblings}
    openings = set()
    active = set()
    for prev, cur in zip(snaps, snaps[1:]):
        next_active = set()
        for prefix, origins in cur.origins.items():
            before = prev.origins.get(prefix)
            if not before or len(before) != 1:
                continue
            (stable,) = before
            for origin in origins:
                if origin == stable or frozenset((origin, stable)) in sib:
                    continue
                key = (prefix, origin)
                next_active.add(key)
                if key not in active:
                    openings.add((prefix, origin, cur.timestamp))
        active = next_active
    return openings


class TestNaiveOracleEquivalence:
    def test_window_one_matches_origin_change_detection(self):
        rng = random.Random(606)
        prefix = "10.0.0.0/24"
        for _ in range(60):
            snaps = []
            for i in range(rng.randint(2, 10)):
                origins = rng.sample([64500, 64501, 64502], rng.randint(1, 2))
                snaps.append(snap(100 + i * 100, [(prefix, o) for o in origins]))
            events = detect_hijacks(snaps, learn_window=1)
            got = {(e.prefix, e.observed_origin, e.t_start) for e in events}
            assert got == naive_origin_change_oracle(snaps)
