import pytest

from bgpscope.events.detect import country_event_rate, country_outage_fraction, detect_outages
from bgpscope.events.model import Snapshot
from bgpscope.ingest.delegations import Registry, parse_delegations
from bgpscope.records import AsPath, Prefix, RibEntry


def entry(ts, vantage, prefix, path):
    return RibEntry(ts, vantage, Prefix.parse(prefix), AsPath(tuple(path)))


def snap(ts, rows):
    return Snapshot.from_entries(ts, [entry(ts, f"vp{i}", p, path) for i, (p, path) in enumerate(rows)])


def visible(ts, prefix, n_vantages, origin=64500):
    return Snapshot.from_entries(
        ts, [entry(ts, f"vp{i}", prefix, [100 + i, origin]) for i in range(n_vantages)]
    )


REGISTRY = Registry(
    parse_delegations(
        [
            "ripencc|IR|ipv4|10.0.0.0|65536|20100101|allocated",
            "arin|US|ipv4|11.0.0.0|65536|20100101|allocated",
        ]
    )
)


class TestDetectOutages:
    def test_total_loss_opens_outage(self):
        snaps = [visible(100, "10.0.0.0/24", 5), visible(200, "10.0.0.0/24", 0)]
        (event,) = detect_outages(snaps)
        assert event.kind == "outage"
        assert event.t_start == 200 and event.t_end is None
        assert event.expected_origin == 64500
        assert event.observed_origin is None

    def test_partial_loss_is_not_an_outage(self):
        snaps = [visible(100, "10.0.0.0/24", 5), visible(200, "10.0.0.0/24", 2)]
        assert detect_outages(snaps) == []

    def test_recovery_sets_t_end(self):
        snaps = [
            visible(100, "10.0.0.0/24", 5),
            visible(200, "10.0.0.0/24", 0),
            visible(300, "10.0.0.0/24", 4),
        ]
        (event,) = detect_outages(snaps)
        assert (event.t_start, event.t_end) == (200, 300)

    def test_two_gaps_two_records(self):
        snaps = [
            visible(100, "10.0.0.0/24", 5),
            visible(200, "10.0.0.0/24", 0),
            visible(300, "10.0.0.0/24", 4),
            visible(400, "10.0.0.0/24", 0),
            visible(500, "10.0.0.0/24", 1),
        ]
        events = detect_outages(snaps)
        assert [(e.t_start, e.t_end) for e in events] == [(200, 300), (400, 500)]

    def test_min_vis_guards_flaky_prefixes(self):
        snaps = [visible(100, "10.0.0.0/24", 2), visible(200, "10.0.0.0/24", 0)]
        assert detect_outages(snaps, min_vis=3) == []
        assert len(detect_outages(snaps, min_vis=2)) == 1

    def test_single_snapshot_needs_history(self):
        with pytest.raises(ValueError, match="need history"):
            detect_outages([visible(100, "10.0.0.0/24", 5)])

    def test_non_increasing_timestamps_rejected(self):
        snaps = [visible(200, "10.0.0.0/24", 5), visible(200, "10.0.0.0/24", 0)]
        with pytest.raises(ValueError, match="increasing"):
            detect_outages(snaps)

    def test_registry_attribution(self):
        snaps = [visible(100, "10.0.0.0/24", 5), visible(200, "10.0.0.0/24", 0)]
        (event,) = detect_outages(snaps, registry=REGISTRY)
        assert event.country == "IR"

    def test_moas_prefix_has_no_single_expected_origin(self):
        first = Snapshot.from_entries(
            100,
            [
                entry(100, "vp0", "10.0.0.0/24", [1, 64500]),
                entry(100, "vp1", "10.0.0.0/24", [2, 64501]),
                entry(100, "vp2", "10.0.0.0/24", [3, 64500]),
            ],
        )
        snaps = [first, visible(200, "10.0.0.0/24", 0)]
        (event,) = detect_outages(snaps, min_vis=3)
        assert event.expected_origin is None


class TestCountryAggregation:
    def test_event_rate_buckets(self):
        snaps = [
            Snapshot.from_entries(
                100,
                [entry(100, f"vp{i}", p, [1 + i, 64500]) for i in range(3) for p in
                 ("10.0.0.0/24", "10.0.1.0/24", "10.0.2.0/24", "11.0.0.0/24")],
            ),
            Snapshot.from_entries(
                200,
                [entry(200, f"vp{i}", "11.0.0.0/24", [1 + i, 64500]) for i in range(3)],
            ),
        ]
        events = detect_outages(snaps, registry=REGISTRY)
        rates = country_event_rate(events, REGISTRY)
        assert rates == {"IR": (3, 0)}

    def test_empty_events(self):
        assert country_event_rate([], REGISTRY) == {}

    def test_outage_fraction_44_percent(self):
        # 25 IR prefixes visible, 11 go completely dark at t=200
        prefixes = [f"10.0.{i}.0/24" for i in range(25)]
        t0 = Snapshot.from_entries(
            100,
            [
                entry(100, f"vp{v}", p, [v + 1, 64500])
                for p in prefixes
                for v in range(3)
            ],
        )
        survivors = prefixes[11:]
        t1 = Snapshot.from_entries(
            200,
            [
                entry(200, f"vp{v}", p, [v + 1, 64500])
                for p in survivors
                for v in range(3)
            ],
        )
        events = detect_outages([t0, t1], registry=REGISTRY)
        fraction = country_outage_fraction([t0, t1], events, REGISTRY, "IR", at=200)
        assert fraction == pytest.approx(0.44, abs=1e-12)

    def test_outage_fraction_needs_prior_snapshot(self):
        t0 = visible(100, "10.0.0.0/24", 3)
        with pytest.raises(ValueError):
            country_outage_fraction([t0], [], REGISTRY, "IR", at=100)
