"""Outage and hijack detection over an ordered snapshot sequence, plus
per-country aggregation."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..graph.relationships import RelIndex
from ..ingest.delegations import Registry
from ..records import Prefix, RelRecord
from .model import MOAS_HIJACK, OUTAGE, SUBPREFIX_HIJACK, EventRecord, Snapshot


@dataclass
class DetectorStats:
    prefixes_checked: int = 0
    no_stable_origin: int = 0


def _check_ordering(snaps: Sequence[Snapshot], minimum: int, why: str):
    if len(snaps) < minimum:
        raise ValueError(f"need history: at least {minimum} snapshots required to {why}")
    for prev, cur in zip(snaps, snaps[1:]):
        if cur.timestamp <= prev.timestamp:
            raise ValueError("snapshots must have strictly increasing timestamps")


def _country_of(prefix: Prefix, registry: Registry | None) -> str:
    return registry.prefix_country(prefix) if registry is not None else "ZZ"


def detect_outages(
    snaps: Sequence[Snapshot],
    min_vis: int = 3,
    registry=None,
) -> list[EventRecord]:
    """Find prefixes that drop from wide visibility to none.

    An outage opens when a prefix seen from at least `min_vis` vantages
    loses all of them in the next snapshot (partial loss is not an outage),
    and closes when any vantage sees it again.  One record per contiguous
    dark gap.
    """
    _check_ordering(snaps, 2, "compare visibility over time")
    reg = Registry.ensure(registry) if registry is not None else None
    all_prefixes = sorted({p for snap in snaps for p in snap.visibility})
    events = []
    for prefix in all_prefixes:
        open_start = None
        expected = None
        for prev, cur in zip(snaps, snaps[1:]):
            if open_start is None:
                if prev.seen_from(prefix) >= min_vis and cur.seen_from(prefix) == 0:
                    open_start = cur.timestamp
                    prev_origins = prev.origins.get(prefix, set())
                    expected = next(iter(prev_origins)) if len(prev_origins) == 1 else None
            elif cur.seen_from(prefix) >= 1:
                events.append(
                    EventRecord(
                        OUTAGE,
                        prefix,
                        expected,
                        None,
                        open_start,
                        cur.timestamp,
                        _country_of(prefix, reg),
                    )
                )
                open_start = None
        if open_start is not None:
            events.append(
                EventRecord(
                    OUTAGE, prefix, expected, None, open_start, None, _country_of(prefix, reg)
                )
            )
    return events


def _stable_origin(window: Sequence[Snapshot], prefix: Prefix) -> int | None:
    """The unique origin announced in every snapshot of the window, if any."""
    origin = None
    for snap in window:
        origins = snap.origins.get(prefix)
        if not origins or len(origins) != 1:
            return None
        (this,) = origins
        if origin is None:
            origin = this
        elif origin != this:
            return None
    return origin


def detect_hijacks(
    snaps: Sequence[Snapshot],
    learn_window: int = 7,
    rels: RelIndex | Iterable[RelRecord] = (),
    registry=None,
    stats: DetectorStats | None = None,
) -> list[EventRecord]:
    """Origin-based hijack detection: MOAS conflicts and more-specific
    announcements against a learned stable origin.

    The stable origin of a prefix at step i is the unique origin announced
    in all of the trailing `learn_window` snapshots.  A different origin on
    the same prefix opens a moas_hijack; a new strictly more-specific
    prefix from a different origin (while the covering origin persists)
    opens a subprefix_hijack.  Origins that are siblings of the stable one
    are exempt.  One record per contiguous episode of the offending origin.
    """
    _check_ordering(snaps, learn_window + 1, f"learn over a window of {learn_window}")
    idx = RelIndex.ensure(rels)
    reg = Registry.ensure(registry) if registry is not None else None
    stats = stats if stats is not None else DetectorStats()

    all_prefixes = sorted({p for snap in snaps for p in snap.origins})
    open_moas: dict[tuple[Prefix, int], EventRecord] = {}
    open_sub: dict[tuple[Prefix, int], EventRecord] = {}
    events: list[EventRecord] = []

    def close(table: dict, key, when: int):
        record = table.pop(key)
        events.append(
            EventRecord(
                record.kind,
                record.prefix,
                record.expected_origin,
                record.observed_origin,
                record.t_start,
                when,
                record.country,
            )
        )

    for i in range(learn_window, len(snaps)):
        window = snaps[i - learn_window : i]
        cur = snaps[i]
        stable: dict[Prefix, int | None] = {}
        for prefix in all_prefixes:
            stable[prefix] = _stable_origin(window, prefix)

        # close episodes whose offending origin disappeared
        for (prefix, origin) in list(open_moas):
            if origin not in cur.origins.get(prefix, set()):
                close(open_moas, (prefix, origin), cur.timestamp)
        for (sub, origin) in list(open_sub):
            if origin not in cur.origins.get(sub, set()):
                close(open_sub, (sub, origin), cur.timestamp)

        for prefix in all_prefixes:
            origins_now = cur.origins.get(prefix)
            if not origins_now:
                continue
            stats.prefixes_checked += 1
            base = stable[prefix]
            if base is None:
                stats.no_stable_origin += 1
                continue
            # same-prefix conflicts
            for origin in sorted(origins_now - {base}):
                if idx.are_siblings(origin, base) or (prefix, origin) in open_moas:
                    continue
                open_moas[(prefix, origin)] = EventRecord(
                    MOAS_HIJACK,
                    prefix,
                    base,
                    origin,
                    cur.timestamp,
                    None,
                    _country_of(prefix, reg),
                )
            # new more-specific announcements under this prefix
            if base not in origins_now:
                continue  # covering origin gone; not a subprefix takeover
            for sub in all_prefixes:
                if sub == prefix or not prefix.contains(sub) or prefix.length >= sub.length:
                    continue
                sub_now = cur.origins.get(sub)
                if not sub_now:
                    continue
                if any(snap.origins.get(sub) for snap in window):
                    continue  # not new; it was announced during the window
                for origin in sorted(sub_now):
                    if origin == base or idx.are_siblings(origin, base):
                        continue
                    if (sub, origin) in open_sub:
                        continue
                    open_sub[(sub, origin)] = EventRecord(
                        SUBPREFIX_HIJACK,
                        sub,
                        base,
                        origin,
                        cur.timestamp,
                        None,
                        _country_of(sub, reg),
                    )
    events.extend(open_moas.values())
    events.extend(open_sub.values())
    events.sort(key=lambda e: (e.t_start, str(e.prefix), e.kind, e.observed_origin or 0))
    return events


def country_event_rate(events: Iterable[EventRecord], registry) -> dict[str, tuple[int, int]]:
    """Per-country (outages, hijacks) counts, attributed by the registered
    country of each event's prefix."""
    reg = Registry.ensure(registry)
    counts: dict[str, list[int]] = {}
    for event in events:
        cc = reg.prefix_country(event.prefix)
        bucket = counts.setdefault(cc, [0, 0])
        if event.kind == OUTAGE:
            bucket[0] += 1
        else:
            bucket[1] += 1
    return {cc: (o, h) for cc, (o, h) in counts.items()}


def country_outage_fraction(
    snaps: Sequence[Snapshot],
    events: Iterable[EventRecord],
    registry,
    cc: str,
    at: int,
) -> float:
    """Fraction of a country's announced prefixes that are dark at time
    `at`: open outages over the prefixes visible in the preceding snapshot."""
    reg = Registry.ensure(registry)
    before = [s for s in snaps if s.timestamp < at]
    if not before:
        raise ValueError(f"no snapshot precedes timestamp {at}")
    baseline = {
        p for p, seen in before[-1].visibility.items() if seen and reg.prefix_country(p) == cc
    }
    if not baseline:
        return 0.0
    dark = {
        e.prefix
        for e in events
        if e.kind == OUTAGE
        and reg.prefix_country(e.prefix) == cc
        and e.t_start <= at
        and (e.t_end is None or e.t_end > at)
    }
    return len(dark & baseline) / len(baseline)
