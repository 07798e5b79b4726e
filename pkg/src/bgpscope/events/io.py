"""Event serialization: JSON lines and CSV."""

import csv
import json
from collections.abc import Iterable

from ..records import Prefix
from .model import EventRecord

CSV_COLUMNS = ["kind", "prefix", "expected_origin", "observed_origin", "t_start", "t_end", "country"]


def event_to_dict(event: EventRecord) -> dict:
    return {
        "kind": event.kind,
        "prefix": str(event.prefix),
        "expected_origin": event.expected_origin,
        "observed_origin": event.observed_origin,
        "t_start": event.t_start,
        "t_end": event.t_end,
        "country": event.country,
    }


def write_events_jsonl(events: Iterable[EventRecord], fh) -> int:
    count = 0
    for event in events:
        fh.write(json.dumps(event_to_dict(event), sort_keys=True) + "\n")
        count += 1
    return count


def read_events_jsonl(lines: Iterable[str]) -> list[EventRecord]:
    events = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        row = json.loads(line)
        events.append(
            EventRecord(
                kind=row["kind"],
                prefix=Prefix.parse(row["prefix"]),
                expected_origin=row.get("expected_origin"),
                observed_origin=row.get("observed_origin"),
                t_start=row["t_start"],
                t_end=row.get("t_end"),
                country=row.get("country", "ZZ"),
            )
        )
    return events


def write_events_csv(events: Iterable[EventRecord], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in events:
        writer.writerow(
            [
                e.kind,
                str(e.prefix),
                "" if e.expected_origin is None else e.expected_origin,
                "" if e.observed_origin is None else e.observed_origin,
                e.t_start,
                "" if e.t_end is None else e.t_end,
                e.country,
            ]
        )
