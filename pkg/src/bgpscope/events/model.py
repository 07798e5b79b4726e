"""Snapshot sequence model for event detection: each snapshot is one
global routing-table set at a point in time."""

from collections.abc import Iterable
from dataclasses import dataclass, field

from ..records import Prefix, RibEntry

OUTAGE = "outage"
MOAS_HIJACK = "moas_hijack"
SUBPREFIX_HIJACK = "subprefix_hijack"


@dataclass
class Snapshot:
    timestamp: int
    entries: list[RibEntry] = field(default_factory=list)
    visibility: dict[Prefix, set[str]] = field(default_factory=dict)
    origins: dict[Prefix, set[int]] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, timestamp: int, entries: Iterable[RibEntry]) -> "Snapshot":
        snap = cls(timestamp=timestamp, entries=list(entries))
        for entry in snap.entries:
            snap.visibility.setdefault(entry.prefix, set()).add(entry.vantage)
            snap.origins.setdefault(entry.prefix, set()).add(entry.origin)
        return snap

    def seen_from(self, prefix: Prefix) -> int:
        return len(self.visibility.get(prefix, ()))


@dataclass(frozen=True)
class EventRecord:
    """A detected routing incident.

    Outages have no observed origin; hijacks pair the stable (expected)
    origin with the offending one.  t_end is None while the condition still
    holds at the end of the snapshot sequence.
    """

    kind: str
    prefix: Prefix
    expected_origin: int | None
    observed_origin: int | None
    t_start: int
    t_end: int | None
    country: str = "ZZ"

    def __post_init__(self):
        if self.kind == OUTAGE:
            if self.observed_origin is not None:
                raise ValueError("outage records carry no observed origin")
        elif self.kind in (MOAS_HIJACK, SUBPREFIX_HIJACK):
            if self.expected_origin == self.observed_origin:
                raise ValueError("hijack needs distinct expected/observed origins")
        else:
            raise ValueError(f"unknown event kind {self.kind!r}")
