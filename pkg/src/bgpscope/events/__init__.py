"""BGP event detection: outages, hijacks, per-country rates, and the
events-vs-size regression."""

from .detect import (
    DetectorStats,
    country_event_rate,
    country_outage_fraction,
    detect_hijacks,
    detect_outages,
)
from .io import read_events_jsonl, write_events_csv, write_events_jsonl
from .model import MOAS_HIJACK, OUTAGE, SUBPREFIX_HIJACK, EventRecord, Snapshot
from .regression import RegressionPoint, RegressionResult, event_regression

__all__ = [
    "DetectorStats",
    "EventRecord",
    "MOAS_HIJACK",
    "OUTAGE",
    "RegressionPoint",
    "RegressionResult",
    "SUBPREFIX_HIJACK",
    "Snapshot",
    "country_event_rate",
    "country_outage_fraction",
    "detect_hijacks",
    "detect_outages",
    "event_regression",
    "read_events_jsonl",
    "write_events_csv",
    "write_events_jsonl",
]
