"""Per-country metrics report and its CSV / JSON serializations."""

import csv
import json
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from ..graph.model import AsGraph
from ..ingest.delegations import Registry
from ..records import V4, RibEntry
from .complexity import complexity_score, egress_bottlenecks
from .control import control_value
from .country import CountryView, country_view, neighbor_histogram

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "country",
    "external_edges",
    "internal_edges",
    "as_observed",
    "as_advertised",
    "as_total",
    "complexity",
    "control_value",
    "points_of_control",
    "announced_addresses",
]


@dataclass
class MetricsReport:
    country: str
    as_total: int
    as_advertised: int
    as_observed: int
    internal_edges: int
    external_edges: int
    external_unknown: int
    total_addr: int
    complexity: float
    control_value: float | None = None
    points_of_control: tuple[int, ...] = ()
    control_covered: int = 0
    bottlenecks: list[dict] = field(default_factory=list)
    cut: list[int] = field(default_factory=list)
    cut_impossible: bool = False
    neighbor_countries: dict[str, int] = field(default_factory=dict)


def build_report(
    g: AsGraph,
    registry,
    cc: str,
    entries: Iterable[RibEntry],
    coverage_target: float = 0.90,
    family: str = V4,
) -> tuple[MetricsReport, CountryView]:
    """Compute the full per-country report; `entries` must be the same rows
    the graph was built from (they drive the path-diversity metrics)."""
    reg = Registry.ensure(registry)
    entries = list(entries)
    view = country_view(g, reg, cc)
    advertised = {asn for asn in view.domestic if g.nodes[asn].prefixes}
    report = MetricsReport(
        country=cc,
        as_total=len(reg.allocated_asns(cc)),
        as_advertised=len(advertised),
        as_observed=len(view.domestic),
        internal_edges=view.internal_edges,
        external_edges=view.external_edges,
        external_unknown=view.external_unknown,
        total_addr=view.total_addr.get(family, 0),
        complexity=complexity_score(view, entries, family) if view.domestic else 0.0,
    )
    try:
        control = control_value(view, coverage_target, len(view.domestic), family)
        report.control_value = control.value
        report.points_of_control = control.points_of_control
        report.control_covered = control.covered
    except ValueError as exc:
        log.warning("%s: control value unavailable: %s", cc, exc)
    if view.frontier:
        egress = egress_bottlenecks(view, entries, g, family)
        report.bottlenecks = [
            {"asn": s.asn, "share": s.share, "addresses": s.crossings_weight}
            for s in egress.shares
        ]
        report.cut = sorted(egress.cut.nodes)
        report.cut_impossible = egress.cut.impossible
    report.neighbor_countries = neighbor_histogram(view, g)
    return report, view


def report_csv_row(report: MetricsReport) -> list:
    return [
        report.country,
        report.external_edges,
        report.internal_edges,
        report.as_observed,
        report.as_advertised,
        report.as_total,
        f"{report.complexity:.6f}",
        "" if report.control_value is None else f"{report.control_value:.6f}",
        len(report.points_of_control),
        report.total_addr,
    ]


def write_reports_csv(reports: list[MetricsReport], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in sorted(reports, key=lambda r: r.country):
        writer.writerow(report_csv_row(report))


def report_to_json(report: MetricsReport) -> str:
    payload = {
        "country": report.country,
        "ases": {
            "allocated": report.as_total,
            "advertised": report.as_advertised,
            "observed": report.as_observed,
        },
        "connections": {
            "internal": report.internal_edges,
            "external": report.external_edges,
            "external_unknown_country": report.external_unknown,
        },
        "announced_addresses": report.total_addr,
        "complexity_bits": report.complexity,
        "control": {
            "value": report.control_value,
            "points_of_control": sorted(report.points_of_control),
            "covered_addresses": report.control_covered,
        },
        "egress": {
            "bottlenecks": report.bottlenecks,
            "min_cut": report.cut,
            "cut_impossible": report.cut_impossible,
        },
        "neighbor_countries": dict(sorted(report.neighbor_countries.items())),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
