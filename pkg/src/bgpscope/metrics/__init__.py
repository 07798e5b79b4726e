"""Per-country connectivity metrics: internal/external tallies, control
value, complexity, egress bottlenecks, neighbor nationalities, growth."""

from ..addressing import address_span
from .attribution import owned_weights
from .complexity import EgressReport, EgressShare, complexity_score, egress_bottlenecks
from .control import ControlResult, control_value, greedy_cover
from .country import CountryView, country_view, foreign_neighbors, neighbor_histogram
from .growth import growth_series
from .report import MetricsReport, build_report, report_to_json, write_reports_csv

__all__ = [
    "ControlResult",
    "CountryView",
    "EgressReport",
    "EgressShare",
    "MetricsReport",
    "address_span",
    "build_report",
    "complexity_score",
    "control_value",
    "country_view",
    "egress_bottlenecks",
    "foreign_neighbors",
    "greedy_cover",
    "growth_series",
    "neighbor_histogram",
    "owned_weights",
    "report_to_json",
    "write_reports_csv",
]
