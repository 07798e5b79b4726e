"""bgpscope: rebuild the AS-level Internet graph from BGP routing tables
and measure national connectivity: internal/external structure, control
value, complexity, egress gatekeepers, and outage/hijack statistics."""

__version__ = "0.1.0"

from .addressing import address_span, cidr_decompose, merge_intervals
from .ingest import (
    AsPath,
    Prefix,
    RecordError,
    Registry,
    RegistryRecord,
    RelRecord,
    RibEntry,
    normalize_path,
    parse_asrel,
    parse_delegations,
    parse_mrt,
    parse_table_text,
)
from .graph import (
    AsGraph,
    RelIndex,
    betweenness,
    build_graph,
    customer_cone,
    major_nodes,
    min_vertex_cut,
    prune_edges,
    valley_free,
)
from .metrics import (
    CountryView,
    complexity_score,
    control_value,
    country_view,
    egress_bottlenecks,
    growth_series,
    neighbor_histogram,
)
from .events import (
    EventRecord,
    Snapshot,
    country_event_rate,
    detect_hijacks,
    detect_outages,
    event_regression,
)
