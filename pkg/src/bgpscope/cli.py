"""Command-line front end: ingest -> graph -> metrics -> events -> export.

Subcommands write result files under --out; diagnostics go to stderr.
Exit codes: 0 success, 1 runtime failure, 2 usage/config error.
Identical inputs and configuration produce byte-identical outputs.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, load_run_config
from .events.detect import country_event_rate, detect_hijacks, detect_outages
from .events.io import read_events_jsonl, write_events_csv, write_events_jsonl
from .events.model import Snapshot
from .events.regression import event_regression
from .graph.build import build_graph, major_nodes, prune_edges
from .graph.export import to_dot, to_gexf, write_edge_csv
from .graph.model import AsGraph
from .ingest.asrel import parse_asrel
from .ingest.delegations import Registry, parse_delegations
from .ingest.mrt import MrtParseError, MrtStats, parse_mrt
from .records import ParseStats, RecordError, is_bogon
from .ingest.tabletext import parse_table_text, write_table_text
from .metrics.country import country_view, foreign_neighbors
from .metrics.report import build_report, report_to_json, write_reports_csv

log = logging.getLogger("bgpscope")


def _require_files(paths: list[str], what: str) -> list[Path]:
    if not paths:
        raise ConfigError(f"no {what} provided")
    out = []
    for p in paths:
        path = Path(p)
        if not path.exists():
            raise ConfigError(f"{what} not found: {p}")
        out.append(path)
    return out


def _expand_inputs(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(sorted(child for child in path.iterdir() if child.is_file()))
        else:
            files.append(path)
    return files


def _load_table_entries(cfg: RunConfig, paths: list[str]):
    entries = []
    for path in _require_files(paths, "routing table"):
        stats = ParseStats()
        with open(path, encoding="utf-8") as fh:
            entries.extend(parse_table_text(fh, strict=cfg.strict, stats=stats))
        for lineno, message in stats.errors:
            log.warning("%s:%d: %s", path, lineno, message)
    return entries


def _load_registry(cfg: RunConfig) -> Registry:
    if not cfg.delegations:
        raise ConfigError("a delegations file is required for this command")
    path = _require_files([cfg.delegations], "delegations file")[0]
    stats = ParseStats()
    with open(path, encoding="utf-8") as fh:
        records = parse_delegations(fh, stats=stats)
    for lineno, message in stats.errors:
        log.warning("%s:%d: %s", path, lineno, message)
    return Registry(records)


def _load_rels(cfg: RunConfig):
    records = []
    for path in _expand_inputs(cfg.asrel):
        if not path.exists():
            raise ConfigError(f"relationship file not found: {path}")
        stats = ParseStats()
        with open(path, encoding="utf-8") as fh:
            records.extend(parse_asrel(fh, strict=cfg.strict, stats=stats))
        for lineno, message in stats.errors:
            log.warning("%s:%d: %s", path, lineno, message)
    return records


def _build(cfg: RunConfig, entries, registry):
    g = build_graph(entries, registry, _load_rels(cfg))
    return prune_edges(g, cfg.prune_min_obs, cfg.drop_isolated)


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_ingest(cfg: RunConfig, args) -> int:
    """Parse raw MRT dumps and text tables into one canonical table file."""
    out = _out_dir(cfg)
    inputs = _expand_inputs(cfg.mrt) + _expand_inputs(cfg.tables)
    for path in inputs:
        if not path.exists():
            raise ConfigError(f"input not found: {path}")
    if not inputs:
        log.warning("no input files; writing an empty canonical table")

    entries = []
    mrt_stats = MrtStats()
    text_stats = ParseStats()
    bogons_dropped = 0
    files_failed = 0
    mrt_inputs = set(_expand_inputs(cfg.mrt))
    for path in inputs:
        try:
            if path in mrt_inputs:
                parsed = list(parse_mrt(path.read_bytes(), collector=cfg.collector, stats=mrt_stats))
            else:
                with open(path, encoding="utf-8") as fh:
                    parsed = list(parse_table_text(fh, strict=cfg.strict, stats=text_stats))
        except (MrtParseError, RecordError) as exc:
            if cfg.strict:
                raise ConfigError(f"{path}: {exc}") from exc
            log.warning("%s: %s (file skipped)", path, exc)
            files_failed += 1
            continue
        if not cfg.keep_bogons:
            kept = [e for e in parsed if not is_bogon(e.prefix)]
            bogons_dropped += len(parsed) - len(kept)
            parsed = kept
        entries.extend(parsed)

    table_path = out / "tables.txt"
    with open(table_path, "w", encoding="utf-8") as fh:
        rows = write_table_text(entries, fh)
    summary = {
        "input_files": len(inputs),
        "files_failed": files_failed,
        "rows_written": rows,
        "bogons_dropped": bogons_dropped,
        "mrt": {
            "records": mrt_stats.records,
            "entries": mrt_stats.entries,
            "as_set_skipped": mrt_stats.as_set_skipped,
            "bad_entries": mrt_stats.bad_entries,
            "unknown_skipped": mrt_stats.unknown_skipped,
        },
        "text": {
            "rows": text_stats.rows,
            "parsed": text_stats.parsed,
            "skipped": text_stats.skipped,
        },
    }
    _write_json(out / "ingest_summary.json", summary)
    log.info("wrote %d canonical rows to %s", rows, table_path)
    return 0


def cmd_graph(cfg: RunConfig, args) -> int:
    """Build, annotate and prune the AS graph; write the edge list."""
    out = _out_dir(cfg)
    entries = _load_table_entries(cfg, cfg.tables)
    registry = _load_registry(cfg) if cfg.delegations else None
    g = _build(cfg, entries, registry)
    with open(out / "edges.csv", "w", encoding="utf-8") as fh:
        write_edge_csv(g, fh)
    summary = {
        "nodes": len(g.nodes),
        "edges": len(g.edges),
        "tables": g.tables,
        "major_nodes": len(major_nodes(g, cfg.major_min_prefixes)),
        "prune_min_obs": cfg.prune_min_obs,
    }
    _write_json(out / "graph_summary.json", summary)
    log.info("graph: %d nodes, %d edges from %d tables", len(g.nodes), len(g.edges), g.tables)
    return 0


def cmd_metrics(cfg: RunConfig, args) -> int:
    """Write per-country metric reports (CSV + JSON)."""
    out = _out_dir(cfg)
    registry = _load_registry(cfg)
    entries = _load_table_entries(cfg, cfg.tables)
    g = _build(cfg, entries, registry)
    if args.all:
        countries = sorted(registry.countries())
    else:
        countries = [cc.upper() for cc in args.country or []]
        if not countries:
            raise ConfigError("give at least one --country or use --all")
        unknown = [cc for cc in countries if cc not in registry.countries()]
        if unknown:
            raise ConfigError(f"unknown country code(s): {', '.join(unknown)}")
    reports = []
    for cc in countries:
        report, _view = build_report(
            g, registry, cc, entries, cfg.coverage_target, cfg.family
        )
        reports.append(report)
        (out / f"metrics_{cc}.json").write_text(report_to_json(report), encoding="utf-8")
    with open(out / "metrics.csv", "w", encoding="utf-8") as fh:
        write_reports_csv(reports, fh)
    log.info("wrote metrics for %d countries", len(reports))
    return 0


def _load_snapshots(cfg: RunConfig, paths: list[str]) -> list[Snapshot]:
    snaps = []
    for path in _require_files(paths, "snapshot table"):
        stats = ParseStats()
        with open(path, encoding="utf-8") as fh:
            entries = list(parse_table_text(fh, strict=cfg.strict, stats=stats))
        if not entries:
            log.warning("%s: empty snapshot", path)
            continue
        timestamps = {e.timestamp for e in entries}
        ts = max(timestamps)
        if len(timestamps) > 1:
            log.warning("%s: mixed timestamps; using %d", path, ts)
        snaps.append(Snapshot.from_entries(ts, entries))
    snaps.sort(key=lambda s: s.timestamp)
    return snaps


def cmd_events(cfg: RunConfig, args) -> int:
    """Detect outages and hijacks over ordered snapshots; fit the
    events-vs-AS-count regression when enough countries are involved."""
    out = _out_dir(cfg)
    registry = _load_registry(cfg)
    rels = _load_rels(cfg)
    snaps = _load_snapshots(cfg, args.snapshots)
    events = detect_outages(snaps, cfg.outage_min_vis, registry)
    if len(snaps) >= cfg.hijack_learn_window + 1:
        events.extend(
            detect_hijacks(snaps, cfg.hijack_learn_window, rels, registry)
        )
    else:
        log.warning(
            "only %d snapshots; hijack detection needs %d, skipped",
            len(snaps),
            cfg.hijack_learn_window + 1,
        )
    events.sort(key=lambda e: (e.t_start, str(e.prefix), e.kind, e.observed_origin or 0))
    with open(out / "events.jsonl", "w", encoding="utf-8") as fh:
        count = write_events_jsonl(events, fh)
    with open(out / "events.csv", "w", encoding="utf-8") as fh:
        write_events_csv(events, fh)
    log.info("wrote %d events", count)

    rates = country_event_rate(events, registry)
    points = [
        (cc, len(registry.allocated_asns(cc)), outages + hijacks)
        for cc, (outages, hijacks) in sorted(rates.items())
        if cc != "ZZ" and registry.allocated_asns(cc)
    ]
    if len(points) >= 3:
        result = event_regression(points, cfg.regression_level)
        (out / "regression.json").write_text(result.to_json(), encoding="utf-8")
    else:
        log.warning("regression skipped: only %d countries with events", len(points))
    return 0


def cmd_regress(cfg: RunConfig, args) -> int:
    """Fit the regression from an events file or a prepared points CSV."""
    out = _out_dir(cfg)
    if args.points:
        import csv as _csv

        points = []
        with open(_require_files([args.points], "points file")[0], encoding="utf-8") as fh:
            for row in _csv.DictReader(fh):
                points.append(
                    (row["country"], float(row["as_count"]), float(row["event_count"]))
                )
    elif args.events:
        registry = _load_registry(cfg)
        with open(_require_files([args.events], "events file")[0], encoding="utf-8") as fh:
            events = read_events_jsonl(fh)
        rates = country_event_rate(events, registry)
        points = [
            (cc, len(registry.allocated_asns(cc)), outages + hijacks)
            for cc, (outages, hijacks) in sorted(rates.items())
            if cc != "ZZ" and registry.allocated_asns(cc)
        ]
    else:
        raise ConfigError("give --events or --points")
    result = event_regression(points, cfg.regression_level, log_scale=not args.identity)
    (out / "regression.json").write_text(result.to_json(), encoding="utf-8")
    log.info("regression over %d points; flagged: %s", len(points), ", ".join(result.flagged) or "none")
    return 0


def cmd_export(cfg: RunConfig, args) -> int:
    """Export the graph (or one country's subgraph) as DOT, GEXF or CSV."""
    out = _out_dir(cfg)
    entries = _load_table_entries(cfg, cfg.tables)
    registry = _load_registry(cfg) if (cfg.delegations or args.what == "country") else None
    g = _build(cfg, entries, registry)
    name = "graph"
    if args.what == "country":
        if not args.cc:
            raise ConfigError("country export needs --cc")
        cc = args.cc.upper()
        view = country_view(g, registry, cc)
        keep = view.domestic | foreign_neighbors(view, g)
        g = g.subgraph(keep)
        name = f"country_{cc}"
    if args.fmt == "dot":
        path = out / f"{name}.dot"
        path.write_text(to_dot(g), encoding="utf-8")
    elif args.fmt == "gexf":
        path = out / f"{name}.gexf"
        path.write_text(to_gexf(g), encoding="utf-8")
    else:
        path = out / f"{name}.csv"
        with open(path, "w", encoding="utf-8") as fh:
            write_edge_csv(g, fh)
    log.info("wrote %s", path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bgpscope",
        description="AS-graph reconstruction and national connectivity metrics from BGP data",
    )
    parser.add_argument("--config", help="key=value run configuration file")
    parser.add_argument("--out", dest="out_dir", help="output directory")
    parser.add_argument("--strict", action="store_true", default=None, help="abort on any parse error")
    parser.add_argument("--family", choices=["v4", "v6"], help="address family for metrics")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse MRT/text inputs into a canonical table")
    p.add_argument("--mrt", action="append", default=None, help="MRT file or directory (repeatable)")
    p.add_argument("--tables", action="append", default=None, help="text table file (repeatable)")
    p.add_argument("--collector", help="collector name used in vantage ids")
    p.add_argument("--keep-bogons", dest="keep_bogons", action="store_true", default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("graph", help="build and prune the AS graph")
    _common_graph_args(p)
    p.add_argument("--prune-min-obs", dest="prune_min_obs", type=int)
    p.add_argument("--drop-isolated", dest="drop_isolated", action="store_true", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("metrics", help="per-country connectivity reports")
    _common_graph_args(p)
    p.add_argument("--prune-min-obs", dest="prune_min_obs", type=int)
    p.add_argument("--country", action="append", help="ISO country code (repeatable)")
    p.add_argument("--all", action="store_true", help="every country in the registry")
    p.add_argument("--coverage-target", dest="coverage_target", type=float)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("events", help="outage/hijack detection over snapshots")
    p.add_argument("snapshots", nargs="+", help="canonical table files, one per snapshot")
    p.add_argument("--delegations")
    p.add_argument("--asrel", action="append", default=None)
    p.add_argument("--min-vis", dest="outage_min_vis", type=int)
    p.add_argument("--learn-window", dest="hijack_learn_window", type=int)
    p.add_argument("--level", dest="regression_level", type=float)
    p.set_defaults(func=cmd_events)

    p = sub.add_parser("regress", help="events-vs-AS-count regression")
    p.add_argument("--events", help="events.jsonl from the events command")
    p.add_argument("--points", help="CSV with country,as_count,event_count")
    p.add_argument("--delegations")
    p.add_argument("--level", dest="regression_level", type=float)
    p.add_argument("--identity", action="store_true", help="fit raw values, no log transform")
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("export", help="write DOT/GEXF/CSV graph exports")
    _common_graph_args(p)
    p.add_argument("--prune-min-obs", dest="prune_min_obs", type=int)
    p.add_argument("--what", choices=["graph", "country"], default="graph")
    p.add_argument("--cc", help="country code for --what country")
    p.add_argument("--fmt", choices=["dot", "gexf", "csv"], default="dot")
    p.set_defaults(func=cmd_export)
    return parser


def _common_graph_args(p: argparse.ArgumentParser):
    p.add_argument("--tables", action="append", default=None, help="canonical table file (repeatable)")
    p.add_argument("--delegations", help="RIR delegated-extended file")
    p.add_argument("--asrel", action="append", default=None, help="relationship file (repeatable)")


_CONFIG_KEYS = (
    "mrt",
    "tables",
    "delegations",
    "asrel",
    "out_dir",
    "collector",
    "prune_min_obs",
    "major_min_prefixes",
    "coverage_target",
    "outage_min_vis",
    "hijack_learn_window",
    "regression_level",
    "family",
    "strict",
    "keep_bogons",
    "drop_isolated",
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
    )
    overrides = {key: getattr(args, key, None) for key in _CONFIG_KEYS}
    try:
        cfg = load_run_config(args.config, overrides)
        return args.func(cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # data preconditions (e.g. "need history") are usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
