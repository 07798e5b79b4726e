"""Plain-text routing-table format: one `timestamp|vantage|prefix|path`
line per RIB row, `#` comments, UTF-8.  This is the canonical on-disk form
the rest of the pipeline consumes; parse/format round-trip exactly."""

from collections.abc import Iterable, Iterator

from ..records import ParseStats, Prefix, RecordError, RibEntry, normalize_path


def parse_table_text(
    lines: Iterable[str],
    strict: bool = False,
    stats: ParseStats | None = None,
) -> Iterator[RibEntry]:
    """Parse text-table lines into RibEntry records.

    Lenient mode (default) skips bad lines and records (lineno, message) in
    `stats`; strict mode raises on the first bad line.
    """
    stats = stats if stats is not None else ParseStats()
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        stats.rows += 1
        fields = line.split("|")
        if len(fields) != 4:
            stats.error(lineno, f"expected 4 pipe-separated fields, got {len(fields)}", strict)
            continue
        ts_text, vantage, prefix_text, path_text = fields
        try:
            timestamp = int(ts_text)
        except ValueError:
            stats.error(lineno, f"bad timestamp {ts_text!r}", strict)
            continue
        try:
            prefix = Prefix.parse(prefix_text)
        except RecordError as exc:
            stats.error(lineno, str(exc), strict)
            continue
        try:
            raw = [int(tok) for tok in path_text.split()]
        except ValueError:
            stats.error(lineno, f"non-numeric ASN in path {path_text!r}", strict)
            continue
        try:
            entry = RibEntry(timestamp, vantage, prefix, normalize_path(raw))
        except RecordError as exc:
            stats.error(lineno, str(exc), strict)
            continue
        stats.parsed += 1
        yield entry


def format_entry(entry: RibEntry) -> str:
    """Canonical single-line form; parse_table_text inverts it exactly."""
    hops = " ".join(str(a) for a in entry.path)
    return f"{entry.timestamp}|{entry.vantage}|{entry.prefix}|{hops}"


def write_table_text(entries: Iterable[RibEntry], fh) -> int:
    """Write entries in canonical sorted order, deduplicated; returns count."""
    lines = sorted({format_entry(e) for e in entries})
    for line in lines:
        fh.write(line + "\n")
    return len(lines)
