"""AS-relationship files, serial-1 style: `a|b|code` with -1 = provider of,
0 = peer.  Sibling links arrive as `a|b|1` rows, usually from a companion
file; both are handled here."""

from collections.abc import Iterable

from ..records import P2C, P2P, S2S, ParseStats, RecordError, RelRecord

_CODES = {"-1": P2C, "0": P2P, "1": S2S}


def parse_asrel(
    lines: Iterable[str],
    strict: bool = False,
    stats: ParseStats | None = None,
) -> list[RelRecord]:
    stats = stats if stats is not None else ParseStats()
    records = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        stats.rows += 1
        fields = line.split("|")
        if len(fields) < 3:
            stats.error(lineno, "expected a|b|code", strict)
            continue
        rel = _CODES.get(fields[2])
        if rel is None:
            stats.error(lineno, f"unknown relationship code {fields[2]!r}", strict)
            continue
        try:
            record = RelRecord(int(fields[0]), int(fields[1]), rel)
        except (ValueError, RecordError) as exc:
            stats.error(lineno, f"bad row: {exc}", strict)
            continue
        records.append(record)
        stats.parsed += 1
    return records
