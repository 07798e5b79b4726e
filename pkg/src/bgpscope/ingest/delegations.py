"""RIR delegated-extended statistics: `registry|cc|type|value|count|date|status`
rows binding ASNs and address blocks to countries."""

from collections.abc import Iterable

from ..addressing import PrefixMatcher, cidr_decompose
from ..records import (
    ASN_KIND,
    V4,
    V4BLOCK_KIND,
    V6,
    V6BLOCK_KIND,
    ParseStats,
    Prefix,
    RecordError,
    RegistryRecord,
    is_private_asn,
)

_STATUSES = ("allocated", "assigned")


def _parse_cc(token: str) -> str:
    token = token.strip().upper()
    if len(token) == 2 and token.isalpha():
        return token
    return "ZZ"


def parse_delegations(lines: Iterable[str], stats: ParseStats | None = None) -> list[RegistryRecord]:
    """Parse delegated-extended rows into RegistryRecords.

    asn rows with count n expand to n consecutive single-ASN records; ipv4
    rows decompose their address count into minimal CIDR prefixes (one
    record per prefix); ipv6 rows carry a prefix length in the count field.
    Version headers and summary lines are skipped; unknown type tokens are
    skipped with a warning.
    """
    stats = stats if stats is not None else ParseStats()
    records: list[RegistryRecord] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("|")
        if len(fields) >= 6 and fields[5] == "summary":
            continue
        if fields and fields[0].isdigit():  # version header
            continue
        stats.rows += 1
        if len(fields) < 7:
            stats.error(lineno, f"expected at least 7 fields, got {len(fields)}", strict=False)
            continue
        registry, cc_text, kind_text, value_text, count_text, date_text, status_text = fields[:7]
        cc = _parse_cc(cc_text)
        try:
            date = int(date_text)
            if date and len(date_text) != 8:
                raise ValueError
        except ValueError:
            stats.errors.append((lineno, f"malformed date {date_text!r}"))
            date = 0
        status = status_text if status_text in _STATUSES else "other"
        try:
            if kind_text == "asn":
                start = int(value_text)
                count = int(count_text)
                for asn in range(start, start + count):
                    records.append(RegistryRecord(registry, cc, ASN_KIND, asn, 0, date, status))
            elif kind_text == "ipv4":
                base = Prefix.parse(value_text + "/32").base
                count = int(count_text)
                for prefix in cidr_decompose(V4, base, count):
                    records.append(
                        RegistryRecord(registry, cc, V4BLOCK_KIND, prefix, prefix.span, date, status)
                    )
            elif kind_text == "ipv6":
                prefix = Prefix.parse(f"{value_text}/{int(count_text)}")
                records.append(
                    RegistryRecord(registry, cc, V6BLOCK_KIND, prefix, prefix.span, date, status)
                )
            else:
                stats.error(lineno, f"unknown type token {kind_text!r}", strict=False)
                continue
        except (RecordError, ValueError) as exc:
            stats.error(lineno, f"bad row: {exc}", strict=False)
            continue
        stats.parsed += 1
    return records


class Registry:
    """Lookup index over RegistryRecords: ASN -> country, longest-prefix
    country attribution, and per-country allocation accounting."""

    def __init__(self, records: Iterable[RegistryRecord]):
        self.records = list(records)
        self._asn_cc: dict[int, str] = {}
        block_entries = []
        for rec in self.records:
            if rec.kind == ASN_KIND:
                self._asn_cc.setdefault(rec.value, rec.country)
            else:
                block_entries.append((rec.value, rec.country))
        self._blocks = PrefixMatcher(block_entries)

    @classmethod
    def ensure(cls, obj) -> "Registry":
        return obj if isinstance(obj, Registry) else cls(obj)

    def asn_country(self, asn: int) -> str:
        """Registered country of an ASN; ZZ when unknown or private."""
        if is_private_asn(asn):
            return "ZZ"
        return self._asn_cc.get(asn, "ZZ")

    def prefix_country(self, prefix: Prefix) -> str:
        """Country of the most-specific delegated block covering `prefix`."""
        return self._blocks.lookup(prefix) or "ZZ"

    def countries(self) -> set[str]:
        return {rec.country for rec in self.records if rec.country != "ZZ"}

    def allocated_asns(self, cc: str) -> set[int]:
        return {
            rec.value
            for rec in self.records
            if rec.kind == ASN_KIND and rec.country == cc and rec.status in _STATUSES
        }

    def asn_allocation_years(self) -> list[tuple[str, int]]:
        """(country, allocation year) per allocated ASN; undated rows excluded."""
        out = []
        for rec in self.records:
            if rec.kind == ASN_KIND and rec.status in _STATUSES and rec.date:
                out.append((rec.country, rec.date // 10000))
        return out
