"""Address-space arithmetic over Prefix sets: interval merging, span
counting, CIDR decomposition, and longest-prefix lookup."""

from collections.abc import Iterable

from .records import V4, V6, Prefix, RecordError


def merge_intervals(intervals: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Merge half-open [start, end) integer intervals."""
    merged: list[tuple[int, int]] = []
    for start, end in sorted(intervals):
        if merged and start <= merged[-1][1]:
            last_start, last_end = merged[-1]
            merged[-1] = (last_start, max(last_end, end))
        else:
            merged.append((start, end))
    return merged


def address_span(prefixes: Iterable[Prefix]) -> dict[str, int]:
    """Deduplicated address count of the union, per family.

    Overlapping and adjacent blocks are merged first, so a /8 plus a /16
    inside it counts the /8 only.
    """
    by_family: dict[str, list[tuple[int, int]]] = {V4: [], V6: []}
    for p in prefixes:
        by_family[p.family].append((p.first, p.last + 1))
    return {
        fam: sum(end - start for start, end in merge_intervals(ivals))
        for fam, ivals in by_family.items()
    }


def cidr_decompose(family: str, base: int, count: int) -> list[Prefix]:
    """Decompose an address range of `count` addresses starting at `base`
    into the minimal list of CIDR prefixes.

    Greedy: at each step take the largest power-of-two block that is both
    aligned on the current start and no larger than what remains.
    """
    if count < 1:
        raise RecordError("address count must be >= 1")
    bits = 32 if family == V4 else 128
    if base + count > 2**bits:
        raise RecordError("address range exceeds the family's space")
    out: list[Prefix] = []
    cur = base
    remaining = count
    while remaining:
        align = cur & -cur if cur else 1 << bits
        size = min(align, 1 << (remaining.bit_length() - 1))
        out.append(Prefix(family, cur, bits - size.bit_length() + 1))
        cur += size
        remaining -= size
    return out


class PrefixMatcher:
    """Longest-prefix lookup, e.g. attributing an announced prefix to the
    registry block that delegated it."""

    def __init__(self, entries: Iterable[tuple[Prefix, object]]):
        self._by_family: dict[str, dict[int, dict[int, object]]] = {V4: {}, V6: {}}
        for prefix, value in entries:
            self._by_family[prefix.family].setdefault(prefix.length, {})[prefix.base] = value

    def lookup(self, prefix: Prefix):
        """Value of the most-specific entry covering `prefix`, or None."""
        tables = self._by_family[prefix.family]
        for length in sorted(tables, reverse=True):
            if length > prefix.length:
                continue
            base = (prefix.base >> (prefix.bits - length) << (prefix.bits - length)) if length else 0
            hit = tables[length].get(base)
            if hit is not None:
                return hit
        return None
