"""MRT TABLE_DUMP_V2 parser (RFC 6396 subset, big-endian).

Handles type 13 with subtypes 1 (PEER_INDEX_TABLE), 2 (RIB_IPV4_UNICAST)
and 4 (RIB_IPV6_UNICAST); everything else is skipped with a warning
counter.  AS paths are decoded as 4-byte ASNs (AS4), AS_SEQUENCE segments
concatenated; entries carrying an AS_SET segment are skipped and counted
(the aggregate adjacency is ambiguous and would corrupt edge counts).
"""

import io
import ipaddress
from dataclasses import dataclass
from struct import unpack
from typing import BinaryIO, Iterator

from ..records import V4, V6, Prefix, RecordError, RibEntry, normalize_path

MRT_TABLE_DUMP_V2 = 13
SUB_PEER_INDEX = 1
SUB_RIB_IPV4 = 2
SUB_RIB_IPV6 = 4

ATTR_AS_PATH = 2
SEG_AS_SET = 1
SEG_AS_SEQUENCE = 2
SEG_CONFED_SEQUENCE = 3
SEG_CONFED_SET = 4


class MrtParseError(RecordError):
    """Stream-level corruption; carries the offending record's byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (record at byte offset {offset})")
        self.offset = offset


@dataclass
class MrtStats:
    records: int = 0
    entries: int = 0
    as_set_skipped: int = 0
    bad_entries: int = 0
    unknown_skipped: int = 0


class _AsSetSegment(Exception):
    pass


def _decode_as_path(buf: bytes, offset: int) -> list[int]:
    """Concatenate AS_SEQUENCE segments of an AS_PATH attribute (4-byte ASNs)."""
    hops: list[int] = []
    pos = 0
    while pos < len(buf):
        if pos + 2 > len(buf):
            raise MrtParseError("truncated AS_PATH segment header", offset)
        seg_type, count = buf[pos], buf[pos + 1]
        pos += 2
        if pos + 4 * count > len(buf):
            raise MrtParseError("truncated AS_PATH segment", offset)
        if seg_type in (SEG_AS_SET, SEG_CONFED_SET):
            raise _AsSetSegment()
        if seg_type not in (SEG_AS_SEQUENCE, SEG_CONFED_SEQUENCE):
            raise MrtParseError(f"unknown AS_PATH segment type {seg_type}", offset)
        for i in range(count):
            hops.append(unpack(">I", buf[pos + 4 * i : pos + 4 * i + 4])[0])
        pos += 4 * count
    return hops


def _as_path_from_attrs(buf: bytes, offset: int) -> list[int] | None:
    """Walk the BGP attribute block and decode AS_PATH; None when absent."""
    pos = 0
    path = None
    while pos < len(buf):
        if pos + 3 > len(buf):
            raise MrtParseError("truncated attribute header", offset)
        flags, attr_type = buf[pos], buf[pos + 1]
        if flags & 0x10:  # extended length
            if pos + 4 > len(buf):
                raise MrtParseError("truncated attribute header", offset)
            attr_len = unpack(">H", buf[pos + 2 : pos + 4])[0]
            pos += 4
        else:
            attr_len = buf[pos + 2]
            pos += 3
        if pos + attr_len > len(buf):
            raise MrtParseError("attribute overruns entry", offset)
        if attr_type == ATTR_AS_PATH:
            path = _decode_as_path(buf[pos : pos + attr_len], offset)
        pos += attr_len
    return path


def _decode_prefix(buf: bytes, pos: int, family: str, offset: int) -> tuple[Prefix, int]:
    if pos + 1 > len(buf):
        raise MrtParseError("truncated RIB prefix", offset)
    plen = buf[pos]
    pos += 1
    nbytes = (plen + 7) // 8
    total = 4 if family == V4 else 16
    if plen > total * 8:
        raise MrtParseError(f"prefix length {plen} out of range", offset)
    if pos + nbytes > len(buf):
        raise MrtParseError("truncated RIB prefix", offset)
    raw = buf[pos : pos + nbytes] + bytes(total - nbytes)
    base = int.from_bytes(raw, "big")
    # trailing bits below the mask are irrelevant per RFC 4271; zero them
    bits = total * 8
    if plen < bits:
        base &= ~((1 << (bits - plen)) - 1)
    return Prefix(family, base, plen), pos + nbytes


class _PeerIndex:
    def __init__(self, payload: bytes, offset: int):
        if len(payload) < 8:
            raise MrtParseError("truncated PEER_INDEX_TABLE", offset)
        self.collector_id = str(ipaddress.IPv4Address(payload[0:4]))
        view_len = unpack(">H", payload[4:6])[0]
        pos = 6 + view_len
        if pos + 2 > len(payload):
            raise MrtParseError("truncated PEER_INDEX_TABLE", offset)
        count = unpack(">H", payload[pos : pos + 2])[0]
        pos += 2
        self.peer_as: list[int] = []
        for _ in range(count):
            if pos + 5 > len(payload):
                raise MrtParseError("truncated peer entry", offset)
            peer_type = payload[pos]
            ip_len = 16 if peer_type & 0x1 else 4
            as_len = 4 if peer_type & 0x2 else 2
            pos += 5 + ip_len
            if pos + as_len > len(payload):
                raise MrtParseError("truncated peer entry", offset)
            fmt = ">I" if as_len == 4 else ">H"
            self.peer_as.append(unpack(fmt, payload[pos : pos + as_len])[0])
            pos += as_len


def parse_mrt(
    data: bytes | BinaryIO,
    collector: str | None = None,
    stats: MrtStats | None = None,
) -> Iterator[RibEntry]:
    """Parse a TABLE_DUMP_V2 byte stream into RibEntry records.

    Yields one entry per (prefix, RIB entry) pair; vantage is
    "<collector>:<peer AS>" with the peer AS resolved through the
    PEER_INDEX_TABLE (which must precede any RIB record).  `collector`
    defaults to the collector BGP ID from the peer index.
    """
    fh = io.BytesIO(data) if isinstance(data, (bytes, bytearray)) else data
    stats = stats if stats is not None else MrtStats()
    peer_index: _PeerIndex | None = None
    offset = 0
    while True:
        header = fh.read(12)
        if not header:
            return
        if len(header) < 12:
            raise MrtParseError("truncated MRT header", offset)
        ts, mrt_type, subtype, length = unpack(">IHHI", header)
        payload = fh.read(length)
        if len(payload) < length:
            raise MrtParseError("truncated MRT payload", offset)
        stats.records += 1
        if mrt_type != MRT_TABLE_DUMP_V2 or subtype not in (
            SUB_PEER_INDEX,
            SUB_RIB_IPV4,
            SUB_RIB_IPV6,
        ):
            stats.unknown_skipped += 1
            offset += 12 + length
            continue
        if subtype == SUB_PEER_INDEX:
            peer_index = _PeerIndex(payload, offset)
            offset += 12 + length
            continue
        if peer_index is None:
            raise MrtParseError("RIB record before PEER_INDEX_TABLE", offset)
        family = V4 if subtype == SUB_RIB_IPV4 else V6
        name = collector if collector is not None else peer_index.collector_id
        if len(payload) < 4:
            raise MrtParseError("truncated RIB record", offset)
        prefix, pos = _decode_prefix(payload, 4, family, offset)
        if pos + 2 > len(payload):
            raise MrtParseError("truncated RIB record", offset)
        entry_count = unpack(">H", payload[pos : pos + 2])[0]
        pos += 2
        for _ in range(entry_count):
            if pos + 8 > len(payload):
                raise MrtParseError("truncated RIB entry", offset)
            peer_idx, _orig_ts, attr_len = unpack(">HIH", payload[pos : pos + 8])
            pos += 8
            if pos + attr_len > len(payload):
                raise MrtParseError("truncated RIB entry attributes", offset)
            attrs = payload[pos : pos + attr_len]
            pos += attr_len
            if peer_idx >= len(peer_index.peer_as):
                raise MrtParseError(f"peer index {peer_idx} out of range", offset)
            try:
                raw_path = _as_path_from_attrs(attrs, offset)
            except _AsSetSegment:
                stats.as_set_skipped += 1
                continue
            if not raw_path:
                stats.bad_entries += 1
                continue
            vantage = f"{name}:{peer_index.peer_as[peer_idx]}"
            try:
                entry = RibEntry(ts, vantage, prefix, normalize_path(raw_path))
            except RecordError:
                stats.bad_entries += 1
                continue
            stats.entries += 1
            yield entry
        offset += 12 + length
