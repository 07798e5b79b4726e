"""Byte-level TABLE_DUMP_V2 fixture builder for parser tests.

Constructed field by field with struct.pack straight from the RFC 6396
wire layout, independent of the parser under test.
"""

import ipaddress
from struct import pack

TYPE_TABLE_DUMP_V2 = 13
SUB_PEER_INDEX = 1
SUB_RIB_IPV4 = 2
SUB_RIB_IPV6 = 4

AS_SET = 1
AS_SEQUENCE = 2


def mrt_record(ts: int, mrt_type: int, subtype: int, payload: bytes) -> bytes:
    return pack(">IHHI", ts, mrt_type, subtype, len(payload)) + payload


def peer_entry(peer_as: int, peer_ip: str = "192.0.2.1", bgp_id: str = "10.0.0.1") -> bytes:
    ip = ipaddress.ip_address(peer_ip)
    peer_type = (0x1 if ip.version == 6 else 0) | 0x2  # 4-byte AS
    return (
        pack(">B", peer_type)
        + ipaddress.IPv4Address(bgp_id).packed
        + ip.packed
        + pack(">I", peer_as)
    )


def peer_index_table(
    peer_ases: list[int], collector_id: str = "198.51.100.1", view: bytes = b"", ts: int = 1560000000
) -> bytes:
    payload = (
        ipaddress.IPv4Address(collector_id).packed
        + pack(">H", len(view))
        + view
        + pack(">H", len(peer_ases))
        + b"".join(peer_entry(a) for a in peer_ases)
    )
    return mrt_record(ts, TYPE_TABLE_DUMP_V2, SUB_PEER_INDEX, payload)


def as_path_attr(segments: list[tuple[int, list[int]]], extended: bool = False) -> bytes:
    body = b"".join(
        pack(">BB", seg_type, len(asns)) + b"".join(pack(">I", a) for a in asns)
        for seg_type, asns in segments
    )
    if extended:
        return pack(">BBH", 0x50, 2, len(body)) + body
    return pack(">BBB", 0x40, 2, len(body)) + body


def rib_entry(peer_index: int, attrs: bytes, orig_ts: int = 1559990000) -> bytes:
    return pack(">HIH", peer_index, orig_ts, len(attrs)) + attrs


def rib_record(
    prefix: str,
    entries: list[bytes],
    seq: int = 0,
    ts: int = 1560000000,
    subtype: int | None = None,
) -> bytes:
    net = ipaddress.ip_network(prefix)
    plen = net.prefixlen
    nbytes = (plen + 7) // 8
    if subtype is None:
        subtype = SUB_RIB_IPV4 if net.version == 4 else SUB_RIB_IPV6
    payload = (
        pack(">IB", seq, plen)
        + net.network_address.packed[:nbytes]
        + pack(">H", len(entries))
        + b"".join(entries)
    )
    return mrt_record(ts, TYPE_TABLE_DUMP_V2, subtype, payload)


def simple_dump(
    rows: list[tuple[str, list[int]]],
    peer_ases: list[int] | None = None,
    ts: int = 1560000000,
) -> bytes:
    """One peer-index plus one single-entry RIB record per (prefix, path) row,
    all entries attributed to peer 0."""
    data = peer_index_table(peer_ases or [64999], ts=ts)
    for seq, (prefix, path) in enumerate(rows):
        attrs = as_path_attr([(AS_SEQUENCE, path)])
        data += rib_record(prefix, [rib_entry(0, attrs)], seq=seq, ts=ts)
    return data
