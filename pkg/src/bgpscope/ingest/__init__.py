"""Parsers for the external data formats: MRT RIB dumps, text routing
tables, RIR delegated-extended files, and AS-relationship files."""

from .asrel import parse_asrel
from .delegations import Registry, parse_delegations
from .mrt import MrtParseError, MrtStats, parse_mrt
from ..records import (
    AsPath,
    ParseStats,
    Prefix,
    RecordError,
    RegistryRecord,
    RelRecord,
    RibEntry,
    is_bogon,
    is_private_asn,
    normalize_path,
)
from .tabletext import format_entry, parse_table_text, write_table_text

__all__ = [
    "AsPath",
    "MrtParseError",
    "MrtStats",
    "ParseStats",
    "Prefix",
    "RecordError",
    "Registry",
    "RegistryRecord",
    "RelRecord",
    "RibEntry",
    "format_entry",
    "is_bogon",
    "is_private_asn",
    "normalize_path",
    "parse_asrel",
    "parse_delegations",
    "parse_mrt",
    "parse_table_text",
    "write_table_text",
]
