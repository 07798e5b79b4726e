"""Core domain records shared by every stage of the pipeline.

A routing-table snapshot is a stream of RibEntry rows; registry and
relationship files become RegistryRecord / RelRecord rows.  Everything
downstream (graph build, country metrics, event detection) consumes these
validated records and nothing else.
"""

import ipaddress
from dataclasses import dataclass, field

V4 = "v4"
V6 = "v6"

_FAMILY_BITS = {V4: 32, V6: 128}

# Ranges reserved for private use (RFC 6996); kept in paths, never attributed
# to a country.
PRIVATE_ASN_RANGES = ((64512, 65534), (4200000000, 4294967294))


class RecordError(ValueError):
    """A record violates the format or an invariant."""


def is_private_asn(asn: int) -> bool:
    return any(lo <= asn <= hi for lo, hi in PRIVATE_ASN_RANGES)


def valid_asn(asn: int) -> bool:
    return 0 < asn < 2**32


@dataclass(frozen=True, order=True)
class Prefix:
    """A CIDR block.  Ordering is total: family, then base address, then length."""

    family: str
    base: int
    length: int

    def __post_init__(self):
        bits = _FAMILY_BITS.get(self.family)
        if bits is None:
            raise RecordError(f"unknown address family {self.family!r}")
        if not 0 <= self.length <= bits:
            raise RecordError(f"invalid prefix length /{self.length} for {self.family}")
        if not 0 <= self.base < 2**bits:
            raise RecordError("base address out of range")
        if self.base & (self.span - 1):
            raise RecordError(f"host bits set below /{self.length}")

    @classmethod
    def parse(cls, text: str) -> "Prefix":
        addr_text, sep, len_text = text.partition("/")
        try:
            addr = ipaddress.ip_address(addr_text)
            length = int(len_text) if sep else (32 if addr.version == 4 else 128)
        except ValueError as exc:
            raise RecordError(f"invalid prefix {text!r}: {exc}") from None
        family = V4 if addr.version == 4 else V6
        return cls(family, int(addr), length)

    @classmethod
    def from_network(cls, family: str, base: int, length: int) -> "Prefix":
        return cls(family, base, length)

    @property
    def bits(self) -> int:
        return _FAMILY_BITS[self.family]

    @property
    def span(self) -> int:
        """Number of addresses covered."""
        return 1 << (self.bits - self.length)

    @property
    def first(self) -> int:
        return self.base

    @property
    def last(self) -> int:
        return self.base + self.span - 1

    def contains(self, other: "Prefix") -> bool:
        return (
            self.family == other.family
            and self.length <= other.length
            and (other.base >> (self.bits - self.length)) == (self.base >> (self.bits - self.length))
        )

    def __str__(self) -> str:
        if self.family == V4:
            addr = ipaddress.IPv4Address(self.base)
        else:
            addr = ipaddress.IPv6Address(self.base)
        return f"{addr}/{self.length}"


# Blocks where registry attribution is meaningless; dropped by the ingest
# pipeline unless explicitly kept.
BOGON_PREFIXES = tuple(
    Prefix.parse(p)
    for p in (
        "0.0.0.0/8",
        "10.0.0.0/8",
        "127.0.0.0/8",
        "169.254.0.0/16",
        "172.16.0.0/12",
        "192.168.0.0/16",
        "224.0.0.0/3",
    )
)


def is_bogon(prefix: Prefix) -> bool:
    return any(b.contains(prefix) for b in BOGON_PREFIXES)


@dataclass(frozen=True)
class AsPath:
    """Loop-free AS-level path; consecutive prepending already collapsed."""

    hops: tuple[int, ...]

    def __post_init__(self):
        if not self.hops:
            raise RecordError("empty AS path")
        for asn in self.hops:
            if not valid_asn(asn):
                raise RecordError(f"invalid ASN {asn}")
        if any(a == b for a, b in zip(self.hops, self.hops[1:])):
            raise RecordError("uncollapsed prepending in AS path")
        if len(set(self.hops)) != len(self.hops):
            raise RecordError(f"routing loop in AS path {list(self.hops)}")

    @property
    def origin(self) -> int:
        return self.hops[-1]

    def __iter__(self):
        return iter(self.hops)

    def __len__(self) -> int:
        return len(self.hops)


def normalize_path(raw: list[int] | tuple[int, ...]) -> AsPath:
    """Collapse consecutive duplicate hops and validate the result.

    Raises RecordError for an empty path or a non-adjacent repeat (routing
    loop); those rows cannot contribute meaningful adjacencies.
    """
    if not raw:
        raise RecordError("empty AS path")
    hops = [raw[0]]
    for asn in raw[1:]:
        if asn != hops[-1]:
            hops.append(asn)
    return AsPath(tuple(hops))


@dataclass(frozen=True)
class RibEntry:
    """One (vantage, prefix, path) observation from a routing-table snapshot."""

    timestamp: int
    vantage: str
    prefix: Prefix
    path: AsPath

    def __post_init__(self):
        if self.timestamp <= 0:
            raise RecordError("timestamp must be positive")
        if not self.vantage or "|" in self.vantage:
            raise RecordError(f"invalid vantage {self.vantage!r}")

    @property
    def origin(self) -> int:
        return self.path.origin

    @property
    def table(self) -> tuple[str, int]:
        """Routing-table key: one table per (vantage, snapshot time)."""
        return (self.vantage, self.timestamp)


ASN_KIND = "asn"
V4BLOCK_KIND = "v4block"
V6BLOCK_KIND = "v6block"


@dataclass(frozen=True)
class RegistryRecord:
    """One delegation row: an ASN or address block bound to a country."""

    registry: str
    country: str
    kind: str
    value: int | Prefix
    addr_count: int = 0
    date: int = 0
    status: str = "other"

    def __post_init__(self):
        if self.kind not in (ASN_KIND, V4BLOCK_KIND, V6BLOCK_KIND):
            raise RecordError(f"unknown registry kind {self.kind!r}")
        cc = self.country
        if not (cc == "ZZ" or (len(cc) == 2 and cc.isalpha() and cc.isupper())):
            raise RecordError(f"invalid country code {cc!r}")
        if self.kind == ASN_KIND:
            if not isinstance(self.value, int) or not valid_asn(self.value):
                raise RecordError(f"invalid ASN value {self.value!r}")
        else:
            if not isinstance(self.value, Prefix):
                raise RecordError("block record needs a Prefix value")
            if self.addr_count < 1:
                raise RecordError("block record needs addr_count >= 1")


P2C = "p2c"
P2P = "p2p"
S2S = "s2s"


@dataclass(frozen=True)
class RelRecord:
    """Inferred business relationship between two ASes; (a, b, p2c) means a
    is the provider of b."""

    a: int
    b: int
    rel: str

    def __post_init__(self):
        if self.a == self.b:
            raise RecordError(f"self relationship on AS{self.a}")
        if self.rel not in (P2C, P2P, S2S):
            raise RecordError(f"unknown relationship {self.rel!r}")
        if not (valid_asn(self.a) and valid_asn(self.b)):
            raise RecordError("invalid ASN in relationship")


@dataclass
class ParseStats:
    """Counters shared by the line-oriented parsers."""

    rows: int = 0
    parsed: int = 0
    skipped: int = 0
    errors: list[tuple[int, str]] = field(default_factory=list)

    def error(self, lineno: int, message: str, strict: bool):
        if strict:
            raise RecordError(f"line {lineno}: {message}")
        self.skipped += 1
        self.errors.append((lineno, message))
