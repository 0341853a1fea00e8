"""Classic pcap reading and DNS-over-UDP decoding.

Scope is deliberately narrow: classic pcap (not pcapng), Ethernet link
layer, IPv4, UDP port 53.  Anything else is skipped with a counter, never
an abort — a capture file is evidence and one undecodable frame must not
hide the rest.  Names are kept as raw bytes because the downstream
entropy feature counts bytes, not characters.
"""

import struct
from dataclasses import dataclass, field
from typing import Iterator, List, Optional

PCAP_MAGIC_LE = b"\xd4\xc3\xb2\xa1"
PCAP_MAGIC_BE = b"\xa1\xb2\xc3\xd4"
PCAP_MAGIC_LE_NS = b"\x4d\x3c\xb2\xa1"
PCAP_MAGIC_BE_NS = b"\xa1\xb2\x3c\x4d"
PCAPNG_MAGIC = b"\x0a\x0d\x0d\x0a"

LINKTYPE_ETHERNET = 1
MAX_POINTER_HOPS = 128
MAX_NAME_WIRE = 255


class CaptureError(Exception):
    """Base class for pcap container errors."""


class BadMagic(CaptureError):
    pass


class UnsupportedLinkType(CaptureError):
    pass


class TruncatedFrame(CaptureError):
    pass


class DnsParseError(Exception):
    """Base class for DNS message decoding errors."""


class Truncated(DnsParseError):
    pass


class PointerLoop(DnsParseError):
    pass


class ZeroQuestions(DnsParseError):
    pass


class MalformedName(DnsParseError):
    pass


@dataclass(frozen=True)
class RawFrame:
    timestamp_micros: int
    captured_bytes: bytes
    original_length: int


@dataclass(frozen=True)
class AnswerRecord:
    name: bytes
    rtype: int
    rdata_text: bytes


@dataclass(frozen=True)
class DnsMessage:
    transaction_id: int
    is_response: bool
    question_name: bytes
    question_type: int
    answers: tuple


@dataclass(frozen=True)
class DnsPacketRecord:
    timestamp_micros: int
    client_addr: str
    server_addr: str
    client_port: int
    transaction_id: int
    is_response: bool
    question_name: bytes
    answers: tuple
    ip_packet_length: int


@dataclass
class SkipStats:
    """Tally of frames that did not yield a DNS record, by reason."""

    counts: dict = field(default_factory=dict)

    def bump(self, reason: str) -> None:
        self.counts[reason] = self.counts.get(reason, 0) + 1

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def read_pcap(path) -> Iterator[RawFrame]:
    """Yield raw frames from a classic pcap file in file order.

    Accepts microsecond and nanosecond timestamp variants in either byte
    order; nanosecond timestamps are truncated to microseconds.
    """
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if len(magic) < 4:
            raise BadMagic(f"{path}: file too short to hold a pcap header")
        if magic == PCAPNG_MAGIC:
            raise BadMagic(f"{path}: pcapng is not supported, convert to classic pcap")
        if magic in (PCAP_MAGIC_LE, PCAP_MAGIC_LE_NS):
            endian = "<"
        elif magic in (PCAP_MAGIC_BE, PCAP_MAGIC_BE_NS):
            endian = ">"
        else:
            raise BadMagic(f"{path}: not a pcap file (magic {magic.hex()})")
        nanos = magic in (PCAP_MAGIC_LE_NS, PCAP_MAGIC_BE_NS)

        rest = fh.read(20)
        if len(rest) < 20:
            raise TruncatedFrame(f"{path}: truncated pcap global header")
        _vmaj, _vmin, _zone, _sigfigs, _snaplen, linktype = struct.unpack(endian + "HHiIII", rest)
        if linktype != LINKTYPE_ETHERNET:
            raise UnsupportedLinkType(f"{path}: link type {linktype}, only Ethernet (1) supported")

        rec = struct.Struct(endian + "IIII")
        while True:
            head = fh.read(16)
            if not head:
                return
            if len(head) < 16:
                raise TruncatedFrame(f"{path}: truncated record header at EOF")
            ts_sec, ts_frac, incl_len, orig_len = rec.unpack(head)
            if incl_len > orig_len:
                raise TruncatedFrame(f"{path}: record claims incl_len {incl_len} > orig_len {orig_len}")
            data = fh.read(incl_len)
            if len(data) < incl_len:
                raise TruncatedFrame(f"{path}: record promises {incl_len} bytes, file has {len(data)}")
            micros = ts_sec * 1_000_000 + (ts_frac // 1000 if nanos else ts_frac)
            yield RawFrame(timestamp_micros=micros, captured_bytes=data, original_length=orig_len)


def decode_name(buf: bytes, offset: int):
    """Decode a (possibly compressed) wire-format name starting at offset.

    Returns (dot-joined label bytes, offset just past the name in the
    original stream).  Compression pointers must point strictly backward;
    chains longer than MAX_POINTER_HOPS raise PointerLoop.
    """
    labels: List[bytes] = []
    pos = offset
    end = None
    hops = 0
    wire_len = 1  # the terminating root byte
    while True:
        if pos >= len(buf):
            raise Truncated("name runs past end of message")
        b = buf[pos]
        if b & 0xC0 == 0xC0:
            if pos + 1 >= len(buf):
                raise Truncated("compression pointer cut short")
            target = ((b & 0x3F) << 8) | buf[pos + 1]
            if end is None:
                end = pos + 2
            hops += 1
            if hops > MAX_POINTER_HOPS:
                raise PointerLoop(f"pointer chain exceeds {MAX_POINTER_HOPS} hops")
            if target >= pos:
                raise PointerLoop(f"pointer at {pos} points forward to {target}")
            pos = target
        elif b & 0xC0:
            raise MalformedName(f"reserved label type bits at offset {pos}")
        elif b == 0:
            pos += 1
            break
        else:
            if pos + 1 + b > len(buf):
                raise Truncated("label runs past end of message")
            label = buf[pos + 1 : pos + 1 + b]
            if b"." in label:
                raise MalformedName("label contains a dot byte")
            wire_len += 1 + b
            if wire_len > MAX_NAME_WIRE:
                raise MalformedName(f"name exceeds {MAX_NAME_WIRE} wire bytes")
            labels.append(label)
            pos += 1 + b
    return b".".join(labels), (end if end is not None else pos)


def _need(buf: bytes, offset: int, count: int, what: str) -> None:
    if offset + count > len(buf):
        raise Truncated(f"{what} runs past end of message")


def parse_dns_datagram(payload: bytes) -> DnsMessage:
    """Parse one DNS message: header, first question, answer records.

    Authority and additional sections are not decoded.  Unknown answer
    rtypes keep their raw rdata bytes as rdata_text.
    """
    _need(payload, 0, 12, "header")
    txid, flags, qdcount, ancount, _ns, _ar = struct.unpack_from(">HHHHHH", payload, 0)
    if qdcount == 0:
        raise ZeroQuestions("message carries no question")
    is_response = bool(flags >> 15)

    offset = 12
    qname, offset = decode_name(payload, offset)
    _need(payload, offset, 4, "question type/class")
    (qtype,) = struct.unpack_from(">H", payload, offset)
    offset += 4
    for _ in range(qdcount - 1):
        _, offset = decode_name(payload, offset)
        _need(payload, offset, 4, "question type/class")
        offset += 4

    answers = []
    for _ in range(ancount):
        aname, offset = decode_name(payload, offset)
        _need(payload, offset, 10, "answer fixed fields")
        rtype, _rclass, _ttl, rdlen = struct.unpack_from(">HHIH", payload, offset)
        offset += 10
        _need(payload, offset, rdlen, "answer rdata")
        rdata_start = offset
        rdata = payload[offset : offset + rdlen]
        offset += rdlen
        answers.append(AnswerRecord(aname, rtype, _decode_rdata(payload, rdata_start, rdlen, rtype, rdata)))

    return DnsMessage(
        transaction_id=txid,
        is_response=is_response,
        question_name=qname,
        question_type=qtype,
        answers=tuple(answers),
    )


RTYPE_NS = 2
RTYPE_CNAME = 5
RTYPE_MX = 15
RTYPE_TXT = 16


def _decode_rdata(payload: bytes, start: int, rdlen: int, rtype: int, rdata: bytes) -> bytes:
    if rtype in (RTYPE_CNAME, RTYPE_NS):
        name, _ = decode_name(payload, start)
        return name
    if rtype == RTYPE_MX:
        if rdlen < 2:
            raise Truncated("MX rdata shorter than its preference field")
        name, _ = decode_name(payload, start + 2)
        return name
    if rtype == RTYPE_TXT:
        chunks = []
        pos = 0
        while pos < rdlen:
            n = rdata[pos]
            if pos + 1 + n > rdlen:
                raise Truncated("TXT character-string runs past rdata")
            chunks.append(rdata[pos + 1 : pos + 1 + n])
            pos += 1 + n
        return b"".join(chunks)
    return rdata


ETHERTYPE_IPV4 = 0x0800
ETHERTYPE_IPV6 = 0x86DD
IP_PROTO_UDP = 17
IP_PROTO_TCP = 6
DNS_PORT = 53


def extract_dns_records(frame: RawFrame, stats: Optional[SkipStats] = None) -> Optional[DnsPacketRecord]:
    """Decode an Ethernet/IPv4/UDP/DNS frame into a packet record.

    Returns None (and bumps a skip counter) for anything else: ARP, IPv6,
    TCP, fragments, non-53 UDP, or frames whose DNS payload fails to
    parse.  Never raises on arbitrary frame bytes.
    """

    def skip(reason: str):
        if stats is not None:
            stats.bump(reason)
        return None

    buf = frame.captured_bytes
    if len(buf) < 14:
        return skip("short-frame")
    ethertype = struct.unpack_from(">H", buf, 12)[0]
    if ethertype == ETHERTYPE_IPV6:
        return skip("ipv6")
    if ethertype != ETHERTYPE_IPV4:
        return skip("non-ipv4")

    ip_off = 14
    if len(buf) < ip_off + 20:
        return skip("short-ipv4")
    vihl = buf[ip_off]
    if vihl >> 4 != 4:
        return skip("non-ipv4")
    ihl = (vihl & 0x0F) * 4
    if ihl < 20 or len(buf) < ip_off + ihl:
        return skip("short-ipv4")
    total_length, = struct.unpack_from(">H", buf, ip_off + 2)
    frag, = struct.unpack_from(">H", buf, ip_off + 6)
    if frag & 0x2000 or frag & 0x1FFF:
        return skip("fragmented")
    proto = buf[ip_off + 9]
    if proto == IP_PROTO_TCP:
        return skip("tcp")
    if proto != IP_PROTO_UDP:
        return skip("non-udp")
    src = buf[ip_off + 12 : ip_off + 16]
    dst = buf[ip_off + 16 : ip_off + 20]

    udp_off = ip_off + ihl
    if len(buf) < udp_off + 8:
        return skip("short-udp")
    sport, dport, ulen, _csum = struct.unpack_from(">HHHH", buf, udp_off)
    if (sport == DNS_PORT) == (dport == DNS_PORT):
        return skip("port")
    if ulen < 8:
        return skip("short-udp")
    payload = buf[udp_off + 8 : udp_off + ulen]

    try:
        msg = parse_dns_datagram(payload)
    except DnsParseError:
        return skip("dns-error")

    if sport == DNS_PORT:
        client = (dst, dport)
        server = src
    else:
        client = (src, sport)
        server = dst
    return DnsPacketRecord(
        timestamp_micros=frame.timestamp_micros,
        client_addr=_ip_str(client[0]),
        server_addr=_ip_str(server),
        client_port=client[1],
        transaction_id=msg.transaction_id,
        is_response=msg.is_response,
        question_name=msg.question_name,
        answers=msg.answers,
        ip_packet_length=total_length,
    )


def _ip_str(raw: bytes) -> str:
    return f"{raw[0]}.{raw[1]}.{raw[2]}.{raw[3]}"


def read_dns_records(path, stats: Optional[SkipStats] = None) -> Iterator[DnsPacketRecord]:
    """Stream DNS packet records out of a pcap file, skipping the rest."""
    for frame in read_pcap(path):
        record = extract_dns_records(frame, stats)
        if record is not None:
            yield record
