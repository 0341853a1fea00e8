"""Labeled synthetic corpora: benign DNS and tunneled traffic, as pcap.

The tunnel generator mimics the observable shape of DNSCat2-style covert
channels: upstream payload hex-encoded into subdomain labels under one
tunnel domain, downstream payload embedded in TXT/CNAME/MX answer rdata,
everything inside the classic 512-byte DNS-over-UDP budget.

Per-class payload profiles are what make the classes learnable and are
this generator's own construction:

    ssh     symmetric mid-size records (interactive, both directions busy)
    sftp    near-maximal records, bulk-transfer shaped
    telnet  short bursty keystroke chunks, small responses
    normal  dictionary names with Zipf-skewed word frequencies, one
            A-record answer

Everything is a pure function of (config, seed): identical configs give
byte-identical pcap files.
"""

import struct
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .capture import (
    RTYPE_CNAME,
    RTYPE_MX,
    RTYPE_TXT,
    AnswerRecord,
    DnsMessage,
    DnsPacketRecord,
)
from .features import TrafficClass
from .pairing import QueryResponsePair
from .wordlist import WORDS

RTYPE_A = 1

DEFAULT_TUNNEL_DOMAIN = "dnshax.se"
DEFAULT_RTYPE_MIX = {"TXT": 0.6, "CNAME": 0.25, "MX": 0.15}

MAX_DNS_PAYLOAD = 512
MAX_NAME_TEXT = 253

CLIENT_ADDR = "10.0.7.20"
SERVER_ADDR = "10.0.9.53"
CLIENT_MAC = bytes.fromhex("020000000001")
SERVER_MAC = bytes.fromhex("020000000002")

_TLDS = ("com", "net", "org", "io", "se", "de")
_TLD_WEIGHTS = (0.45, 0.18, 0.15, 0.08, 0.08, 0.06)
_HEX = b"0123456789abcdef"
_BASE_MICROS = 1_700_000_000_000_000
_QUERY_CADENCE_MICROS = 10_000

_RTYPE_BY_NAME = {"TXT": RTYPE_TXT, "CNAME": RTYPE_CNAME, "MX": RTYPE_MX}


@dataclass
class SynthConfig:
    traffic_class: TrafficClass
    pair_count: int
    tunnel_domain: str = DEFAULT_TUNNEL_DOMAIN
    seed: int = 0
    response_loss_rate: float = 0.02
    answer_rtype_mix: dict = field(default_factory=lambda: dict(DEFAULT_RTYPE_MIX))

    def __post_init__(self):
        if self.pair_count < 1:
            raise ValueError("pair_count must be >= 1")
        if not 0.0 <= self.response_loss_rate < 1.0:
            raise ValueError("response_loss_rate must be in [0, 1)")
        total = sum(self.answer_rtype_mix.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError("answer_rtype_mix weights must sum to 1")
        unknown = set(self.answer_rtype_mix) - set(_RTYPE_BY_NAME)
        if unknown:
            raise ValueError(f"unknown answer rtypes {sorted(unknown)}")


def _rng_for(config: SynthConfig) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((config.seed, config.traffic_class.value)))
    )


_ZIPF_S = 1.1
_zipf_w = 1.0 / np.arange(1, len(WORDS) + 1) ** _ZIPF_S
_ZIPF_P = _zipf_w / _zipf_w.sum()


def _normal_name(rng: np.random.Generator) -> bytes:
    parts = [WORDS[int(rng.choice(len(WORDS), p=_ZIPF_P))]]
    if rng.random() < 0.35:
        parts.append(WORDS[int(rng.choice(len(WORDS), p=_ZIPF_P))])
    parts.append(_TLDS[int(rng.choice(len(_TLDS), p=_TLD_WEIGHTS))])
    return ".".join(parts).encode("ascii")


def _hex_payload(rng: np.random.Generator, count: int) -> bytes:
    return bytes(_HEX[i] for i in rng.integers(0, 16, count))


def _tunnel_name(rng, target_len: int, chunk_lo: int, chunk_hi: int, domain: str) -> bytes:
    """Hex payload chunks as subdomain labels under the tunnel domain."""
    target_len = min(target_len, MAX_NAME_TEXT)
    suffix = domain.encode("ascii")
    labels: List[bytes] = []
    used = len(suffix)
    while True:
        chunk = int(rng.integers(chunk_lo, chunk_hi + 1))
        room = target_len - used - 1  # the dot joining the next label
        if room < 1 and labels:
            break
        chunk = max(1, min(chunk, room, 63))
        labels.append(_hex_payload(rng, chunk))
        used += chunk + 1
        if used + 2 > target_len:
            break
    return b".".join(labels) + b"." + suffix


def _txt_budget(question_name: bytes) -> int:
    """Max TXT payload bytes for one answer within the 512-byte message."""
    base = 12 + (len(question_name) + 2) + 4  # header + question echo
    room = MAX_DNS_PAYLOAD - base - 12  # answer: ptr name + fixed fields
    if room <= 1:
        return 0
    # each started 255-byte character-string costs one length byte
    payload = room - 1
    while payload + _txt_chunks(payload) > room:
        payload -= 1
    return max(payload, 0)


def _txt_chunks(payload: int) -> int:
    return max(1, -(-payload // 255))


def _name_budget(domain: str) -> int:
    # payload chars packable into a CNAME/MX target under the domain
    fixed = len(domain) + 1
    payload = MAX_NAME_TEXT - fixed
    while payload + -(-payload // 63) - 1 + fixed > MAX_NAME_TEXT:
        payload -= 1
    return payload


def _answer_for(rng, rtype: int, payload_len: int, question_name: bytes, domain: str) -> AnswerRecord:
    if rtype == RTYPE_TXT:
        payload_len = min(payload_len, _txt_budget(question_name))
        return AnswerRecord(question_name, rtype, _hex_payload(rng, max(payload_len, 1)))
    # domain-name carriers: chunk the payload into labels under the domain
    payload_len = min(payload_len, _name_budget(domain))
    base = 12 + (len(question_name) + 2) + 4
    extra = 2 if rtype == RTYPE_MX else 0
    # wire form of the rdata name must also fit the 512-byte message
    while True:
        name_text_len = payload_len + -(-payload_len // 63) + len(domain)
        rdlen = name_text_len + 2 + extra
        if base + 12 + rdlen <= MAX_DNS_PAYLOAD or payload_len <= 1:
            break
        payload_len -= 1
    name = _tunnel_name(rng, name_text_len, 40, 63, domain) if payload_len > 0 else domain.encode("ascii")
    return AnswerRecord(question_name, rtype, name)


@dataclass(frozen=True)
class _Profile:
    chunk_lo: int
    chunk_hi: int

    def draw_name_len(self, rng) -> int:
        raise NotImplementedError

    def draw_resp_payload(self, rng, question_name: bytes) -> int:
        raise NotImplementedError


class _SshProfile(_Profile):
    """Interactive shell: symmetric mid-size records both ways."""

    def draw_name_len(self, rng):
        return int(np.clip(rng.normal(150.0, 32.0), 85, 205))

    def draw_resp_payload(self, rng, question_name):
        return int(np.clip(rng.normal(150.0, 55.0), 40, 280))


class _SftpProfile(_Profile):
    """Bulk transfer: near-maximal names, responses filled to the budget."""

    def draw_name_len(self, rng):
        return int(np.clip(rng.normal(240.0, 10.0), 225, 253))

    def draw_resp_payload(self, rng, question_name):
        return int(_txt_budget(question_name) * rng.uniform(0.88, 1.0))


class _TelnetProfile(_Profile):
    """Keystroke bursts: short chunks, skewed small-to-mid sizes.

    The size tails deliberately reach into the ssh range on both sides, so
    telling the two interactive protocols apart needs both message sides.
    """

    def draw_name_len(self, rng):
        return int(np.clip(30.0 + rng.gamma(1.6, 28.0), 30, 140))

    def draw_resp_payload(self, rng, question_name):
        return int(np.clip(10.0 + rng.gamma(2.0, 22.0), 10, 120))


_PROFILES = {
    TrafficClass.SSH: _SshProfile(30, 45),
    TrafficClass.SFTP: _SftpProfile(50, 63),
    TrafficClass.TELNET: _TelnetProfile(3, 12),
}


def gen_normal_pairs(config: SynthConfig) -> List[QueryResponsePair]:
    """Benign lookups: Zipf-weighted dictionary names, one A-record answer."""
    if config.traffic_class is not TrafficClass.NORMAL:
        raise ValueError("gen_normal_pairs requires the NORMAL class")
    rng = _rng_for(config)
    pairs = []
    for i in range(config.pair_count):
        qname = _normal_name(rng)
        answers = (AnswerRecord(qname, RTYPE_A, bytes(rng.integers(1, 256, 4, dtype=np.int64))),)
        pairs.append(_build_pair(rng, config, i, qname, RTYPE_A, answers))
    return pairs


def gen_tunnel_pairs(config: SynthConfig) -> List[QueryResponsePair]:
    """Covert-channel pairs for one of the tunneled protocol profiles."""
    profile = _PROFILES.get(config.traffic_class)
    if profile is None:
        raise ValueError("gen_tunnel_pairs requires a tunnel class")
    rng = _rng_for(config)
    rtype_names = sorted(config.answer_rtype_mix)
    rtype_p = np.array([config.answer_rtype_mix[n] for n in rtype_names])
    pairs = []
    for i in range(config.pair_count):
        target = profile.draw_name_len(rng)
        qname = _tunnel_name(rng, target, profile.chunk_lo, profile.chunk_hi, config.tunnel_domain)
        rtype = _RTYPE_BY_NAME[rtype_names[int(rng.choice(len(rtype_names), p=rtype_p))]]
        payload = profile.draw_resp_payload(rng, qname)
        answers = (_answer_for(rng, rtype, payload, qname, config.tunnel_domain),)
        pairs.append(_build_pair(rng, config, i, qname, rtype, answers))
    return pairs


def generate_pairs(config: SynthConfig) -> List[QueryResponsePair]:
    if config.traffic_class is TrafficClass.NORMAL:
        return gen_normal_pairs(config)
    return gen_tunnel_pairs(config)


def _build_pair(rng, config, index: int, qname: bytes, qtype: int, answers: tuple) -> QueryResponsePair:
    txid = int(rng.integers(0, 1 << 16))
    client_port = int(rng.integers(1024, 65535))
    q_ts = _BASE_MICROS + index * _QUERY_CADENCE_MICROS
    r_ts = q_ts + int(rng.integers(1, 51)) * 1000
    lost = rng.random() < config.response_loss_rate

    q_msg = DnsMessage(txid, False, qname, qtype, ())
    query = DnsPacketRecord(
        timestamp_micros=q_ts,
        client_addr=CLIENT_ADDR,
        server_addr=SERVER_ADDR,
        client_port=client_port,
        transaction_id=txid,
        is_response=False,
        question_name=qname,
        answers=(),
        ip_packet_length=28 + len(encode_dns_message(q_msg)),
    )
    if lost:
        return QueryResponsePair(query=query)
    r_msg = DnsMessage(txid, True, qname, qtype, answers)
    response = DnsPacketRecord(
        timestamp_micros=r_ts,
        client_addr=CLIENT_ADDR,
        server_addr=SERVER_ADDR,
        client_port=client_port,
        transaction_id=txid,
        is_response=True,
        question_name=qname,
        answers=answers,
        ip_packet_length=28 + len(encode_dns_message(r_msg)),
    )
    return QueryResponsePair(query=query, response=response)


# --- DNS wire encoding -------------------------------------------------


def encode_name(text: bytes) -> bytes:
    """Encode a dot-joined name into wire labels; validates label sizes."""
    if text == b"":
        return b"\x00"
    out = bytearray()
    for label in text.split(b"."):
        if not 1 <= len(label) <= 63:
            raise ValueError(f"label length {len(label)} outside 1..63")
        out.append(len(label))
        out += label
    out.append(0)
    if len(out) > 255:
        raise ValueError(f"name wire form {len(out)} exceeds 255 bytes")
    return bytes(out)


def _encode_rdata(answer: AnswerRecord) -> bytes:
    if answer.rtype == RTYPE_TXT:
        out = bytearray()
        text = answer.rdata_text
        for pos in range(0, len(text), 255):
            chunk = text[pos : pos + 255]
            out.append(len(chunk))
            out += chunk
        return bytes(out)
    if answer.rtype in (RTYPE_CNAME,):
        return encode_name(answer.rdata_text)
    if answer.rtype == RTYPE_MX:
        return struct.pack(">H", 10) + encode_name(answer.rdata_text)
    return answer.rdata_text


def encode_dns_message(msg: DnsMessage) -> bytes:
    """Serialize a message; answer names equal to the question compress."""
    flags = 0x8180 if msg.is_response else 0x0100
    out = bytearray(struct.pack(">HHHHHH", msg.transaction_id, flags, 1, len(msg.answers), 0, 0))
    out += encode_name(msg.question_name)
    out += struct.pack(">HH", msg.question_type, 1)
    for answer in msg.answers:
        if answer.name == msg.question_name:
            out += b"\xc0\x0c"
        else:
            out += encode_name(answer.name)
        rdata = _encode_rdata(answer)
        out += struct.pack(">HHIH", answer.rtype, 1, 60, len(rdata))
        out += rdata
    return bytes(out)


# --- Ethernet/IPv4/UDP framing and pcap output -------------------------


def ones_complement_checksum(data: bytes) -> int:
    if len(data) % 2:
        data += b"\x00"
    total = 0
    for (word,) in struct.iter_unpack(">H", data):
        total += word
    while total >> 16:
        total = (total & 0xFFFF) + (total >> 16)
    return (~total) & 0xFFFF


def _ip_bytes(addr: str) -> bytes:
    return bytes(int(p) for p in addr.split("."))


def build_udp_frame(src_mac, dst_mac, src_ip, dst_ip, sport, dport, payload, ip_id) -> bytes:
    udp_len = 8 + len(payload)
    total_len = 20 + udp_len
    src = _ip_bytes(src_ip)
    dst = _ip_bytes(dst_ip)

    ip_head = bytearray(struct.pack(">BBHHHBBH4s4s", 0x45, 0, total_len, ip_id, 0x4000, 64, 17, 0, src, dst))
    struct.pack_into(">H", ip_head, 10, ones_complement_checksum(bytes(ip_head)))

    udp_head = struct.pack(">HHHH", sport, dport, udp_len, 0)
    pseudo = src + dst + struct.pack(">BBH", 0, 17, udp_len)
    csum = ones_complement_checksum(pseudo + udp_head + payload)
    if csum == 0:
        csum = 0xFFFF
    udp_head = struct.pack(">HHHH", sport, dport, udp_len, csum)

    eth = dst_mac + src_mac + struct.pack(">H", 0x0800)
    return eth + bytes(ip_head) + udp_head + payload


def _frames_for_pair(pair: QueryResponsePair) -> List[Tuple[int, bytes]]:
    q = pair.query
    qtype = RTYPE_A
    if pair.response is not None and pair.response.answers:
        qtype = pair.response.answers[0].rtype
    frames = []
    q_payload = encode_dns_message(DnsMessage(q.transaction_id, False, q.question_name, qtype, ()))
    frames.append(
        (
            q.timestamp_micros,
            build_udp_frame(
                CLIENT_MAC, SERVER_MAC, q.client_addr, q.server_addr, q.client_port, 53, q_payload, q.transaction_id
            ),
        )
    )
    r = pair.response
    if r is not None:
        r_payload = encode_dns_message(DnsMessage(r.transaction_id, True, r.question_name, qtype, tuple(r.answers)))
        frames.append(
            (
                r.timestamp_micros,
                build_udp_frame(
                    SERVER_MAC, CLIENT_MAC, r.server_addr, r.client_addr, 53, r.client_port, r_payload, r.transaction_id
                ),
            )
        )
    return frames


PCAP_GLOBAL_HEADER = struct.pack("<IHHiIII", 0xA1B2C3D4, 2, 4, 0, 0, 65535, 1)


def write_pcap(pairs: Sequence[QueryResponsePair], path) -> int:
    """Serialize pairs as an Ethernet pcap, frames interleaved by timestamp.

    Returns the number of bytes written.
    """
    timed: List[Tuple[int, int, bytes]] = []
    seq = 0
    for pair in pairs:
        for ts, frame in _frames_for_pair(pair):
            timed.append((ts, seq, frame))
            seq += 1
    timed.sort(key=lambda item: (item[0], item[1]))

    written = 0
    with open(path, "wb") as fh:
        fh.write(PCAP_GLOBAL_HEADER)
        written += len(PCAP_GLOBAL_HEADER)
        for ts, _, frame in timed:
            head = struct.pack("<IIII", ts // 1_000_000, ts % 1_000_000, len(frame), len(frame))
            fh.write(head)
            fh.write(frame)
            written += 16 + len(frame)
    return written
