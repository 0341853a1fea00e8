"""Per-message features and the three feature-set shapes.

Every DNS message contributes three numbers: the Shannon entropy of its
name bytes, the name length, and the IP packet length.  A feature row is
one of three shapes: query-side triple, response-side triple, or both
triples of a matched pair.  Rows are persisted as labeled CSV files.
"""

import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from ._kernels import byte_entropy
from .capture import DnsPacketRecord
from .pairing import QueryResponsePair

LN_256 = float(np.log(256.0))


class TrafficClass(Enum):
    """The four traffic labels: benign DNS plus three tunneled protocols."""

    NORMAL = 0
    SSH = 1
    SFTP = 2
    TELNET = 3

    @property
    def label(self) -> str:
        return _CLASS_LABELS[self]

    @classmethod
    def from_label(cls, text: str) -> "TrafficClass":
        try:
            return _LABEL_CLASSES[text]
        except KeyError:
            raise ValueError(f"unknown traffic label {text!r}") from None


_CLASS_LABELS = {
    TrafficClass.NORMAL: "normal",
    TrafficClass.SSH: "ssh",
    TrafficClass.SFTP: "sftp",
    TrafficClass.TELNET: "telnet",
}
_LABEL_CLASSES = {v: k for k, v in _CLASS_LABELS.items()}

CLASS_COUNT = len(TrafficClass)


class FeatureSetKind(Enum):
    """Which message side(s) contribute features to a row."""

    QUERY = "query"
    FULL = "full"
    RESPONSE = "response"

    @property
    def width(self) -> int:
        return 6 if self is FeatureSetKind.FULL else 3

    @property
    def header(self) -> Sequence[str]:
        return _HEADERS[self]


_HEADERS = {
    FeatureSetKind.QUERY: ("entropy", "name_len", "ip_len", "label"),
    FeatureSetKind.RESPONSE: ("entropy", "name_len", "ip_len", "label"),
    FeatureSetKind.FULL: (
        "q_entropy",
        "q_name_len",
        "q_ip_len",
        "r_entropy",
        "r_name_len",
        "r_ip_len",
        "label",
    ),
}


class MalformedRow(Exception):
    """A feature CSV line that does not match the schema."""


@dataclass(frozen=True)
class FeatureRow:
    kind: FeatureSetKind
    label: TrafficClass
    query_name_entropy: Optional[float] = None
    query_name_length: Optional[int] = None
    query_ip_packet_length: Optional[int] = None
    response_name_entropy: Optional[float] = None
    response_name_length: Optional[int] = None
    response_ip_packet_length: Optional[int] = None

    def values(self) -> tuple:
        """Numeric fields in CSV column order for this row's kind."""
        if self.kind is FeatureSetKind.QUERY:
            return (
                self.query_name_entropy,
                self.query_name_length,
                self.query_ip_packet_length,
            )
        if self.kind is FeatureSetKind.RESPONSE:
            return (
                self.response_name_entropy,
                self.response_name_length,
                self.response_ip_packet_length,
            )
        return (
            self.query_name_entropy,
            self.query_name_length,
            self.query_ip_packet_length,
            self.response_name_entropy,
            self.response_name_length,
            self.response_ip_packet_length,
        )


def shannon_entropy(data: bytes) -> float:
    """Entropy in nats of the byte distribution of `data`; 0.0 when empty."""
    return byte_entropy(data)


def name_length(name: bytes) -> int:
    """Byte count of a dot-joined name (no trailing dot)."""
    return len(name)


def response_name_bytes(response: DnsPacketRecord) -> bytes:
    """The response-side name: concatenated answer rdata, else the question.

    Tunnel software carries downstream payload inside answer records, so
    when answers are present their rdata is the signal; an answerless
    response only repeats the question name.
    """
    if response.answers:
        return b"".join(a.rdata_text for a in response.answers)
    return response.question_name


def _round9(value: float) -> float:
    # Rows hold what the CSV holds: 9 significant digits, so a write/read
    # cycle is exact.
    return float(format(value, ".9g"))


def _query_triple(record: DnsPacketRecord) -> tuple:
    return (
        _round9(shannon_entropy(record.question_name)),
        name_length(record.question_name),
        record.ip_packet_length,
    )


def _response_triple(record: DnsPacketRecord) -> tuple:
    name = response_name_bytes(record)
    return (
        _round9(shannon_entropy(name)),
        name_length(name),
        record.ip_packet_length,
    )


def make_feature_rows(
    pairs: Sequence[QueryResponsePair],
    orphan_responses: Sequence[DnsPacketRecord],
    kind: FeatureSetKind,
    label: TrafficClass,
) -> list:
    """Build rows of one feature-set shape from paired traffic.

    QUERY: one row per query.  RESPONSE: one row per response, matched or
    orphan.  FULL: one row per pair that actually has a response.
    """
    rows = []
    if kind is FeatureSetKind.QUERY:
        for pair in pairs:
            e, nl, il = _query_triple(pair.query)
            rows.append(
                FeatureRow(
                    kind=kind,
                    label=label,
                    query_name_entropy=e,
                    query_name_length=nl,
                    query_ip_packet_length=il,
                )
            )
    elif kind is FeatureSetKind.RESPONSE:
        responses = [p.response for p in pairs if p.response is not None]
        responses.extend(orphan_responses)
        for resp in responses:
            e, nl, il = _response_triple(resp)
            rows.append(
                FeatureRow(
                    kind=kind,
                    label=label,
                    response_name_entropy=e,
                    response_name_length=nl,
                    response_ip_packet_length=il,
                )
            )
    elif kind is FeatureSetKind.FULL:
        for pair in pairs:
            if pair.response is None:
                continue
            qe, qnl, qil = _query_triple(pair.query)
            re_, rnl, ril = _response_triple(pair.response)
            rows.append(
                FeatureRow(
                    kind=kind,
                    label=label,
                    query_name_entropy=qe,
                    query_name_length=qnl,
                    query_ip_packet_length=qil,
                    response_name_entropy=re_,
                    response_name_length=rnl,
                    response_ip_packet_length=ril,
                )
            )
    else:  # pragma: no cover
        raise ValueError(f"unknown feature-set kind {kind!r}")
    return rows


def _format_value(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".9g")


def write_feature_file(rows: Sequence[FeatureRow], path, append: bool = False) -> int:
    """Write (or append) rows of one kind to a CSV file; returns bytes written.

    The header is written only when starting a fresh file; appending to an
    existing file requires its header to match the rows' kind.
    """
    kinds = {row.kind for row in rows}
    if len(kinds) > 1:
        raise ValueError("rows must be homogeneous in kind")
    kind = kinds.pop() if kinds else None

    exists = append and os.path.exists(path) and os.path.getsize(path) > 0
    if exists and kind is not None:
        with open(path, "r", encoding="ascii", newline="") as fh:
            header = fh.readline().rstrip("\n")
        if header != ",".join(kind.header):
            raise ValueError(f"existing header in {path} does not match kind {kind}")

    written = 0
    mode = "a" if exists else "w"
    with open(path, mode, encoding="ascii", newline="") as fh:
        if not exists and kind is not None:
            line = ",".join(kind.header) + "\n"
            fh.write(line)
            written += len(line)
        for row in rows:
            parts = [_format_value(v) for v in row.values()]
            parts.append(row.label.label)
            line = ",".join(parts) + "\n"
            fh.write(line)
            written += len(line)
    return written


def _header_kind(header: str, path) -> FeatureSetKind:
    for kind in (FeatureSetKind.QUERY, FeatureSetKind.FULL):
        if header == ",".join(kind.header):
            return kind
    raise MalformedRow(f"{path}: unrecognized header {header!r}")


def read_feature_file(path, kind_hint: Optional[FeatureSetKind] = None) -> list:
    """Read a feature CSV back into rows.

    Query and response files share one header, so callers that care about
    the distinction pass `kind_hint`; without it such files load as QUERY.
    """
    rows = []
    with open(path, "r", encoding="ascii", newline="") as fh:
        header = fh.readline().rstrip("\n")
        kind = _header_kind(header, path)
        if kind_hint is not None:
            if ",".join(kind_hint.header) != header:
                raise MalformedRow(f"{path}: header does not match {kind_hint}")
            kind = kind_hint
        ncols = len(kind.header)
        for lineno, raw in enumerate(fh, start=2):
            parts = raw.rstrip("\n").split(",")
            if len(parts) != ncols:
                raise MalformedRow(f"{path}:{lineno}: expected {ncols} columns, got {len(parts)}")
            try:
                label = TrafficClass.from_label(parts[-1])
            except ValueError as exc:
                raise MalformedRow(f"{path}:{lineno}: {exc}") from None
            try:
                nums = _parse_numbers(parts[:-1])
            except ValueError as exc:
                raise MalformedRow(f"{path}:{lineno}: {exc}") from None
            if kind is FeatureSetKind.QUERY:
                rows.append(
                    FeatureRow(
                        kind=kind,
                        label=label,
                        query_name_entropy=nums[0],
                        query_name_length=nums[1],
                        query_ip_packet_length=nums[2],
                    )
                )
            elif kind is FeatureSetKind.RESPONSE:
                rows.append(
                    FeatureRow(
                        kind=kind,
                        label=label,
                        response_name_entropy=nums[0],
                        response_name_length=nums[1],
                        response_ip_packet_length=nums[2],
                    )
                )
            else:
                rows.append(
                    FeatureRow(
                        kind=kind,
                        label=label,
                        query_name_entropy=nums[0],
                        query_name_length=nums[1],
                        query_ip_packet_length=nums[2],
                        response_name_entropy=nums[3],
                        response_name_length=nums[4],
                        response_ip_packet_length=nums[5],
                    )
                )
    return rows


def _parse_numbers(parts: Sequence[str]) -> list:
    # Column pattern is (entropy, len, len) once or twice: floats at
    # positions 0 mod 3, integers elsewhere.
    nums = []
    for i, text in enumerate(parts):
        if i % 3 == 0:
            nums.append(float(text))
            if not np.isfinite(nums[-1]):
                raise ValueError(f"non-finite entropy {text!r}")
        else:
            nums.append(int(text))
    return nums


def rows_to_matrix(rows: Sequence[FeatureRow]):
    """Stack rows into (X, y) numpy arrays for training."""
    if not rows:
        raise ValueError("no rows")
    kinds = {row.kind for row in rows}
    if len(kinds) > 1:
        raise ValueError("rows must be homogeneous in kind")
    X = np.array([row.values() for row in rows], dtype=np.float64)
    y = np.array([row.label.value for row in rows], dtype=np.int32)
    return X, y
