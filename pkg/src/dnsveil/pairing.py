"""Matching DNS queries to their responses.

A response belongs to the earliest still-unmatched query that shares its
pairing key and arrived no more than the window before it.  FIFO matching
keeps retransmission semantics deterministic; queries that never get a
response stay in the output as response-less pairs, responses that never
find a query come back separately as orphans.
"""

from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .capture import DnsPacketRecord

DEFAULT_WINDOW_MICROS = 5_000_000


class UnsortedInput(Exception):
    """A record stream whose timestamps regress."""


@dataclass(frozen=True)
class PairKey:
    client_addr: str
    server_addr: str
    client_port: int
    transaction_id: int
    question_name: bytes


def key_of(record: DnsPacketRecord) -> PairKey:
    return PairKey(
        client_addr=record.client_addr,
        server_addr=record.server_addr,
        client_port=record.client_port,
        transaction_id=record.transaction_id,
        question_name=record.question_name,
    )


@dataclass
class QueryResponsePair:
    query: DnsPacketRecord
    response: Optional[DnsPacketRecord] = None

    @property
    def pair_latency_micros(self) -> Optional[int]:
        if self.response is None:
            return None
        return self.response.timestamp_micros - self.query.timestamp_micros


def pair_streams(
    records: Iterable[DnsPacketRecord],
    window_micros: int = DEFAULT_WINDOW_MICROS,
) -> Tuple[List[QueryResponsePair], List[DnsPacketRecord]]:
    """Pair a timestamp-ordered record stream.

    Returns (pairs, orphan_responses).  Every query becomes exactly one
    pair, in stream order; every response either fills the earliest open
    pair with its key inside the window or lands in orphans.
    """
    if window_micros <= 0:
        raise ValueError("window_micros must be positive")
    pairs: List[QueryResponsePair] = []
    orphans: List[DnsPacketRecord] = []
    open_queries: dict = {}
    last_ts = None
    for record in records:
        ts = record.timestamp_micros
        if last_ts is not None and ts < last_ts:
            raise UnsortedInput(f"timestamp regressed from {last_ts} to {ts}")
        last_ts = ts
        key = key_of(record)
        if not record.is_response:
            open_queries.setdefault(key, deque()).append(len(pairs))
            pairs.append(QueryResponsePair(query=record))
        else:
            queue = open_queries.get(key)
            if queue:
                # Queries older than the window can never match again.
                while queue and ts - pairs[queue[0]].query.timestamp_micros > window_micros:
                    queue.popleft()
            if queue:
                pairs[queue.popleft()].response = record
            else:
                orphans.append(record)
    return pairs, orphans
