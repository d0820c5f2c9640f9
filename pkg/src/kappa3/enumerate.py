"""Isomorphism-free generation of small graphs.

Level ``n`` is built from level ``n - 1`` by adding a new vertex joined to
every subset of the old vertices and keeping one graph per canonical key.
Representatives are the canonical graphs themselves, emitted sorted by
``(edge count, canonical key)`` so runs are reproducible.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .canon import CanonicalKey, canonical_form, canonical_graph
from .graph import Graph
from .graph6 import Graph6Error, decode, encode

log = logging.getLogger(__name__)

MAX_ORDER = 9
# below this level size a process pool costs more than it saves
_PARALLEL_MIN_PARENTS = 500


class EnumerationError(ValueError):
    pass


@dataclass(frozen=True)
class GraphClassQuery:
    n: int
    m_min: int = 0
    m_max: int | None = None
    connected_only: bool = False

    def __post_init__(self) -> None:
        top = self.n * (self.n - 1) // 2
        m_max = top if self.m_max is None else self.m_max
        if self.n < 0 or not 0 <= self.m_min <= m_max <= top:
            raise EnumerationError(
                f"invalid size range [{self.m_min}, {self.m_max}] for n={self.n}"
            )
        object.__setattr__(self, "m_max", m_max)

    def accepts(self, g: Graph) -> bool:
        m = g.edge_count()
        return (
            g.n == self.n
            and self.m_min <= m <= self.m_max
            and (not self.connected_only or g.is_connected())
        )


def _children(parent: Graph) -> list[tuple[CanonicalKey, Graph]]:
    out = []
    for nbrs in range(1 << parent.n):
        child = canonical_graph(parent.add_vertex_with_neighbors(nbrs))
        out.append((_key(child), child))
    return out


def _key(canonical: Graph) -> CanonicalKey:
    return encode(canonical).encode("ascii")


def _workers(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def _level(n: int, threads: int | None = None) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph.empty(0),)
    parents = _level(n - 1, threads)
    found: dict[CanonicalKey, Graph] = {}
    workers = _workers(threads)
    if workers > 1 and len(parents) >= _PARALLEL_MIN_PARENTS:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = pool.map(_children, parents, chunksize=16)
            for batch in batches:
                for key, child in batch:
                    found.setdefault(key, child)
    else:
        for parent in parents:
            for key, child in _children(parent):
                found.setdefault(key, child)
    log.debug("level %d: %d classes from %d parents", n, len(found), len(parents))
    return tuple(g for _, g in sorted(found.items(), key=lambda kv: (kv[1].edge_count(), kv[0])))


def enumerate_all(n: int, threads: int | None = None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of order ``n``."""
    if not 0 <= n <= MAX_ORDER:
        raise EnumerationError(f"order {n} outside 0..{MAX_ORDER}")
    # the cache is keyed on threads too; normalise so results are shared
    yield from _level(n, None if threads is None else _workers(threads))


def enumerate_matching(q: GraphClassQuery, threads: int | None = None) -> Iterator[Graph]:
    if q.n > MAX_ORDER:
        raise EnumerationError(f"order {q.n} outside 0..{MAX_ORDER}")
    for g in enumerate_all(q.n, threads):
        if q.accepts(g):
            yield g


def filter_all(n: int) -> list[Graph]:
    """Reference enumerator: every labelled graph, deduplicated by canonical form.

    Exponential in ``n(n-1)/2``; only meant for ``n <= 6``.
    """
    if n > 6:
        raise EnumerationError("filter-all enumeration is limited to n <= 6")
    pairs = list(combinations(range(n), 2))
    found: dict[CanonicalKey, Graph] = {}
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        found.setdefault(canonical_form(g), g)
    return list(found.values())


@dataclass
class IngestError:
    line: int
    message: str


def ingest_graph6(
    lines: Iterable[str], dedup: bool = False, errors: list[IngestError] | None = None
) -> Iterator[Graph]:
    """Decode graph6 lines; bad lines are recorded in ``errors`` and skipped.

    Line numbers are 1-based.  With ``dedup`` only the first graph of each
    isomorphism class is emitted.
    """
    seen: set[CanonicalKey] = set()
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text == ">>graph6<<":
            continue
        try:
            g = decode(text)
        except Graph6Error as exc:
            log.debug("line %d: %s", lineno, exc)
            if errors is not None:
                errors.append(IngestError(lineno, str(exc)))
            continue
        if dedup:
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
        yield g
