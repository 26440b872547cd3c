"""Enumeration of loose paths between two fixed endpoints."""

from __future__ import annotations

from typing import Collection, Iterator, Sequence

from .hgraph import Hypergraph3


class BudgetExceeded(Exception):
    pass


class Counter:
    """Shared node counter; raises once ``limit`` nodes have been visited."""

    def __init__(self, limit: int | None) -> None:
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded


def iter_loose_paths(
    G: Hypergraph3,
    x: int,
    y: int,
    length: int,
    allowed: Collection[int],
    slots: Sequence[Collection[int]] | None = None,
    counter: Counter | None = None,
) -> Iterator[tuple[int, ...]]:
    """Internal vertex tuples ``(m1, j1, ..., mL)`` of loose x..y paths of the given length.

    Internal vertices come from ``allowed``; ``slots`` optionally restricts each
    position separately.  Tuples are produced in lexicographic order.
    """
    if length < 1 or x == y:
        return
    allow = set(allowed) - {x, y}
    if slots is not None and len(slots) != 2 * length - 1:
        raise ValueError("need one slot set per internal position")

    def ok(v: int, pos: int) -> bool:
        return v in allow and (slots is None or v in slots[pos])

    used: set[int] = set()

    def rec(cur: int, k: int, pos: int) -> Iterator[tuple[int, ...]]:
        if counter is not None:
            counter.tick()
        if k == 1:
            for m in sorted(G.codegree_set(cur, y)):
                if ok(m, pos) and m not in used:
                    yield (m,)
            return
        mids = sorted({w for e in G.incident(cur) for w in e if w != cur and ok(w, pos) and w not in used})
        for m in mids:
            used.add(m)
            for j in sorted(G.codegree_set(cur, m)):
                if j == y or j in used or not ok(j, pos + 1):
                    continue
                used.add(j)
                for rest in rec(j, k - 1, pos + 2):
                    yield (m, j) + rest
                used.discard(j)
            used.discard(m)

    yield from rec(x, length, 0)
