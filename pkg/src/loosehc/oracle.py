"""Exhaustive ground truth for loose Hamilton cycles on small hypergraphs.

Cycles are searched in a canonical form: the sequence starts at the smallest
joint ``s``, every vertex below ``s`` is a mid, and the two orientations are the
only remaining symmetry.  Among any ``n/2 + 1`` vertices one is a joint, so
``s`` ranges over ``0..n/2``.  Failing ``(used-set, current joint)`` states are
memoised per ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .hgraph import Hypergraph3, LooseCycle, LoosePath, validate_loose_cycle
from .paths import BudgetExceeded, Counter, iter_loose_paths

MAX_DECIDE_N = 16
MAX_COUNT_N = 12


@dataclass
class OracleResult:
    decision: Literal["yes", "no", "unknown"]
    reason: str = ""
    cycle: LooseCycle | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.decision == "yes"


def _link_pairs(G: Hypergraph3) -> list[list[tuple[int, int]]]:
    # ordered (mid, next joint) moves from each vertex, ascending
    out: list[list[tuple[int, int]]] = []
    for v in range(G.n):
        moves = []
        for a, b in G.link_pairs(v):
            moves.append((a, b))
            moves.append((b, a))
        out.append(sorted(moves))
    return out


def has_loose_hc(G: Hypergraph3, budget: int | None = 50_000_000) -> OracleResult:
    n = G.n
    if n > MAX_DECIDE_N:
        raise ValueError(f"exhaustive oracle is limited to n <= {MAX_DECIDE_N}")
    if n % 2:
        return OracleResult("no", "parity")
    if n < 6:
        return OracleResult("no", "too_small")
    if any(G.degree(v) == 0 for v in range(n)):
        return OracleResult("no", "isolated_vertex")
    moves = _link_pairs(G)
    full = (1 << n) - 1
    counter = Counter(budget)

    for s in range(n // 2 + 1):
        dead: set[tuple[int, int]] = set()
        seq = [s]

        def dfs(end: int, mask: int) -> bool:
            counter.tick()
            rest = full ^ mask
            if rest & (rest - 1) == 0:
                m = rest.bit_length() - 1
                if G.has_edge(end, m, s):
                    seq.append(m)
                    return True
                return False
            if (mask, end) in dead:
                return False
            for m, j in moves[end]:
                if j <= s or (mask >> m) & 1 or (mask >> j) & 1:
                    continue
                seq.extend((m, j))
                if dfs(j, mask | (1 << m) | (1 << j)):
                    return True
                del seq[-2:]
            dead.add((mask, end))
            return False

        try:
            found = dfs(s, 1 << s)
        except BudgetExceeded:
            return OracleResult("unknown", "budget", nodes=counter.nodes)
        if found:
            cyc = LooseCycle(tuple(seq))
            assert validate_loose_cycle(G, cyc)
            return OracleResult("yes", "", cyc, counter.nodes)
    return OracleResult("no", "exhausted", nodes=counter.nodes)


def count_loose_hc(G: Hypergraph3) -> int:
    """Number of distinct loose Hamilton cycles (as edge sets)."""
    n = G.n
    if n > MAX_COUNT_N:
        raise ValueError(f"exact counting is limited to n <= {MAX_COUNT_N}")
    if n % 2 or n < 6:
        return 0
    moves = _link_pairs(G)
    full = (1 << n) - 1
    total = 0
    for s in range(n // 2 + 1):
        memo: dict[tuple[int, int], int] = {}

        def ways(end: int, mask: int) -> int:
            rest = full ^ mask
            if rest & (rest - 1) == 0:
                return int(G.has_edge(end, rest.bit_length() - 1, s))
            key = (mask, end)
            if key in memo:
                return memo[key]
            c = 0
            for m, j in moves[end]:
                if j <= s or (mask >> m) & 1 or (mask >> j) & 1:
                    continue
                c += ways(j, mask | (1 << m) | (1 << j))
            memo[key] = c
            return c

        total += ways(s, 1 << s)
    # each cycle is seen once per orientation
    return total // 2


@dataclass
class PathEnumeration:
    paths: list[LoosePath] = field(default_factory=list)
    truncated: bool = False


def enumerate_loose_paths(
    G: Hypergraph3, x: int, y: int, max_len: int, budget: int | None = 1_000_000
) -> PathEnumeration:
    """All loose x..y paths of length 1..max_len, by length then internal vertices."""
    out = PathEnumeration()
    counter = Counter(budget)
    others = [v for v in range(G.n) if v not in (x, y)]
    try:
        for L in range(1, max_len + 1):
            for inner in iter_loose_paths(G, x, y, L, others, counter=counter):
                out.paths.append(LoosePath((x, *inner, y)))
    except BudgetExceeded:
        out.truncated = True
    return out
