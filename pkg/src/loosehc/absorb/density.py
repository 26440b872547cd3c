"""Exact 3-density ``max (e(F) - 1) / (v(F) - 3)`` over subgraphs F with at least four vertices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..hgraph import Edge, Hypergraph3

MAX_EDGES = 20


@dataclass(frozen=True)
class M3Result:
    value: Fraction
    edges: tuple[Edge, ...]
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


def m3_density(H: Hypergraph3) -> M3Result:
    """Exact value and an optimal subgraph.

    Only edge subsets need to be searched: for a fixed edge set the ratio is
    largest on its own support, except that edge sets spanning three vertices
    are padded with an isolated vertex, and the edgeless subgraph on all
    vertices covers the no-edge case.  Hypergraphs on fewer than four vertices
    get 0.
    """
    if H.num_edges > MAX_EDGES:
        raise ValueError(f"exhaustive 3-density is limited to {MAX_EDGES} edges")
    n = H.n
    if n < 4:
        return M3Result(Fraction(0), (), ())
    edges = H.sorted_edges()
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in edges]
    best = Fraction(-1, n - 3)
    best_set: tuple[int, ...] = ()
    best_support = (1 << n) - 1
    chosen: list[int] = []

    def rec(i: int, count: int, union: int) -> None:
        nonlocal best, best_set, best_support
        if i == len(edges):
            if count == 0:
                return
            v = max(union.bit_count(), 4)
            r = Fraction(count - 1, v - 3)
            if r > best:
                best, best_set, best_support = r, tuple(chosen), union
            return
        chosen.append(i)
        rec(i + 1, count + 1, union | masks[i])
        chosen.pop()
        rec(i + 1, count, union)

    rec(0, 0, 0)
    sub = tuple(edges[i] for i in best_set)
    support = tuple(v for v in range(n) if best_support >> v & 1)
    if best_set and len(support) < 4:
        extra = next(v for v in range(n) if v not in support)
        support = tuple(sorted(support + (extra,)))
    return M3Result(best, sub, support)
