"""Bounded-degree template graphs with the robust perfect-matching property.

A template is a graph ``T`` with a distinguished set ``Z`` of ``m`` vertices
such that ``T - Z'`` has a perfect matching for every ``Z' <= Z`` with
``|Z'| < m/2`` and ``|V(T) - Z'|`` even.  Three builders are offered:

* ``exact_small``: the complete graph on ``2m`` vertices;
* ``random_bounded_degree``: union of random saturating matchings from a
  ``3s``-set into ``2s + 2s`` vertices plus the square of a cycle on ``Z``,
  resampled until verification passes;
* ``compact``: greedy edge deletion from a small complete graph, keeping the
  property under exhaustive verification.  This gives the cheapest templates
  for the absorber sizes that fit in desk-scale hypergraphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import ceil, comb
from typing import Iterable, Literal, Sequence

import networkx as nx
import numpy as np

from ..rng import stream

EXHAUSTIVE_LIMIT = 10 ** 6
SMALL_DP = 22


@dataclass(frozen=True)
class TemplateGraph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    Z: tuple[int, ...]
    mode: str = ""

    def __post_init__(self) -> None:
        es = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"bad template edge {(u, v)}")
            es.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(es)))
        if len(set(self.Z)) != len(self.Z) or any(not 0 <= z < self.num_vertices for z in self.Z):
            raise ValueError("Z must be distinct template vertices")

    @property
    def m(self) -> int:
        return len(self.Z)

    @property
    def max_degree(self) -> int:
        deg = [0] * self.num_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return max(deg, default=0)

    def adjacency(self) -> list[int]:
        adj = [0] * self.num_vertices
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def to_dict(self) -> dict:
        return {"num_vertices": self.num_vertices, "edges": [list(e) for e in self.edges], "Z": list(self.Z), "mode": self.mode}


# perfect matchings ------------------------------------------------------------
def _dp_matcher(adj: Sequence[int]):
    adj = tuple(adj)

    @lru_cache(maxsize=None)
    def solve(mask: int) -> bool:
        if mask == 0:
            return True
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        cand = adj[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            if solve(rest ^ b):
                return True
        return False

    return solve


def perfect_matching(T: TemplateGraph, removed: Iterable[int] = ()) -> list[tuple[int, int]] | None:
    """A perfect matching of ``T - removed`` or None."""
    gone = set(removed)
    keep = [v for v in range(T.num_vertices) if v not in gone]
    if len(keep) % 2:
        return None
    G = nx.Graph()
    G.add_nodes_from(keep)
    G.add_edges_from((u, v) for u, v in T.edges if u not in gone and v not in gone)
    M = nx.max_weight_matching(G, maxcardinality=True)
    if 2 * len(M) != len(keep):
        return None
    return sorted((min(u, v), max(u, v)) for u, v in M)


class _Decider:
    """Perfect-matching decisions for many vertex deletions of one template."""

    def __init__(self, T: TemplateGraph) -> None:
        self.T = T
        self.small = T.num_vertices <= SMALL_DP
        if self.small:
            self.solve = _dp_matcher(T.adjacency())
        self.full = (1 << T.num_vertices) - 1

    def __call__(self, removed: Sequence[int]) -> bool:
        if self.small:
            mask = self.full
            for z in removed:
                mask &= ~(1 << z)
            if mask.bit_count() % 2:
                return False
            return self.solve(mask)
        return perfect_matching(self.T, removed) is not None


@dataclass
class TemplateReport:
    mode: str
    checked: int = 0
    skipped_parity: int = 0
    failures: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "checked": self.checked,
            "skipped_parity": self.skipped_parity,
            "failures": [list(f) for f in self.failures],
            "passed": self.passed,
        }


def _valid_sizes(T: TemplateGraph) -> list[int]:
    m, v = T.m, T.num_vertices
    return [j for j in range(0, m) if 2 * j < m and (v - j) % 2 == 0]


def exhaustive_cost(m: int) -> int:
    return sum(comb(m, j) for j in range(m) if 2 * j < m)


def verify_template(
    T: TemplateGraph,
    mode: Literal["exhaustive", "sampled"] = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
    stop_at_first: bool = False,
) -> TemplateReport:
    """Check the robust matching property for every (or randomly drawn) admissible ``Z'``."""
    rep = TemplateReport(mode)
    decide = _Decider(T)
    m = T.m
    sizes = _valid_sizes(T)
    rep.skipped_parity = sum(comb(m, j) for j in range(m) if 2 * j < m and j not in sizes)
    if mode == "exhaustive":
        if exhaustive_cost(m) > EXHAUSTIVE_LIMIT:
            raise ValueError("too many subsets for exhaustive verification; use sampled mode")
        for j in sizes:
            for Zp in combinations(T.Z, j):
                rep.checked += 1
                if not decide(Zp):
                    rep.failures.append(Zp)
                    if stop_at_first:
                        return rep
        return rep
    rng = stream(seed, "template-verify")
    if not sizes:
        return rep
    weights = np.array([comb(m, j) for j in sizes], dtype=float)
    weights /= weights.sum()
    for _ in range(trials):
        j = int(rng.choice(sizes, p=weights))
        Zp = tuple(sorted(int(z) for z in rng.choice(T.Z, size=j, replace=False))) if j else ()
        rep.checked += 1
        if not decide(Zp):
            rep.failures.append(Zp)
            if stop_at_first:
                return rep
    return rep


class TemplateError(RuntimeError):
    pass


def _random_bounded(m: int, D: int, rng: np.random.Generator) -> TemplateGraph:
    s = ceil(m / 2)
    nx_, ny, nz = 3 * s, 2 * s, m
    X = list(range(nx_))
    Y = list(range(nx_, nx_ + ny))
    Z = list(range(nx_ + ny, nx_ + ny + nz))
    targets = Y + Z
    edges: set[tuple[int, int]] = set()
    for _ in range(D):
        image = rng.permutation(len(targets))[:nx_]
        for xv, t in zip(X, image):
            edges.add((xv, targets[int(t)]))
    for i in range(nz):
        for k in (1, 2):
            a, b = Z[i], Z[(i + k) % nz]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return TemplateGraph(nx_ + ny + nz, tuple(edges), tuple(Z), "random_bounded_degree")


def _compact(m: int, seed: int) -> TemplateGraph:
    best: TemplateGraph | None = None
    for v in (m, m + 1, m + 2):
        rng = stream(seed, "compact", v)
        E = list(combinations(range(v), 2))
        order = [E[i] for i in rng.permutation(len(E))]
        cur = set(E)
        Z = tuple(range(m))
        T = TemplateGraph(v, tuple(cur), Z, "compact")
        if not _valid_sizes(T) or not verify_template(T, stop_at_first=True):
            continue
        for e in order:
            trial = TemplateGraph(v, tuple(cur - {e}), Z, "compact")
            if verify_template(trial, stop_at_first=True):
                cur.discard(e)
        T = TemplateGraph(v, tuple(cur), Z, "compact")
        if best is None or (len(T.edges), T.num_vertices) < (len(best.edges), best.num_vertices):
            best = T
    if best is None:
        raise TemplateError(f"no compact template for m={m}")
    return best


def build_template(
    m: int,
    mode: Literal["exact_small", "random_bounded_degree", "compact"] = "compact",
    seed: int = 0,
    degree: int = 10,
    retries: int = 5,
    verify: Literal["exhaustive", "sampled"] | None = None,
    trials: int = 1000,
) -> TemplateGraph:
    """Template for ``|Z| = m``.

    ``random_bounded_degree`` resamples (up to ``retries`` times) until the
    chosen verification passes; the default verification is exhaustive when
    affordable and sampled otherwise.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if mode == "exact_small":
        if m > 12:
            raise ValueError("exact_small supports m <= 12")
        v = 2 * m
        return TemplateGraph(v, tuple(combinations(range(v), 2)), tuple(range(m)), "exact_small")
    if mode == "compact":
        if m > 12:
            raise ValueError("compact mode supports m <= 12")
        return _compact(m, seed)
    if mode != "random_bounded_degree":
        raise ValueError(f"unknown template mode {mode!r}")
    if verify is None:
        verify = "exhaustive" if exhaustive_cost(m) <= 20_000 else "sampled"
    last = None
    for attempt in range(retries):
        rng = stream(seed, "template", attempt)
        T = _random_bounded(m, degree, rng)
        rep = verify_template(T, verify, trials, seed=seed + attempt, stop_at_first=True)
        if rep:
            return T
        last = rep
    raise TemplateError(f"template verification failed after {retries} attempts (last failing Z' {last.failures[:1]})")
