"""Long loose paths in tripartite 3-graphs and a greedy almost-spanning path cover."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Literal

from .hgraph import Hypergraph3, LoosePath, validate_loose_path
from .rng import stream

SUPERSAT_LIMIT = 10 ** 8


@dataclass(frozen=True)
class TripartiteInstance:
    host: Hypergraph3
    V1: frozenset[int]
    V2: frozenset[int]
    V3: frozenset[int]
    k: int

    def __post_init__(self) -> None:
        for name in ("V1", "V2", "V3"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        t = len(self.V1)
        if len(self.V3) != t or len(self.V2) != 2 * t:
            raise ValueError("need |V1| = |V3| = t and |V2| = 2t")
        if self.V1 & self.V2 or self.V1 & self.V3 or self.V2 & self.V3:
            raise ValueError("parts must be disjoint")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        for v in self.V1 | self.V2 | self.V3:
            if not 0 <= v < self.host.n:
                raise ValueError(f"vertex {v} outside host")

    @property
    def t(self) -> int:
        return len(self.V1)


def dfs_tripartite_path(inst: TripartiteInstance) -> LoosePath:
    """Stack-based search for a long loose path alternating V1/V3 joints through V2 mids.

    Keeps a path ``S``, a discard set ``T`` and an untouched set ``U``.  An empty
    ``S`` takes the smallest untouched outer vertex; otherwise the last vertex
    ``u`` in ``V_i`` is extended by the lexicographically smallest ``(v, w)``
    with ``v`` in ``U & V2``, ``w`` in ``U & V_{4-i}`` and ``uvw`` an edge; if
    that fails the last two vertices (or the only one) move to ``T``.  The run
    ends when no outer vertex is untouched, and the longest ``S`` seen is
    returned.
    """
    G, V1, V2, V3 = inst.host, inst.V1, inst.V2, inst.V3
    outer = V1 | V3
    U = set(V1 | V2 | V3)
    S: list[int] = []
    T: set[int] = set()
    best: list[int] = []
    while U & outer:
        if not S:
            v = min(U & outer)
            S.append(v)
            U.discard(v)
        else:
            u = S[-1]
            side = V3 if u in V1 else V1
            choice = None
            for v in sorted(U & V2):
                ws = [w for w in G.codegree_set(u, v) if w in U and w in side]
                if ws:
                    choice = (v, min(ws))
                    break
            if choice is not None:
                S.extend(choice)
                U.difference_update(choice)
            elif len(S) >= 3:
                T.update(S[-2:])
                del S[-2:]
            else:
                T.add(S.pop())
        a = sum(1 for v in S if v in V1)
        b = sum(1 for v in S if v in V3)
        assert abs(a - b) <= 1, "joint classes out of balance"
        if len(S) > len(best):
            best = list(S)
    if not best:
        return LoosePath(())
    path = LoosePath(tuple(best))
    assert validate_loose_path(G, path)
    return path


@dataclass
class SupersaturationCheck:
    status: Literal["holds", "violated", "unchecked"]
    witness: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.status == "holds"


def check_supersaturation(inst: TripartiteInstance) -> SupersaturationCheck:
    """Exhaustively test that every choice of k-sets ``X_i`` in ``V_i`` spans a crossing edge.

    Only the outer pairs ``(X1, X3)`` are enumerated: they admit an empty
    ``X2`` exactly when at least ``k`` vertices of ``V2`` close no edge with a
    pair from ``X1 x X3``.
    """
    t, k = inst.t, inst.k
    if k > t:
        return SupersaturationCheck("holds")
    if comb(t, k) ** 2 * comb(2 * t, k) > SUPERSAT_LIMIT:
        return SupersaturationCheck("unchecked")
    G = inst.host
    V2 = sorted(inst.V2)
    v2set = inst.V2
    for X1 in combinations(sorted(inst.V1), k):
        for X3 in combinations(sorted(inst.V3), k):
            hit: set[int] = set()
            for a in X1:
                for c in X3:
                    hit.update(w for w in G.codegree_set(a, c) if w in v2set)
            free = [v for v in V2 if v not in hit]
            if len(free) >= k:
                return SupersaturationCheck("violated", (X1, tuple(free[:k]), X3))
    return SupersaturationCheck("holds")


@dataclass
class PathCover:
    paths: list[LoosePath]
    covered: frozenset[int]
    rho: float = 1.0
    within_budget: bool = True
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "paths": [list(p.vertices) for p in self.paths],
            "num_paths": len(self.paths),
            "within_budget": self.within_budget,
            "rho": self.rho,
        }


class _Grower:
    def __init__(self, G: Hypergraph3, free: set[int], rng, node_budget: int) -> None:
        self.G = G
        self.free = free
        self.rng = rng
        self.node_budget = node_budget

    def options(self, end: int) -> list[tuple[int, int]]:
        free = self.free
        out = []
        for a, b in self.G.link_pairs(end):
            if a in free and b in free:
                out.append((a, b))
                out.append((b, a))
        if self.rng is not None and len(out) > 1:
            order = self.rng.permutation(len(out))
            out = [out[i] for i in order]
        return out

    def step(self, path: deque, at_tail: bool) -> bool:
        end = path[-1] if at_tail else path[0]
        opts = self.options(end)
        if not opts:
            return False
        # prefer a joint that can itself be extended further
        pick = opts[0]
        for m, j in opts[:32]:
            self.free.discard(m)
            self.free.discard(j)
            alive = any(True for _ in self._iter_opts(j))
            self.free.add(m)
            self.free.add(j)
            if alive:
                pick = (m, j)
                break
        m, j = pick
        self.free.discard(m)
        self.free.discard(j)
        if at_tail:
            path.extend((m, j))
        else:
            path.extendleft((m, j))
        return True

    def _iter_opts(self, end: int):
        free = self.free
        for a, b in self.G.link_pairs(end):
            if a in free and b in free:
                yield a, b

    def deepen(self, path: deque, depth: int) -> bool:
        """Undo up to ``depth`` tail extensions and look for a strictly longer continuation."""
        for back in range(1, depth + 1):
            if len(path) < 2 * back + 1:
                return False
            removed = [path.pop() for _ in range(2 * back)]
            self.free.update(removed)
            budget = [self.node_budget]
            seq = self._search(path[-1], back + 1, budget)
            if seq is not None:
                for m, j in seq:
                    path.extend((m, j))
                    self.free.discard(m)
                    self.free.discard(j)
                return True
            for v in reversed(removed):
                path.append(v)
                self.free.discard(v)
        return False

    def _search(self, end: int, need: int, budget: list[int]) -> list[tuple[int, int]] | None:
        if need == 0:
            return []
        for m, j in self.options(end):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            self.free.discard(m)
            self.free.discard(j)
            rest = self._search(j, need - 1, budget)
            self.free.add(m)
            self.free.add(j)
            if rest is not None:
                return [(m, j)] + rest
        return None


def greedy_path_cover(
    G: Hypergraph3,
    rho: float,
    *,
    vertices: Iterable[int] | None = None,
    backtrack_depth: int = 3,
    seed: int | None = None,
    node_budget: int = 20_000,
) -> PathCover:
    """Cover ``vertices`` (default: all of V(G)) by vertex-disjoint loose paths.

    Paths are grown at both ends through edges whose two new vertices are
    still uncovered.  When both ends are stuck, up to ``backtrack_depth`` tail
    extensions are undone in search of a longer continuation.  Vertices that
    cannot be placed become length-0 paths.  ``seed`` randomises the choice
    among extensions; without it the order is ascending.
    """
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")
    todo = set(range(G.n)) if vertices is None else set(vertices)
    target = set(todo)
    rng = stream(seed, "cover") if seed is not None else None
    grow = _Grower(G, todo, rng, node_budget)
    paths: list[LoosePath] = []
    while todo:
        start = min(todo)
        if rng is not None:
            pool = sorted(todo)
            start = pool[int(rng.integers(len(pool)))]
        todo.discard(start)
        path: deque[int] = deque([start])
        while True:
            if grow.step(path, True):
                continue
            if grow.step(path, False):
                continue
            if backtrack_depth and grow.deepen(path, backtrack_depth):
                continue
            path.reverse()
            if backtrack_depth and grow.deepen(path, backtrack_depth):
                continue
            break
        paths.append(LoosePath(tuple(path)))
    covered: set[int] = set()
    for p in paths:
        assert validate_loose_path(G, p), "cover produced an invalid path"
        assert covered.isdisjoint(p.vertices), "cover paths overlap"
        covered.update(p.vertices)
    assert covered == target
    n = len(target)
    return PathCover(paths, frozenset(covered), rho, len(paths) <= rho * n)
