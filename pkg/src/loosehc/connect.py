"""Saturating matchings in bipartite hypergraphs and short connections through a reservoir."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Literal, Sequence

from .hgraph import Hypergraph3, LoosePath, validate_loose_path
from .paths import BudgetExceeded, Counter, iter_loose_paths


@dataclass(frozen=True)
class BipartiteHypergraph:
    """Hypergraph whose edges meet ``A`` in exactly one vertex and ``B`` in the rest.

    ``ell`` is the uniformity; ``None`` allows edges of mixed size (each still
    has exactly one vertex in ``A``).
    """

    A: tuple[Hashable, ...]
    B: tuple[Hashable, ...]
    edges: tuple[frozenset, ...]
    ell: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "edges", tuple(frozenset(e) for e in self.edges))
        a, b = set(self.A), set(self.B)
        if a & b:
            raise ValueError("sides must be disjoint")
        for e in self.edges:
            if len(e & a) != 1 or not (e - a) <= b:
                raise ValueError(f"edge {set(e)} must have one vertex in A and the rest in B")
            if self.ell is not None and len(e) != self.ell:
                raise ValueError(f"edge {set(e)} is not {self.ell}-uniform")

    def owner(self, e: frozenset) -> Hashable:
        (a,) = e & set(self.A)
        return a


@dataclass
class HaxellResult:
    status: Literal["pass", "violation", "unchecked"]
    A_prime: tuple = ()
    B_prime: tuple = ()
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status == "pass"


def _min_hitting_set(sets: list[int], limit: int, counter: Counter) -> int | None:
    """Smallest bitmask meeting every mask in ``sets`` with at most ``limit`` bits, or None."""
    best: list[int | None] = [None]

    def rec(remaining: list[int], chosen: int, size: int, cap: int) -> bool:
        counter.tick()
        if not remaining:
            best[0] = chosen
            return True
        if size == cap:
            return False
        first = remaining[0]
        bits = first
        while bits:
            low = bits & -bits
            bits ^= low
            rest = [s for s in remaining if not s & low]
            if rec(rest, chosen | low, size + 1, cap):
                return True
        return False

    for cap in range(limit + 1):
        if rec(sets, 0, 0, cap):
            return best[0]
    return None


def haxell_check(H: BipartiteHypergraph, budget: int = 2_000_000) -> HaxellResult:
    """Search for ``A'`` and ``B'`` with ``|B'| <= (2l-3)(|A'|-1)`` such that every edge meeting ``A'`` meets ``B'``.

    Candidate ``A'`` are tried by increasing size and, for each, the smallest
    blocking ``B'`` is found by exact hitting-set search; the first size with a
    blocker yields the witness with the fewest ``B'`` vertices.
    """
    if H.ell is None:
        raise ValueError("the condition is stated for uniform hypergraphs")
    ell = H.ell
    bit = {b: 1 << i for i, b in enumerate(H.B)}
    Bs = list(H.B)
    per_a: dict[Hashable, list[int]] = {a: [] for a in H.A}
    for e in H.edges:
        a = H.owner(e)
        m = 0
        for v in e:
            if v != a:
                m |= bit[v]
        per_a[a].append(m)
    counter = Counter(budget)
    try:
        for size in range(1, len(H.A) + 1):
            best = None
            for Ap in combinations(H.A, size):
                counter.tick()
                sets = sorted({m for a in Ap for m in per_a[a]}, key=lambda m: (bin(m).count("1"), m))
                if any(m == 0 for m in sets):
                    continue  # an edge inside A' alone cannot be blocked
                limit = (2 * ell - 3) * (size - 1)
                if best is not None:
                    limit = min(limit, best[1] - 1)
                hs = _min_hitting_set(sets, limit, counter)
                if hs is not None:
                    k = bin(hs).count("1")
                    if best is None or k < best[1]:
                        best = (Ap, k, hs)
            if best is not None:
                Ap, _, hs = best
                Bp = tuple(b for b in Bs if hs & bit[b])
                return HaxellResult("violation", Ap, Bp, counter.nodes)
    except BudgetExceeded:
        return HaxellResult("unchecked", nodes=counter.nodes)
    return HaxellResult("pass", nodes=counter.nodes)


@dataclass
class MatchingResult:
    status: Literal["found", "none", "timeout"]
    edges: list[frozenset] = field(default_factory=list)
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status == "found"


def find_saturating_matching(H: BipartiteHypergraph, budget: int | None = 5_000_000) -> MatchingResult:
    """Complete backtracking search for disjoint edges covering ``A``."""
    options: dict[Hashable, list[frozenset]] = {a: [] for a in H.A}
    for e in H.edges:
        options[H.owner(e)].append(e)
    for a in options:
        options[a].sort(key=lambda e: sorted(map(repr, e)))
    counter = Counter(budget)
    chosen: list[frozenset] = []

    def rec(left: list[Hashable], used: set) -> bool:
        counter.tick()
        if not left:
            return True
        # most constrained remaining vertex first
        best, best_opts = None, None
        for a in left:
            opts = [e for e in options[a] if used.isdisjoint(e - {a})]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = a, opts
                if not opts:
                    return False
        rest = [a for a in left if a != best]
        for e in best_opts:  # type: ignore[union-attr]
            inner = e - {best}
            chosen.append(e)
            used.update(inner)
            if rec(rest, used):
                return True
            used.difference_update(inner)
            chosen.pop()
        return False

    try:
        ok = rec(list(H.A), set())
    except BudgetExceeded:
        return MatchingResult("timeout", nodes=counter.nodes)
    return MatchingResult("found" if ok else "none", list(chosen) if ok else [], counter.nodes)


# connecting pairs -----------------------------------------------------------
@dataclass(frozen=True)
class ConnectRequest:
    pairs: tuple[tuple[int, int], ...]
    reservoir: frozenset[int]
    max_len: int = 4
    epsilon: float | None = None
    structured: tuple[frozenset[int], frozenset[int], frozenset[int]] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(x), int(y)) for x, y in self.pairs))
        object.__setattr__(self, "reservoir", frozenset(self.reservoir))
        seen: dict[int, int] = {}
        for x, y in self.pairs:
            if x == y:
                raise ValueError("a pair needs two distinct vertices")
            for u in (x, y):
                seen[u] = seen.get(u, 0) + 1
        if any(c > 2 for c in seen.values()):
            raise ValueError("a vertex may appear in at most two pairs")
        if self.reservoir & seen.keys():
            raise ValueError("reservoir must avoid the paired vertices")
        if not 1 <= self.max_len <= 4:
            raise ValueError("max_len must lie in 1..4")
        if self.epsilon is not None and len(self.pairs) > self.epsilon * len(self.reservoir):
            raise ValueError("too many pairs for this reservoir")
        if self.structured is not None:
            parts = tuple(frozenset(p) for p in self.structured)
            object.__setattr__(self, "structured", parts)
            if sum(map(len, parts)) != len(set().union(*parts)) or set().union(*parts) != self.reservoir:
                raise ValueError("structured mode needs a partition of the reservoir into three parts")


@dataclass
class ConnectionResult:
    status: Literal["connected", "budget", "disproved"]
    paths: list[LoosePath] = field(default_factory=list)
    failed_pair: int | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status == "connected"

    @property
    def used(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.vertices[1:-1])


def _slots(req: ConnectRequest, length: int) -> list[frozenset[int]] | None:
    if req.structured is None:
        return None
    if length != 4:
        return [frozenset()] * (2 * length - 1)
    W1, W2, W3 = req.structured
    return [W1, W1, W2, W2, W2, W3, W3]


def _candidates(G: Hypergraph3, req: ConnectRequest, x: int, y: int, avail: set[int], counter: Counter):
    lengths = [4] if req.structured is not None else range(1, req.max_len + 1)
    for L in lengths:
        yield from iter_loose_paths(G, x, y, L, avail, _slots(req, L), counter)


def connect_pairs(
    G: Hypergraph3,
    req: ConnectRequest,
    budget: int = 100_000,
    fallback_limits: tuple[int, int] = (20, 6),
) -> ConnectionResult:
    """Join every requested pair by a loose path of length at most ``max_len`` through the reservoir.

    Paths are internally disjoint and use only reservoir vertices inside.
    Shorter paths are preferred, pairs with fewest direct options go first and
    dead ends are resolved by backtracking within ``budget`` nodes per pair.
    Small instances that exhaust the budget are settled exactly through the
    auxiliary bipartite formulation.
    """
    t = len(req.pairs)
    if t == 0:
        return ConnectionResult("connected")
    W = req.reservoir
    direct = [len(G.codegree_set(x, y) & W) for x, y in req.pairs]
    order = sorted(range(t), key=lambda i: (direct[i], i))
    counter = Counter(budget * t)
    chosen: dict[int, tuple[int, ...]] = {}
    avail = set(W)
    deepest = [0]

    def rec(pos: int) -> bool:
        deepest[0] = max(deepest[0], pos)
        if pos == t:
            return True
        i = order[pos]
        x, y = req.pairs[i]
        for inner in _candidates(G, req, x, y, avail, counter):
            chosen[i] = inner
            avail.difference_update(inner)
            if rec(pos + 1):
                return True
            avail.update(inner)
            del chosen[i]
        return False

    try:
        ok = rec(0)
        exhausted = True
    except BudgetExceeded:
        ok, exhausted = False, False
    if ok:
        paths = [LoosePath((x, *chosen[i], y)) for i, (x, y) in enumerate(req.pairs)]
        _recheck(G, req, paths)
        return ConnectionResult("connected", paths, nodes=counter.nodes)
    first_bad = order[min(deepest[0], t - 1)]
    if exhausted:
        # the backtracking above is complete: nothing was cut off
        return ConnectionResult("disproved", failed_pair=first_bad, nodes=counter.nodes)
    wmax, pmax = fallback_limits
    if len(W) <= wmax and t <= pmax:
        aux, witness = _exact_aux(G, req)
        res = find_saturating_matching(aux, budget=None)
        if res:
            paths = [None] * t
            for e in res.edges:
                (i,) = [v for v in e if isinstance(v, tuple) and v[0] == "pair"]
                key = frozenset(e - {i})
                paths[i[1]] = witness[(i[1], key)]
            _recheck(G, req, paths)  # type: ignore[arg-type]
            return ConnectionResult("connected", paths, nodes=counter.nodes)  # type: ignore[arg-type]
        return ConnectionResult("disproved", failed_pair=first_bad, nodes=counter.nodes)
    return ConnectionResult("budget", failed_pair=first_bad, nodes=counter.nodes)


def _exact_aux(G: Hypergraph3, req: ConnectRequest) -> tuple[BipartiteHypergraph, dict]:
    # one auxiliary edge per distinct internal vertex set, remembering a witness path
    A = [("pair", i) for i in range(len(req.pairs))]
    edges = []
    witness: dict[tuple[int, frozenset], LoosePath] = {}
    for i, (x, y) in enumerate(req.pairs):
        for inner in _candidates(G, req, x, y, set(req.reservoir), Counter(None)):
            key = frozenset(inner)
            if (i, key) not in witness:
                witness[(i, key)] = LoosePath((x, *inner, y))
                edges.append(key | {("pair", i)})
    return BipartiteHypergraph(A, sorted(req.reservoir), edges, None), witness


def _recheck(G: Hypergraph3, req: ConnectRequest, paths: Sequence[LoosePath]) -> None:
    seen: set[int] = set()
    for (x, y), p in zip(req.pairs, paths):
        assert p.start == x and p.end == y
        assert 1 <= p.length <= req.max_len
        assert validate_loose_path(G, p)
        inner = set(p.vertices[1:-1])
        assert inner <= req.reservoir and seen.isdisjoint(inner)
        seen |= inner


def build_aux_connection_hypergraph(
    G: Hypergraph3, req: ConnectRequest, d: int = 2, budget: int = 2_000_000
) -> BipartiteHypergraph:
    """Auxiliary hypergraph on pair indices and reservoir vertices.

    For ``d = 2`` an edge ``{i, w}`` means ``x_i w y_i`` is an edge of ``G``.  For
    ``d = 1`` an edge ``{i} + Z`` with ``|Z| = 7`` means some loose x_i..y_i path
    of length at most 4 has all its internal vertices in ``Z``.
    """
    W = sorted(req.reservoir)
    A = [("pair", i) for i in range(len(req.pairs))]
    edges: set[frozenset] = set()
    if d == 2:
        for i, (x, y) in enumerate(req.pairs):
            for w in W:
                if G.has_edge(x, w, y):
                    edges.add(frozenset({A[i], w}))
        return BipartiteHypergraph(A, W, sorted(edges, key=lambda e: sorted(map(repr, e))), 2)
    if d != 1:
        raise ValueError("d must be 1 or 2")
    size = 7
    if len(W) < size:
        return BipartiteHypergraph(A, W, (), size + 1)
    counter = Counter(budget)
    try:
        for i, (x, y) in enumerate(req.pairs):
            inners = {frozenset(t) for L in range(1, 5) for t in iter_loose_paths(G, x, y, L, W, counter=counter)}
            for inner in inners:
                rest = [w for w in W if w not in inner]
                for extra in combinations(rest, size - len(inner)):
                    counter.tick()
                    edges.add(inner | set(extra) | {A[i]})
    except BudgetExceeded as exc:
        raise RuntimeError("auxiliary hypergraph enumeration exceeded its budget") from exc
    return BipartiteHypergraph(A, W, sorted(edges, key=lambda e: sorted(map(repr, e))), size + 1)


def haxell_bipartite_from_sets(
    A: Iterable[Hashable], B: Iterable[Hashable], edges: Iterable[Iterable[Hashable]], ell: int
) -> BipartiteHypergraph:
    return BipartiteHypergraph(tuple(A), tuple(B), tuple(frozenset(e) for e in edges), ell)
