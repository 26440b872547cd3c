"""Backtracking embeddings of gadget templates into a host hypergraph."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Collection, Literal, Mapping, Sequence

import numpy as np

from ..connect import ConnectRequest, connect_pairs
from ..hgraph import Hypergraph3, validate_loose_path
from ..paths import BudgetExceeded, Counter
from .gadgets import GadgetTemplate, build_gadget_template, expand_route

MAX_COUNT_N = 16


@dataclass
class EmbeddingResult:
    status: Literal["found", "exhausted", "budget"]
    mapping: dict[str, int] | None = None
    nodes: int = 0
    slot_paths: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == "found"


def _plan(tpl: GadgetTemplate, fixed: Collection[str]) -> list[tuple[str, list[tuple[str, str]], list[str], list[tuple[str, str]]]]:
    """Static label order.

    Each step lists the label, edges whose other two labels are already placed
    (codegree constraints), labels sharing an edge with it that are placed
    (vertex-link constraints) and edges to check once it is placed.
    """
    placed = list(fixed)
    done = set(placed)
    steps = []
    remaining = [v for v in tpl.vertices if v not in done]
    edges = [tuple(e) for e in tpl.edges]
    while remaining:
        def score(v: str) -> tuple[int, int, int]:
            two = sum(1 for e in edges if v in e and all(u in done for u in e if u != v))
            one = sum(1 for e in edges if v in e and any(u in done for u in e if u != v))
            return (two, one, -tpl.vertices.index(v))

        v = max(remaining, key=score)
        closes = [tuple(u for u in e if u != v) for e in edges if v in e and all(u in done for u in e if u != v)]
        touching = sorted({u for e in edges if v in e for u in e if u != v and u in done})
        steps.append((v, closes, touching, closes))  # type: ignore[arg-type]
        done.add(v)
        remaining.remove(v)
    return steps  # type: ignore[return-value]


def embed_template(
    G: Hypergraph3,
    tpl: GadgetTemplate,
    fixed: Mapping[str, int],
    forbidden: Collection[int] = (),
    domains: Mapping[str, Collection[int]] | None = None,
    budget: int | None = 200_000,
    rng: np.random.Generator | None = None,
    count_all: bool = False,
) -> tuple[EmbeddingResult, int]:
    """Injective label -> vertex map sending template edges to host edges.

    Candidates are tried in ascending index (or in a random order when ``rng``
    is given).  With ``count_all`` the search enumerates every embedding and the
    second return value is their number.
    """
    banned = set(forbidden) - set(fixed.values())
    for lbl, v in fixed.items():
        if v in forbidden:
            raise ValueError(f"fixed vertex {v} for {lbl} is forbidden")
    if len(set(fixed.values())) != len(fixed):
        return EmbeddingResult("exhausted"), 0
    for e in tpl.edges:
        if all(u in fixed for u in e) and not G.has_edge(*(fixed[u] for u in e)):
            return EmbeddingResult("exhausted"), 0
    steps = _plan(tpl, list(fixed))
    phi: dict[str, int] = dict(fixed)
    used = set(fixed.values())
    counter = Counter(budget)
    total = 0
    perm = rng.permutation(G.n) if rng is not None else None
    rank = {int(v): i for i, v in enumerate(perm)} if perm is not None else None

    def candidates(i: int) -> list[int]:
        lbl, closes, touching, _ = steps[i]
        if closes:
            a, b = closes[0]
            cand = set(G.codegree_set(phi[a], phi[b]))
            for a, b in closes[1:]:
                cand &= G.codegree_set(phi[a], phi[b])
        elif touching:
            cand = None
            for u in touching:
                nb = {w for e in G.incident(phi[u]) for w in e if w != phi[u]}
                cand = nb if cand is None else cand & nb
        else:
            cand = set(range(G.n))
        cand = {c for c in cand if c not in used and c not in banned}  # type: ignore[union-attr]
        if domains is not None and lbl in domains:
            cand &= set(domains[lbl])
        if rank is not None:
            return sorted(cand, key=rank.__getitem__)
        return sorted(cand)

    def rec(i: int) -> bool:
        nonlocal total
        counter.tick()
        if i == len(steps):
            total += 1
            return not count_all
        lbl = steps[i][0]
        for c in candidates(i):
            phi[lbl] = c
            used.add(c)
            if rec(i + 1):
                return True
            used.discard(c)
            del phi[lbl]
        return False

    try:
        found = rec(0)
    except BudgetExceeded:
        return EmbeddingResult("budget", nodes=counter.nodes), total
    if count_all:
        return EmbeddingResult("found" if total else "exhausted", nodes=counter.nodes), total
    if not found:
        return EmbeddingResult("exhausted", nodes=counter.nodes), 0
    for e in tpl.edges:
        assert G.has_edge(*(phi[u] for u in e))
    return EmbeddingResult("found", dict(phi), counter.nodes), 1


@dataclass
class GadgetEmbedding:
    kind: str
    mapping: dict[str, int]
    covering: tuple[int, ...]
    noncovering: tuple[int, ...]
    slot_paths: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def start(self) -> int:
        return self.covering[0]

    @property
    def end(self) -> int:
        return self.covering[-1]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.covering)

    @property
    def internal(self) -> frozenset[int]:
        return frozenset(self.noncovering)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "mapping": dict(self.mapping),
            "covering": list(self.covering),
            "noncovering": list(self.noncovering),
            "slot_paths": {k: list(v) for k, v in self.slot_paths.items()},
        }


def realise(tpl: GadgetTemplate, mapping: Mapping[str, int], slot_paths: Mapping[str, Sequence[int]]) -> GadgetEmbedding:
    inner = {k: list(v[1:-1]) for k, v in slot_paths.items()}

    def route(labels: Sequence[str]) -> tuple[int, ...]:
        seq = expand_route(tpl, labels, {k: [("#", x) for x in v] for k, v in inner.items()})
        return tuple(x[1] if isinstance(x, tuple) else mapping[x] for x in seq)

    assert tpl.covering_path is not None and tpl.noncovering_path is not None
    return GadgetEmbedding(tpl.kind, dict(mapping), route(tpl.covering_path), route(tpl.noncovering_path), {k: tuple(v) for k, v in slot_paths.items()})


def find_gadget_embedding(
    G: Hypergraph3,
    kind: str,
    x: int,
    y: int,
    forbidden: Collection[int] = (),
    *,
    reservoir: Collection[int] | None = None,
    budget: int | None = 200_000,
    rng: np.random.Generator | None = None,
    slot_max_len: int = 4,
    pin: Mapping[str, int] | None = None,
) -> tuple[EmbeddingResult, GadgetEmbedding | None]:
    """Copy of a gadget rooted at ``x`` and ``y`` avoiding ``forbidden``.

    For the larger gadget the backbone is embedded first (outside
    ``reservoir`` when one is given) and the four path slots are then joined
    through the reservoir, or through all remaining free vertices.  ``pin``
    fixes further labels (used to share a join vertex with a neighbour).
    """
    extra = dict(pin or {})
    if x in forbidden or y in forbidden:
        raise ValueError("roots must not be forbidden")
    if kind in ("A2", "contracted_backbone", "backbone1"):
        tpl = build_gadget_template(kind)  # type: ignore[arg-type]
        res, _ = embed_template(G, tpl, {tpl.roles["x"]: x, tpl.roles["y"]: y, **extra}, set(forbidden) - set(extra.values()), budget=budget, rng=rng)
        if not res or kind != "A2":
            return res, None
        return res, realise(tpl, res.mapping, {})  # type: ignore[arg-type]
    if kind != "A1":
        raise ValueError(f"unknown gadget kind {kind!r}")
    tpl = build_gadget_template("A1")
    block = set(forbidden) | (set(reservoir) if reservoir is not None else set())
    block -= {x, y, *extra.values()}
    res, _ = embed_template(G, tpl, {"x": x, "y": y, **extra}, block, budget=budget, rng=rng)
    if not res:
        return res, None
    phi = res.mapping
    assert phi is not None
    taken = set(phi.values())
    pool = set(reservoir) if reservoir is not None else set(range(G.n))
    pool -= taken | set(forbidden)
    req = ConnectRequest(tuple((phi[s.start], phi[s.end]) for s in tpl.slots), frozenset(pool), max_len=slot_max_len)
    con = connect_pairs(G, req)
    if not con:
        return EmbeddingResult("budget" if con.status == "budget" else "exhausted", None, res.nodes + con.nodes), None
    slots = {s.name: p.vertices for s, p in zip(tpl.slots, con.paths)}
    emb = realise(tpl, phi, slots)
    res.slot_paths = slots
    return res, emb


def count_a2_embeddings(G: Hypergraph3, x: int, y: int) -> int:
    """Number of injective ``(v1..v7)`` completing a copy of the small gadget rooted at ``x, y``."""
    if G.n > MAX_COUNT_N:
        raise ValueError(f"exhaustive counting is limited to n <= {MAX_COUNT_N}")
    if x == y:
        raise ValueError("roots must differ")
    tpl = build_gadget_template("A2")
    _, total = embed_template(G, tpl, {"x": x, "y": y}, budget=None, count_all=True)
    return total


def count_a2_brute(G: Hypergraph3, x: int, y: int) -> int:
    """Reference count by trying every ordered 7-tuple."""
    others = [v for v in range(G.n) if v not in (x, y)]
    c = 0
    for v in permutations(others, 7):
        if (
            G.has_edge(v[0], v[1], v[2])
            and G.has_edge(v[2], v[3], v[4])
            and G.has_edge(v[4], v[5], v[6])
            and G.has_edge(v[1], x, v[3])
            and G.has_edge(v[3], y, v[5])
        ):
            c += 1
    return c


def check_gadget(G: Hypergraph3, emb: GadgetEmbedding, x: int, y: int) -> bool:
    cov, skip = emb.covering, emb.noncovering
    return bool(
        validate_loose_path(G, cov)
        and validate_loose_path(G, skip)
        and cov[0] == skip[0]
        and cov[-1] == skip[-1]
        and set(cov) - set(skip) == {x, y}
    )
