"""Stringing gadget absorbers along a template graph into one (a, b, R)-absorber."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Collection, Literal, Sequence

import numpy as np

from ..connect import ConnectRequest, connect_pairs
from ..hgraph import Hypergraph3, validate_loose_path
from ..paths import BudgetExceeded, Counter, iter_loose_paths
from ..rng import stream
from .embed import GadgetEmbedding, check_gadget, find_gadget_embedding
from .template import TemplateGraph, build_template, perfect_matching

EXHAUSTIVE_SUBSETS = 10 ** 6
# internal vertices of one gadget when every slot path has length one
GADGET_INTERNAL = {2: 7, 1: 39}
START = {2: "v1", 1: "a1"}
END = {2: "v7", 1: "v1"}


class AssemblyError(RuntimeError):
    def __init__(self, stage: str, detail: str = "", witness: object = None) -> None:
        super().__init__(f"{stage}: {detail}" if detail else stage)
        self.stage = stage
        self.detail = detail
        self.witness = witness


class AbsorbError(RuntimeError):
    def __init__(self, reason: str, R_prime: Sequence[int] = ()) -> None:
        super().__init__(reason)
        self.reason = reason
        self.R_prime = tuple(R_prime)


@dataclass
class AbsorberParams:
    """Knobs for ``assemble_absorber``.

    ``join="connect"`` links consecutive gadgets by ``connect_pairs`` through the
    reservoir.  ``join="exact"`` uses ``join_lengths`` instead: one entry per
    link, 0 meaning the two gadgets share the join vertex and ``l >= 1`` a loose
    path of exactly ``l`` edges through vertices not used elsewhere.
    """

    d: Literal[1, 2] = 2
    template_mode: Literal["compact", "exact_small", "random_bounded_degree"] = "compact"
    template_seed: int = 0
    template_degree: int = 10
    join: Literal["connect", "exact"] = "connect"
    join_lengths: Sequence[int] | None = None
    connect_max_len: int = 4
    restarts: int = 20
    gadget_budget: int = 200_000
    join_budget: int = 200_000
    seed: int = 0


@dataclass
class AbsorberAssembly:
    a: int
    b: int
    R: tuple[int, ...]
    R0: tuple[int, ...]
    template: TemplateGraph | None
    f: dict[int, int]
    gadgets: list[GadgetEmbedding]
    connectors: list[tuple[int, ...]]
    d: int = 2
    core: tuple[int, ...] = ()
    attempts: int = 1
    vertices: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.vertices:
            vs: set[int] = set(self.core) | set(self.R) | set(self.R0)
            for g in self.gadgets:
                vs |= g.vertices
            for c in self.connectors:
                vs |= set(c)
            self.vertices = frozenset(vs)

    @property
    def order(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "R": list(self.R),
            "R0": list(self.R0),
            "d": self.d,
            "template": self.template.to_dict() if self.template else None,
            "f": {str(k): v for k, v in sorted(self.f.items())},
            "gadgets": [g.to_dict() for g in self.gadgets],
            "connectors": [list(c) for c in self.connectors],
            "core": list(self.core),
            "order": self.order,
            "attempts": self.attempts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def minimum_order(T: TemplateGraph, d: int = 2, shared: bool = True) -> int:
    """Fewest vertices an assembly on ``T`` can have."""
    e = len(T.edges)
    per_join = -1 if shared else 1
    return T.num_vertices + GADGET_INTERNAL[d] * e + per_join * max(e - 1, 0)


def _degenerate(G: Hypergraph3, W: Collection[int], rng: np.random.Generator) -> AbsorberAssembly:
    banned = set(W)
    cands = [e for e in G.edges if not banned.intersection(e)]
    if not cands:
        raise AssemblyError("degenerate", "no edge outside the reservoir")
    a, c, b = sorted(cands[int(rng.integers(len(cands)))])
    return AbsorberAssembly(a, b, (), (), None, {}, [], [], core=(a, c, b))


def _exact_joins(
    G: Hypergraph3,
    pairs: Sequence[tuple[int, int]],
    lengths: Sequence[int],
    pool: set[int],
    budget: int,
    rng: np.random.Generator,
) -> list[tuple[int, ...]] | None:
    counter = Counter(budget)
    out: list[tuple[int, ...]] = []
    order = list(range(len(pairs)))

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        u, v = pairs[i]
        opts = list(iter_loose_paths(G, u, v, lengths[i], pool, counter=counter))
        for j in rng.permutation(len(opts)):
            inner = opts[int(j)]
            pool.difference_update(inner)
            out.append((u, *inner, v))
            if rec(i + 1):
                return True
            out.pop()
            pool.update(inner)
        return False

    try:
        return out if rec(0) else None
    except BudgetExceeded:
        return None


def assemble_absorber(
    G: Hypergraph3,
    R: Collection[int],
    W: Collection[int] = (),
    params: AbsorberParams | None = None,
    *,
    template: TemplateGraph | None = None,
    avoid: Collection[int] = (),
) -> AbsorberAssembly:
    """Embed one gadget per template edge and link them into a single ab-path structure.

    Gadgets avoid ``W`` and ``avoid``; connectors run through ``W`` in
    ``connect`` mode and through any untouched vertex (outside ``avoid``) in
    ``exact`` mode.  Each restart draws a fresh ``R0``, bijection and candidate
    order.  Raises ``AssemblyError`` naming the failing stage.
    """
    params = params or AbsorberParams()
    R = tuple(sorted(set(R)))
    W = frozenset(W)
    avoid = frozenset(avoid)
    if set(R) & W:
        raise ValueError("R and W must be disjoint")
    if any(not 0 <= v < G.n for v in set(R) | W):
        raise ValueError("vertex outside the host graph")
    m = len(R)
    base = stream(params.seed, "assemble")
    if m == 0:
        return _degenerate(G, W | avoid, base)
    T = template if template is not None else build_template(
        m, params.template_mode, seed=params.template_seed, degree=params.template_degree
    )
    if T.m != m:
        raise ValueError("template size does not match |R|")
    e = len(T.edges)
    joins = max(e - 1, 0)
    if params.join == "exact":
        lengths = list(params.join_lengths if params.join_lengths is not None else [0] * joins)
        if len(lengths) != joins or any(l < 0 for l in lengths):
            raise ValueError(f"need {joins} non-negative join lengths")
    else:
        lengths = [1] * joins
    free = [v for v in range(G.n) if v not in W and v not in avoid and v not in R]
    need = (T.num_vertices - m) + GADGET_INTERNAL[params.d] * e - sum(1 for l in lengths if l == 0)
    if params.join == "exact":
        need += sum(2 * l - 1 for l in lengths if l > 0)
    if need > len(free):
        raise AssemblyError("capacity", f"need {need} vertices outside R and W, have {len(free)}")
    if params.join == "connect" and joins > len(W):
        raise AssemblyError("capacity", f"reservoir too small for {joins} connectors")

    Z = T.Z
    others = [v for v in range(T.num_vertices) if v not in set(Z)]
    kind = "A2" if params.d == 2 else "A1"
    last: AssemblyError | None = None
    for attempt in range(params.restarts):
        rng = stream(params.seed, "assemble", attempt)
        R0 = tuple(int(v) for v in rng.choice(free, size=len(others), replace=False)) if others else ()
        perm = rng.permutation(m)
        f = {z: R[int(perm[i])] for i, z in enumerate(Z)}
        f.update(zip(others, R0))
        blocked = set(R) | set(R0) | W | avoid
        gadgets: list[GadgetEmbedding] = []
        ok = True
        for i, (u, w) in enumerate(T.edges):
            x, y = f[u], f[w]
            pin = {}
            if i > 0 and lengths[i - 1] == 0:
                pin[START[params.d]] = gadgets[-1].end
            res, emb = find_gadget_embedding(
                G, kind, x, y, blocked - {x, y} - set(pin.values()),
                reservoir=None, budget=params.gadget_budget, rng=rng, pin=pin,
            )
            if emb is None:
                last = AssemblyError("gadget", f"edge {i} ({x},{y}): {res.status}", (u, w))
                ok = False
                break
            gadgets.append(emb)
            blocked |= emb.vertices
        if not ok:
            continue
        pairs = [(gadgets[i].end, gadgets[i + 1].start) for i in range(joins)]
        # a shared join is stored as the one-vertex path through it
        connectors: list[tuple[int, ...]] = [(p[0],) for p in pairs]
        todo = [i for i in range(joins) if lengths[i] > 0]
        if todo:
            if params.join == "connect":
                req = ConnectRequest(tuple(pairs[i] for i in todo), W, max_len=params.connect_max_len)
                con = connect_pairs(G, req, budget=params.join_budget)
                if not con:
                    last = AssemblyError("connect", con.status, con.failed_pair)
                    continue
                for i, p in zip(todo, con.paths):
                    connectors[i] = tuple(p.vertices)
            else:
                pool = set(range(G.n)) - blocked
                found = _exact_joins(G, [pairs[i] for i in todo], [lengths[i] for i in todo], pool, params.join_budget, rng)
                if found is None:
                    last = AssemblyError("connect", "no exact-length joins")
                    continue
                for i, p in zip(todo, found):
                    connectors[i] = p
        asm = AbsorberAssembly(
            gadgets[0].start, gadgets[-1].end, R, R0, T, f, gadgets, connectors, params.d, attempts=attempt + 1
        )
        return asm
    assert last is not None
    raise last


def _matching_edges(asm: AbsorberAssembly, R_prime: Collection[int]) -> set[tuple[int, int]]:
    assert asm.template is not None
    inv = {v: z for z, v in asm.f.items()}
    gone = [inv[r] for r in R_prime]
    M = perfect_matching(asm.template, gone)
    if M is None:
        raise AbsorbError("no_matching", tuple(R_prime))
    return set(M)


def absorb(asm: AbsorberAssembly, R_prime: Collection[int]) -> tuple[int, ...]:
    """Loose a..b path on exactly ``V(asm) - R_prime``.

    Gadgets on matched template edges take their covering route, all others
    the non-covering one.
    """
    Rp = set(R_prime)
    if not Rp <= set(asm.R):
        raise ValueError("R' must be a subset of R")
    if 2 * len(Rp) >= max(len(asm.R), 1) and Rp:
        raise ValueError("|R'| must be below |R|/2")
    if (asm.order - len(Rp)) % 2 == 0:
        raise ValueError("V(asm) minus R' must have odd size")
    if not asm.gadgets:
        return asm.core
    M = _matching_edges(asm, Rp)
    assert asm.template is not None
    path: list[int] = []
    for i, (edge, g) in enumerate(zip(asm.template.edges, asm.gadgets)):
        route = g.covering if edge in M else g.noncovering
        if i == 0:
            path.extend(route)
        else:
            c = asm.connectors[i - 1]
            path.extend(c[1:-1] if len(c) > 1 else ())
            path.extend(route if len(c) > 1 else route[1:])
    return tuple(path)


@dataclass
class AbsorberReport:
    mode: str
    checked: int = 0
    failures: list[tuple[tuple[int, ...], str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "checked": self.checked,
            "passed": self.passed,
            "failures": [{"R_prime": list(r), "reason": why} for r, why in self.failures],
        }


def admissible_sizes(asm: AbsorberAssembly) -> list[int]:
    m = len(asm.R)
    return [j for j in range(m + 1) if (2 * j < m or j == 0) and (asm.order - j) % 2 == 1]


def check_absorbed(G: Hypergraph3, asm: AbsorberAssembly, R_prime: Collection[int], path: Sequence[int]) -> str | None:
    chk = validate_loose_path(G, path)
    if not chk:
        return chk.reason
    if path[0] != asm.a or path[-1] != asm.b:
        return "wrong_endpoints"
    if set(path) != asm.vertices - set(R_prime):
        return "wrong_vertex_set"
    return None


def verify_absorber(
    asm: AbsorberAssembly,
    G: Hypergraph3,
    mode: Literal["exhaustive", "sampled"] = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
) -> AbsorberReport:
    """Run ``absorb`` on every (or randomly drawn) admissible ``R'`` and validate in ``G``."""
    rep = AbsorberReport(mode)
    sizes = admissible_sizes(asm)
    R = asm.R

    def run(Rp: tuple[int, ...]) -> None:
        rep.checked += 1
        try:
            path = absorb(asm, Rp)
        except AbsorbError as exc:
            rep.failures.append((Rp, exc.reason))
            return
        why = check_absorbed(G, asm, Rp, path)
        if why:
            rep.failures.append((Rp, why))

    if mode == "exhaustive":
        if 2 ** len(R) > EXHAUSTIVE_SUBSETS:
            raise ValueError("too many subsets for exhaustive verification")
        for j in sizes:
            for Rp in combinations(R, j):
                run(Rp)
        return rep
    rng = stream(seed, "absorber-verify")
    if not sizes:
        return rep
    w = np.array([comb(len(R), j) for j in sizes], dtype=float)
    w /= w.sum()
    for _ in range(trials):
        j = int(rng.choice(sizes, p=w))
        Rp = tuple(sorted(int(v) for v in rng.choice(R, size=j, replace=False))) if j else ()
        run(Rp)
    return rep


def gadgets_sound(G: Hypergraph3, asm: AbsorberAssembly) -> bool:
    assert asm.template is not None or not asm.gadgets
    return all(
        check_gadget(G, g, asm.f[u], asm.f[w]) for g, (u, w) in zip(asm.gadgets, asm.template.edges if asm.template else ())
    )
