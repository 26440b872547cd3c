"""End-to-end loose Hamilton cycle search: absorber, path cover, patching, absorption.

At desk scale the absorber is large compared to ``n``, so each run first
plans its shape.  The plan fixes the template, the number ``k`` of cover
paths the absorber can afford to patch through ``R``, and, when ``k = 0``,
exact join lengths that make the absorber span the whole vertex set.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Literal

from .absorb.assembly import (
    GADGET_INTERNAL,
    AbsorbError,
    AbsorberParams,
    AssemblyError,
    absorb,
    assemble_absorber,
)
from .absorb.template import TemplateError, TemplateGraph, build_template
from .connect import ConnectRequest, connect_pairs
from .hgraph import Hypergraph3, LooseCycle, validate_loose_cycle
from .pathcover import greedy_path_cover
from .rng import child_seed, stream

MAX_JOIN = 3
AUTO_M = tuple(range(1, 11))


@lru_cache(maxsize=None)
def compact_template(m: int, seed: int = 0) -> TemplateGraph:
    return build_template(m, "compact", seed=seed)


def max_cover_paths(m: int) -> int:
    """Largest ``k`` with ``k + 1`` one-vertex connectors still below ``m/2``."""
    return (m - 1) // 2 - 1


@dataclass(frozen=True)
class Plan:
    m: int
    template: TemplateGraph
    k_parity: int
    k_max: int
    join_lengths: tuple[int, ...]
    absorber_order: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "template_vertices": self.template.num_vertices,
            "template_edges": len(self.template.edges),
            "k_max": self.k_max,
            "k_parity": self.k_parity,
            "join_lengths": list(self.join_lengths),
            "absorber_order": self.absorber_order,
        }


def plan_absorber(n: int, T: TemplateGraph, d: int = 2) -> Plan | None:
    """Feasible absorber shape for ``n`` vertices, or None.

    The absorber order has fixed parity ``v(T) + 1`` whatever the join
    lengths, so the number of cover paths has fixed parity too.
    """
    m, v, e = T.m, T.num_vertices, len(T.edges)
    joins = max(e - 1, 0)
    k_max = max_cover_paths(m)
    if k_max < 0:
        return None
    smallest = v + GADGET_INTERNAL[d] * e - joins
    if smallest > n:
        return None
    parity = (n - smallest) % 2
    if parity > k_max:
        return None
    ks = [k for k in range(parity, k_max + 1, 2)]
    if ks == [0]:
        extra = (n - smallest) // 2
        if extra > MAX_JOIN * joins:
            return None
        lengths = [0] * joins
        for i in range(extra):
            lengths[i % joins] += 1
        return Plan(m, T, 0, 0, tuple(lengths), n)
    return Plan(m, T, parity, k_max, (0,) * joins, smallest)


def choose_plan(n: int, d: int = 2, m: int | None = None, seed: int = 0) -> Plan | None:
    """Explicit ``m`` or, in auto mode, the feasible ``m`` with the smallest absorber."""
    cands = [m] if m is not None else list(AUTO_M)
    best: Plan | None = None
    for mm in cands:
        try:
            T = compact_template(mm, seed)
        except TemplateError:
            continue
        p = plan_absorber(n, T, d)
        if p is None:
            continue
        if best is None or (p.absorber_order, -p.m) < (best.absorber_order, -best.m):
            best = p
    return best


@dataclass
class PipelineConfig:
    m: int | None = None
    alpha: float | None = None
    d: Literal[1, 2] = 2
    rho: float = 0.15
    retries: int = 10
    cover_tries: int = 5
    seed: int = 0
    gadget_budget: int = 200_000
    join_budget: int = 200_000
    connect_budget: int = 100_000
    restarts: int = 5

    def resolved_m(self, n: int) -> int | None:
        if self.m is not None:
            return self.m
        if self.alpha is not None:
            return max(1, round(self.alpha * n))
        return None


@dataclass
class PipelineResult:
    status: Literal["found", "failed"]
    cycle: LooseCycle | None = None
    plan: Plan | None = None
    attempts: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return self.status == "found"

    @property
    def failure_stages(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for a in self.attempts:
            if a["stage"] != "done":
                out[a["stage"]] = out.get(a["stage"], 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "cycle": list(self.cycle.vertices) if self.cycle else None,
            "plan": self.plan.to_dict() if self.plan else None,
            "attempts": self.attempts,
            "failure_stages": self.failure_stages,
            "seconds": round(self.seconds, 3),
        }


def _patch(G: Hypergraph3, a: int, b: int, paths: list[tuple[int, ...]], R: frozenset[int], budget: int):
    """Order and orient the cover paths so ``b -> P1 -> ... -> Pk -> a`` links through ``R`` by single vertices."""
    for order in permutations(range(len(paths))):
        for flips in product((False, True), repeat=len(paths)):
            seq = [paths[i][::-1] if f else paths[i] for i, f in zip(order, flips)]
            ends = [b]
            for p in seq:
                ends += [p[0], p[-1]]
            ends.append(a)
            pairs = tuple((ends[2 * i], ends[2 * i + 1]) for i in range(len(ends) // 2))
            res = connect_pairs(G, ConnectRequest(pairs, R, max_len=1), budget=budget)
            if res:
                return seq, [p.vertices[1] for p in res.paths]
    return None


def find_loose_hc_pipeline(G: Hypergraph3, config: PipelineConfig | None = None) -> PipelineResult:
    """Absorber, greedy cover, patching through ``R`` and absorption, with retries."""
    cfg = config or PipelineConfig()
    t0 = time.perf_counter()
    n = G.n
    if n % 2:
        raise ValueError("a loose Hamilton cycle needs an even number of vertices")
    plan = choose_plan(n, cfg.d, cfg.resolved_m(n))
    out = PipelineResult("failed", plan=plan)
    if plan is None:
        out.attempts.append({"attempt": 0, "stage": "plan", "detail": f"no feasible absorber for n={n}"})
        out.seconds = time.perf_counter() - t0
        return out
    for attempt in range(cfg.retries):
        seed = child_seed(cfg.seed, "pipeline", attempt)
        rng = stream(seed, "reservoir")
        rec: dict = {"attempt": attempt, "seed": seed}
        out.attempts.append(rec)
        R = sorted(int(v) for v in rng.choice(n, size=plan.m, replace=False))
        params = AbsorberParams(
            d=cfg.d,
            join="exact",
            join_lengths=plan.join_lengths,
            restarts=cfg.restarts,
            gadget_budget=cfg.gadget_budget,
            join_budget=cfg.join_budget,
            seed=seed,
        )
        try:
            asm = assemble_absorber(G, R, (), params, template=plan.template)
        except AssemblyError as exc:
            rec.update(stage="absorber", detail=str(exc))
            continue
        rest = sorted(set(range(n)) - asm.vertices)
        paths: list[tuple[int, ...]] = []
        if rest:
            best = None
            for t in range(cfg.cover_tries):
                cov = greedy_path_cover(G, cfg.rho, vertices=rest, seed=child_seed(seed, "cover", t))
                if best is None or len(cov.paths) < len(best.paths):
                    best = cov
                if len(best.paths) <= plan.k_max:
                    break
            assert best is not None
            paths = [tuple(p.vertices) for p in best.paths]
            rec["cover_paths"] = len(paths)
            if len(paths) > plan.k_max:
                rec.update(stage="cover", detail=f"{len(paths)} paths, at most {plan.k_max} can be patched")
                continue
        patched = _patch(G, asm.a, asm.b, paths, frozenset(asm.R), cfg.connect_budget)
        if patched is None:
            rec.update(stage="connect", detail="no single-vertex links through R")
            continue
        seq, used = patched
        try:
            core = absorb(asm, used)
        except (AbsorbError, ValueError) as exc:
            rec.update(stage="absorb", detail=str(exc))
            continue
        cyc: list[int] = list(core)
        for p, r in zip(seq, used):
            cyc.append(r)
            cyc.extend(p)
        cyc.append(used[-1])
        chk = validate_loose_cycle(G, cyc)
        if not chk or len(cyc) != n:
            rec.update(stage="validate", detail=chk.reason or "not spanning")
            continue
        rec.update(stage="done", absorber_order=asm.order, R_prime=sorted(used))
        out.status = "found"
        out.cycle = LooseCycle(tuple(cyc))
        break
    out.seconds = time.perf_counter() - t0
    return out
