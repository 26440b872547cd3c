"""Random instances, adversarial pruning, extremal constructions and concentration samplers."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import ceil, comb, floor, log
from typing import Callable, Iterable, Literal

import numpy as np

from .hgraph import Edge, Hypergraph3, e_pairs, e_triple, min_d_degree
from .rng import stream

LemmaId = Literal["varying_size_sets", "one_edge", "two_edge", "general_edge", "upper_uniform"]


@dataclass(frozen=True)
class ModelParams:
    n: int
    p: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")


_TRIPLE_CACHE: dict[int, np.ndarray] = {}


def _all_triples(n: int) -> np.ndarray:
    arr = _TRIPLE_CACHE.get(n)
    if arr is None:
        flat = np.fromiter(
            (v for t in combinations(range(n), 3) for v in t), dtype=np.int32, count=3 * comb(n, 3)
        )
        arr = flat.reshape(-1, 3)
        if n <= 400:
            _TRIPLE_CACHE[n] = arr
    return arr


def sample_h3np(params: ModelParams, stream_id: str = "h3np") -> Hypergraph3:
    """Binomial random 3-graph: each triple (lexicographic order) kept with probability p."""
    triples = _all_triples(params.n)
    if params.p >= 1.0:
        keep = triples
    elif params.p <= 0.0:
        keep = triples[:0]
    else:
        rng = stream(params.seed, stream_id)
        keep = triples[rng.random(len(triples)) < params.p]
    return Hypergraph3._trusted(params.n, map(tuple, keep.tolist()))


# extremal constructions ---------------------------------------------------
def extremal_cover(n: int) -> tuple[int, ...]:
    """The small set met by every edge of the extremal construction: ``0..ceil(n/4)-2``."""
    if n < 8 or n % 2:
        raise ValueError("extremal constructions need even n >= 8")
    return tuple(range(ceil(n / 4) - 1))


def _meeting(n: int, A: Iterable[int]) -> Hypergraph3:
    a = set(A)
    return Hypergraph3._trusted(n, (t for t in combinations(range(n), 3) if a.intersection(t)))


def extremal_codegree(n: int) -> Hypergraph3:
    """All triples meeting ``extremal_cover(n)``; pairs outside the cover have codegree |A|."""
    return _meeting(n, extremal_cover(n))


def extremal_degree(n: int) -> Hypergraph3:
    """Same triples-meeting-a-small-set construction, viewed through vertex degrees."""
    return _meeting(n, extremal_cover(n))


def extremal_outside_degree(n: int) -> int:
    a = len(extremal_cover(n))
    return comb(n - 1, 2) - comb(n - 1 - a, 2)


def extremal_edge_count(n: int) -> int:
    a = len(extremal_cover(n))
    return comb(n, 3) - comb(n - a, 3)


# adversary ----------------------------------------------------------------
@dataclass(frozen=True)
class AdversaryStrategy:
    kind: Literal["random_thinning", "extremal_pattern", "custom_mask"]
    d: int = 2
    target_fraction: float = 0.45
    removal_rate: float = 0.5
    p: float | None = None
    mask: Callable[[Edge], bool] | frozenset[Edge] | None = None

    def __post_init__(self) -> None:
        if self.d not in (1, 2):
            raise ValueError("d must be 1 or 2")
        if not 0.0 < self.target_fraction <= 1.0:
            raise ValueError("target_fraction must lie in (0, 1]")
        if not 0.0 <= self.removal_rate <= 1.0:
            raise ValueError("removal_rate must lie in [0, 1]")
        if self.kind == "custom_mask" and self.mask is None:
            raise ValueError("custom_mask strategy needs a mask")


@dataclass
class PruneResult:
    graph: Hypergraph3
    feasible: bool
    floor: int
    min_degree: int
    deficient: list[tuple[int, ...]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.feasible


def degree_floor(n: int, d: int, target_fraction: float, p: float) -> int:
    return ceil(target_fraction * p * comb(n - d, 3 - d) - 1e-9)


def adversary_prune(H: Hypergraph3, strategy: AdversaryStrategy, seed: int) -> PruneResult:
    """Spanning subgraph of ``H`` chosen by the strategy, with an explicit feasibility flag.

    ``random_thinning`` deletes each edge independently at ``removal_rate`` and
    then re-adds deleted edges at deficient d-sets until the floor
    ``target_fraction * p * C(n-d, 3-d)`` holds everywhere.  If ``H`` itself
    misses the floor somewhere the result is flagged infeasible and the
    offending d-sets are listed.
    """
    n, d = H.n, strategy.d
    p = strategy.p if strategy.p is not None else (H.num_edges / comb(n, 3) if n >= 3 else 0.0)
    floor_ = degree_floor(n, d, strategy.target_fraction, p)

    if strategy.kind == "extremal_pattern":
        A = set(extremal_cover(n))
        G = Hypergraph3._trusted(n, (e for e in H.edges if A.intersection(e)))
    elif strategy.kind == "custom_mask":
        m = strategy.mask
        keep = m if callable(m) else (lambda e, s=m: e in s)  # type: ignore[misc]
        G = Hypergraph3._trusted(n, (e for e in H.edges if keep(e)))
    else:
        G = _thin_and_restore(H, d, floor_, strategy.removal_rate, seed)

    deficient = _deficient_sets(G, d, floor_)
    return PruneResult(G, not deficient, floor_, min_d_degree(G, d), deficient)


def _thin_and_restore(H: Hypergraph3, d: int, floor_: int, rate: float, seed: int) -> Hypergraph3:
    edges = H.sorted_edges()
    if rate <= 0 or not edges:
        return H
    rng = stream(seed, "prune")
    drop = rng.random(len(edges)) < rate
    kept = {e for e, x in zip(edges, drop) if not x}
    removed = [e for e, x in zip(edges, drop) if x]
    order = rng.permutation(len(removed))
    removed = [removed[i] for i in order]

    def keys(e: Edge) -> list[tuple[int, ...]]:
        if d == 1:
            return [(v,) for v in e]
        a, b, c = e
        return [(a, b), (a, c), (b, c)]

    deg: dict[tuple[int, ...], int] = {}
    for e in kept:
        for k in keys(e):
            deg[k] = deg.get(k, 0) + 1
    spare: dict[tuple[int, ...], list[Edge]] = {}
    for e in removed:
        for k in keys(e):
            spare.setdefault(k, []).append(e)

    all_keys = [(v,) for v in range(H.n)] if d == 1 else list(combinations(range(H.n), 2))
    for k in all_keys:
        pool = spare.get(k, [])
        while deg.get(k, 0) < floor_ and pool:
            e = pool.pop()
            if e in kept:
                continue
            kept.add(e)
            for kk in keys(e):
                deg[kk] = deg.get(kk, 0) + 1
    return Hypergraph3._trusted(H.n, kept)


def _deficient_sets(G: Hypergraph3, d: int, floor_: int) -> list[tuple[int, ...]]:
    if d == 1:
        return [(v,) for v in range(G.n) if G.degree(v) < floor_]
    return [(u, v) for u, v in combinations(range(G.n), 2) if G.codegree(u, v) < floor_]


# concentration samplers ---------------------------------------------------
@dataclass
class TrialRecord:
    trial: int
    sizes: tuple[int, ...]
    observed: float
    bound: float
    violated: bool
    witness: dict | None = None


@dataclass
class ConcentrationReport:
    lemma_id: str
    trials: int
    violations: int
    epsilon: float
    details: list[TrialRecord] = field(default_factory=list)
    regime: str = ""
    skipped: bool = False
    skip_reason: str = ""
    seed: int = 0
    stream_id: str = ""
    params: dict = field(default_factory=dict)

    @property
    def violation_fraction(self) -> float:
        return self.violations / self.trials if self.trials else 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["violation_fraction"] = self.violation_fraction
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        width = max((len(r.sizes) for r in self.details), default=0)
        w.writerow(["lemma_id", "trial", *[f"size{i}" for i in range(width)], "observed", "bound", "violated"])
        for r in self.details:
            pad = list(r.sizes) + [""] * (width - len(r.sizes))
            w.writerow([self.lemma_id, r.trial, *pad, r.observed, r.bound, int(r.violated)])
        return buf.getvalue()


def _subset(rng: np.random.Generator, pool: np.ndarray, k: int) -> np.ndarray:
    return rng.choice(pool, size=k, replace=False)


def check_concentration(
    H: Hypergraph3,
    lemma_id: LemmaId,
    epsilon: float,
    trials: int,
    seed: int,
    p: float,
    *,
    regime: Literal["i", "ii"] = "ii",
    threshold_const: float | None = None,
    general_const: float = 200.0,
    gamma: float = 0.25,
    C: float = 1.0,
    lam: float = 0.05,
) -> ConcentrationReport:
    """Sample set configurations from a lemma's size regime and count bound violations.

    ``threshold_const`` replaces the ``epsilon**-3`` factor in the size
    thresholds of the one- and two-edge statements; ``general_const`` is the
    200 in ``xyzp >= 200 eps^-2 n``.  Defaults are the asymptotic constants;
    when they make a regime empty at this ``n`` the report is marked skipped.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    n = H.n
    c = epsilon ** -3 if threshold_const is None else threshold_const
    logn = log(n)
    stream_id = f"{lemma_id}/{regime}"
    rep = ConcentrationReport(
        lemma_id, 0, 0, epsilon, regime=regime if lemma_id in ("one_edge", "two_edge") else "",
        seed=seed, stream_id=stream_id,
        params={"p": p, "threshold_const": c, "general_const": general_const, "gamma": gamma, "C": C, "lam": lam},
    )
    verts = np.arange(n)

    def skip(reason: str) -> ConcentrationReport:
        rep.skipped = True
        rep.skip_reason = reason
        return rep

    if lemma_id == "one_edge":
        t = c * logn / (n * p)
        if regime == "ii":
            lo, hi = max(1, ceil(t)), n
            if lo > hi:
                return skip(f"needs sets of size >= {t:.1f} > n={n}")
        else:
            lo, hi = 1, min(n, floor(t))
            if hi < 1:
                return skip(f"threshold {t:.3f} < 1")
    elif lemma_id == "two_edge":
        t = c * logn / p
        if regime == "ii":
            lo = max(1, ceil(t))
            if lo > n - 2 or comb(n - lo, 2) < lo:
                return skip(f"needs |W|,|P| >= {t:.1f} at n={n}")
        else:
            hi = floor(t)
            if hi < 1:
                return skip(f"threshold {t:.3f} < 1")
    elif lemma_id == "general_edge":
        need = general_const * epsilon ** -2 * n
        if n ** 3 * p < need:
            return skip(f"xyzp >= {need:.0f} impossible at n={n}")
    elif lemma_id == "varying_size_sets":
        amax = floor(lam * n)
        if amax < 1:
            return skip(f"lam*n = {lam * n:.2f} < 1")
    else:
        raise ValueError(f"unknown lemma {lemma_id!r}")

    for trial in range(trials):
        rng = stream(seed, stream_id, trial)
        if lemma_id == "one_edge":
            if regime == "ii":
                x, y = (int(v) for v in rng.integers(lo, hi + 1, size=2))
            else:
                x = int(rng.integers(lo, hi + 1))
                y = int(rng.integers(1, x + 1))
            X, Y = _subset(rng, verts, x), _subset(rng, verts, y)
            obs = e_triple(H, X.tolist(), Y.tolist(), range(n))
            bound = (1 + epsilon) * x * y * n * p if regime == "ii" else epsilon ** -4 * x * logn
            sizes = (x, y)
            wit = {"X": sorted(X.tolist()), "Y": sorted(Y.tolist())}
        elif lemma_id == "two_edge":
            if regime == "ii":
                w = int(rng.integers(lo, n - 1))
                while comb(n - w, 2) < lo:
                    w -= 1
                npairs = int(rng.integers(lo, comb(n - w, 2) + 1))
            else:
                npairs = int(rng.integers(1, hi + 1))
                w = int(rng.integers(1, min(npairs, n - 2) + 1))
                npairs = min(npairs, comb(n - w, 2))
            W = _subset(rng, verts, w)
            rest = np.setdiff1d(verts, W)
            allp = list(combinations(rest.tolist(), 2))
            idx = rng.choice(len(allp), size=npairs, replace=False)
            P = [allp[i] for i in sorted(idx.tolist())]
            obs = e_pairs(H, P, W.tolist())
            bound = (1 + epsilon) * npairs * w * p if regime == "ii" else epsilon ** -4 * npairs * logn
            sizes = (npairs, w)
            wit = {"W": sorted(W.tolist()), "P": [list(q) for q in P]}
        elif lemma_id == "general_edge":
            for _ in range(10_000):
                x, y, z = (int(v) for v in rng.integers(1, n + 1, size=3))
                if x * y * z * p >= need:
                    break
            else:
                return skip("could not sample sizes in regime")
            X, Y, Z = (_subset(rng, verts, k) for k in (x, y, z))
            obs = e_triple(H, X.tolist(), Y.tolist(), Z.tolist())
            bound = (1 + epsilon) * x * y * z * p
            sizes = (x, y, z)
            wit = {"X": sorted(X.tolist()), "Y": sorted(Y.tolist()), "Z": sorted(Z.tolist())}
        else:
            a = int(rng.integers(1, amax + 1))
            b = int(rng.integers(0, min(floor(C * a), n - a) + 1))
            perm = rng.permutation(n)
            A, B = perm[:a], perm[a : a + b]
            obs = e_triple(H, A.tolist(), B.tolist(), range(n))
            bound = gamma * a * p * comb(n - 1, 2)
            sizes = (a, b)
            wit = {"A": sorted(A.tolist()), "B": sorted(B.tolist())}
        # the varying-sizes statement forbids reaching the bound; the others forbid exceeding it
        bad = obs >= bound if lemma_id == "varying_size_sets" else obs > bound
        rep.trials += 1
        rep.violations += int(bad)
        rep.details.append(TrialRecord(trial, sizes, float(obs), float(bound), bool(bad), wit if bad else None))
    return rep


def check_upper_uniform(
    H: Hypergraph3, eta: float, b: float, p: float, trials: int, seed: int
) -> ConcentrationReport:
    """Sample disjoint triples of large sets and test ``d(V1, V2, V3) <= b p``."""
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    if b <= 1:
        raise ValueError("b must exceed 1")
    n = H.n
    lo = ceil(eta * n)
    if eta * n < 1:
        raise ValueError("eta * n < 1: no admissible set sizes")
    rep = ConcentrationReport(
        "upper_uniform", 0, 0, 0.0, seed=seed, stream_id="upper_uniform", params={"eta": eta, "b": b, "p": p}
    )
    if 3 * lo > n:
        rep.skipped = True
        rep.skip_reason = f"three disjoint sets of size {lo} do not fit in n={n}"
        return rep
    for trial in range(trials):
        rng = stream(seed, "upper_uniform", trial)
        s1 = int(rng.integers(lo, n - 2 * lo + 1))
        s2 = int(rng.integers(lo, n - s1 - lo + 1))
        s3 = int(rng.integers(lo, n - s1 - s2 + 1))
        perm = rng.permutation(n)
        V1, V2, V3 = perm[:s1], perm[s1 : s1 + s2], perm[s1 + s2 : s1 + s2 + s3]
        obs = e_triple(H, V1.tolist(), V2.tolist(), V3.tolist()) / (s1 * s2 * s3)
        bad = obs > b * p
        rep.trials += 1
        rep.violations += int(bad)
        wit = {"V1": sorted(V1.tolist()), "V2": sorted(V2.tolist()), "V3": sorted(V3.tolist())} if bad else None
        rep.details.append(TrialRecord(trial, (s1, s2, s3), obs, b * p, bool(bad), wit))
    return rep
