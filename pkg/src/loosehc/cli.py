"""Command-line harness.

Exit codes: 0 completed (findings are inside the report), 1 usage or input
error, 2 a search ran out of budget.  Reports go to ``--out``, else to
``$LOOSEHC_OUTPUT_DIR/<default name>`` when that variable is set, else stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .absorb import (
    AbsorberParams,
    AssemblyError,
    TemplateError,
    assemble_absorber,
    build_gadget_template,
    build_template,
    m3_density,
    verify_absorber,
    verify_template,
)
from .absorb.template import exhaustive_cost
from .hgraph import Hypergraph3, complete, load, min_d_degree, validate_loose_cycle
from .models import (
    AdversaryStrategy,
    ModelParams,
    adversary_prune,
    check_concentration,
    check_upper_uniform,
    extremal_codegree,
    extremal_degree,
    sample_h3np,
)
from .oracle import MAX_DECIDE_N, has_loose_hc
from .pathcover import TripartiteInstance, check_supersaturation, dfs_tripartite_path
from .pipeline import PipelineConfig, find_loose_hc_pipeline
from .rng import child_seed

SCHEMA = 1
ENV_DIR = "LOOSEHC_OUTPUT_DIR"
# Dirac-type thresholds as fractions of C(n-d, 3-d)
THRESHOLD = {1: Fraction(7, 16), 2: Fraction(1, 4)}
RESILIENCE_HEADER = ["schema", "n", "p", "d", "gamma", "target_fraction", "trials", "feasible", "successes", "unknown", "success_fraction"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# helpers -------------------------------------------------------------------
def _prob(s: str) -> float:
    v = float(s)
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return v


def _pos_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def parse_grid(spec: str) -> list[float]:
    """``a:b`` (step 0.05), ``a:b:step`` or a comma list."""
    if ":" in spec:
        parts = [float(x) for x in spec.split(":")]
        if len(parts) not in (2, 3):
            raise argparse.ArgumentTypeError("grid is a:b or a:b:step")
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 0.05
        if step <= 0 or hi < lo:
            raise argparse.ArgumentTypeError("grid needs lo <= hi and a positive step")
        k = int(round((hi - lo) / step))
        return [round(lo + i * step, 10) for i in range(k + 1)]
    try:
        return [float(x) for x in spec.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and not callable(v)}


def _emit(text: str, args: argparse.Namespace, default_name: str) -> None:
    out = getattr(args, "out", None)
    if out is None and os.environ.get(ENV_DIR):
        out = str(Path(os.environ[ENV_DIR]) / default_name)
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    p = Path(out)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text if text.endswith("\n") else text + "\n")


def _report(args: argparse.Namespace, body: dict, started: float | None = None) -> dict:
    rep = {"schema": SCHEMA, "version": __version__, "config": _config(args), **body}
    if started is not None:
        rep["wall_time"] = round(time.perf_counter() - started, 4)
    return rep


def _json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, default=str)


def _graph(args: argparse.Namespace) -> Hypergraph3:
    if getattr(args, "input", None):
        try:
            return load(args.input)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if getattr(args, "n", None) is not None and getattr(args, "p", None) is not None:
        if args.seed is None:
            raise UsageError("--seed is required for random instances")
        return sample_h3np(ModelParams(args.n, args.p, args.seed))
    raise UsageError("give --input or --n/--p/--seed")


# gen -------------------------------------------------------------------------
def cmd_gen(args: argparse.Namespace) -> int:
    n = args.n
    meta: dict = {"model": args.model, "n": n, "version": __version__}
    if args.model == "h3np":
        if args.p is None or args.seed is None:
            raise UsageError("h3np needs --p and --seed")
        G = sample_h3np(ModelParams(n, args.p, args.seed))
        meta.update(p=args.p, seed=args.seed)
    elif args.model == "complete":
        G = complete(n)
    else:
        if n < 8 or n % 2:
            raise UsageError("extremal models need an even n >= 8")
        G = extremal_codegree(n) if args.model == "extremal-codegree" else extremal_degree(n)
    if args.prune is not None:
        if args.seed is None:
            raise UsageError("--prune needs --seed")
        p = args.p if args.p is not None else None
        res = adversary_prune(G, AdversaryStrategy("random_thinning", d=args.d, target_fraction=args.prune, p=p), args.seed)
        G = res.graph
        meta.update(prune=args.prune, d=args.d, prune_feasible=res.feasible, min_degree=res.min_degree)
    fmt = args.format or ("text" if args.out and not args.out.endswith(".json") else "json")
    text = G.to_json(meta) if fmt == "json" else G.to_text([f"{k}={v}" for k, v in sorted(meta.items())])
    suffix = "json" if fmt == "json" else "txt"
    seed_part = f"_seed{args.seed}" if args.seed is not None else ""
    _emit(text, args, f"{args.model}_n{n}{seed_part}.{suffix}")
    return 0


# analyze ---------------------------------------------------------------------
def cmd_analyze(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    G = _graph(args)
    n = G.n
    body: dict = {"n": n, "edges": G.num_edges}
    body["density"] = G.num_edges / (n * (n - 1) * (n - 2) / 6) if n >= 3 else 0.0
    degs = [G.degree(v) for v in range(n)]
    body["min_degree"] = min_d_degree(G, 1)
    body["max_degree"] = max(degs, default=0)
    body["min_codegree"] = min_d_degree(G, 2)
    body["max_codegree"] = max((G.codegree(u, v) for u, v in combinations(range(n), 2)), default=0)
    if n >= 3:
        body["min_degree_fraction"] = body["min_degree"] / ((n - 1) * (n - 2) / 2)
        body["min_codegree_fraction"] = body["min_codegree"] / (n - 2)
    body["isolated"] = [v for v, d in enumerate(degs) if d == 0]
    _emit(_json(_report(args, body, t0)), args, "analyze.json")
    return 0


# check -----------------------------------------------------------------------
_GADGETS = {"A2": "A2", "a2": "A2", "contracted-backbone": "contracted_backbone", "backbone": "backbone1", "backbone1": "backbone1"}


def cmd_check_m3(args: argparse.Namespace) -> int:
    if args.gadget:
        tpl = build_gadget_template(_GADGETS[args.gadget])  # type: ignore[arg-type]
        H, _ = tpl.as_hypergraph()
    else:
        H = _graph(args)
    try:
        res = m3_density(H)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    body: dict = {"m3": str(res)}
    if args.witness:
        body["witness"] = {"edges": [list(e) for e in res.edges], "vertices": list(res.vertices)}
    _emit(_json(body), args, "m3.json")
    return 0


def cmd_check_concentration(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    G = _graph(args)
    p = args.p if args.p is not None else G.num_edges / max(1, (G.n * (G.n - 1) * (G.n - 2)) // 6)
    if args.seed is None:
        raise UsageError("--seed is required")
    reps = []
    for lemma in args.lemma:
        regimes = args.regime or (["i", "ii"] if lemma in ("one_edge", "two_edge") else ["ii"])
        for regime in regimes:
            rep = check_concentration(
                G, lemma, args.epsilon, args.trials, args.seed, p, regime=regime,
                threshold_const=args.threshold_const, general_const=args.general_const,
            )
            reps.append(rep)
    if args.format == "csv":
        chunks = [r.to_csv() for r in reps]
        head = chunks[0].splitlines()[0] if chunks else ""
        rows = [ln for c in chunks for ln in c.splitlines()[1:]]
        _emit("\n".join([head, *rows]), args, "concentration.csv")
        return 0
    body = {
        "reports": [
            {k: v for k, v in r.to_dict().items() if k != "details" or args.details} for r in reps
        ],
        "violations": sum(r.violations for r in reps),
    }
    _emit(_json(_report(args, body, t0)), args, "concentration.json")
    return 0


def cmd_check_upper_uniform(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    G = _graph(args)
    if args.seed is None:
        raise UsageError("--seed is required")
    p = args.p if args.p is not None else G.num_edges / max(1, (G.n * (G.n - 1) * (G.n - 2)) // 6)
    try:
        rep = check_upper_uniform(G, args.eta, args.b, p, args.trials, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = rep.to_dict()
    if not args.details:
        d.pop("details")
    _emit(_json(_report(args, d, t0)), args, "upper_uniform.json")
    return 0


def cmd_check_template(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    mode = args.mode.replace("-", "_")
    try:
        T = build_template(args.m, mode, seed=args.seed, degree=args.degree, retries=args.retries,
                           verify=args.verify, trials=args.trials)
    except TemplateError as exc:
        _emit(_json(_report(args, {"built": False, "error": str(exc)}, t0)), args, "template.json")
        return 2
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    verify = args.verify or ("exhaustive" if exhaustive_cost(args.m) <= 10 ** 6 else "sampled")
    rep = verify_template(T, verify, args.trials, seed=args.seed)
    body = {"built": True, "num_vertices": T.num_vertices, "num_edges": len(T.edges), "max_degree": T.max_degree,
            "verification": rep.to_dict()}
    if args.show:
        body["template"] = T.to_dict()
    _emit(_json(_report(args, body, t0)), args, "template.json")
    return 0


def cmd_check_absorber(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    G = _graph(args)
    rng = np.random.default_rng(child_seed(args.seed, "cli-absorber"))
    need = args.r + args.reservoir
    if need > G.n:
        raise UsageError("|R| + reservoir exceeds n")
    pick = [int(v) for v in rng.permutation(G.n)[:need]]
    R, W = pick[: args.r], pick[args.r:]
    params = AbsorberParams(d=args.d, template_mode=args.template_mode.replace("-", "_"), seed=args.seed,
                            restarts=args.restarts, gadget_budget=args.budget)
    try:
        asm = assemble_absorber(G, R, W, params)
    except AssemblyError as exc:
        body = {"assembled": False, "stage": exc.stage, "detail": exc.detail}
        _emit(_json(_report(args, body, t0)), args, "absorber.json")
        return 2 if "budget" in exc.detail else 0
    rep = verify_absorber(asm, G, args.verify, args.trials, args.seed)
    body = {"assembled": True, "order": asm.order, "a": asm.a, "b": asm.b, "R": list(asm.R),
            "verification": rep.to_dict()}
    if args.show:
        body["assembly"] = asm.to_dict()
    _emit(_json(_report(args, body, t0)), args, "absorber.json")
    return 0


def cmd_check_supersaturation(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    t, n = args.t, 4 * args.t
    G = sample_h3np(ModelParams(n, args.p, args.seed)) if args.p < 1 else complete(n)
    inst = TripartiteInstance(G, range(t), range(t, 3 * t), range(3 * t, 4 * t), args.k)
    chk = check_supersaturation(inst)
    body: dict = {"n": n, "t": t, "k": args.k, "status": chk.status,
                  "witness": [list(x) for x in chk.witness] if chk.witness else None}
    path = dfs_tripartite_path(inst)
    body["dfs_path"] = list(path.vertices)
    body["dfs_length"] = path.length
    body["target_length"] = 2 * t - 4 * args.k
    _emit(_json(_report(args, body, t0)), args, "supersaturation.json")
    return 0


# find ------------------------------------------------------------------------
def cmd_find_hc(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    G = _graph(args)
    if args.mode == "oracle":
        if G.n > MAX_DECIDE_N:
            raise UsageError(f"oracle mode supports n <= {MAX_DECIDE_N}")
        res = has_loose_hc(G, budget=args.budget)
        body = {"decision": res.decision, "reason": res.reason, "nodes": res.nodes,
                "cycle": list(res.cycle.vertices) if res.cycle else None}
        _emit(_json(body if args.bare else _report(args, body, t0)), args, "find_hc.json")
        return 2 if res.decision == "unknown" else 0
    if G.n % 2:
        body = {"decision": "no", "reason": "parity", "cycle": None}
        _emit(_json(body if args.bare else _report(args, body, t0)), args, "find_hc.json")
        return 0
    cfg = PipelineConfig(m=args.m, alpha=args.alpha, d=args.d, rho=args.rho, retries=args.retries,
                         seed=args.seed if args.seed is not None else 0)
    res = find_loose_hc_pipeline(G, cfg)
    body = {"decision": "yes" if res else "unknown", "cycle": list(res.cycle.vertices) if res.cycle else None,
            "pipeline": {k: v for k, v in res.to_dict().items() if k != "cycle"}}
    if res.cycle is not None:
        body["valid"] = bool(validate_loose_cycle(G, res.cycle))
    _emit(_json(body if args.bare else _report(args, body, t0)), args, "find_hc.json")
    return 0


# experiment -------------------------------------------------------------------
def resilience_trial(job: tuple) -> dict:
    """One replayable trial: sample, prune to ``threshold + gamma``, solve."""
    n, p, d, gamma, seed, trial, solver, budget = job
    s = child_seed(seed, "resilience", trial)
    target = float(THRESHOLD[d]) + gamma
    H = sample_h3np(ModelParams(n, p, s)) if p < 1 else complete(n)
    target = min(target, 1.0)
    pr = adversary_prune(H, AdversaryStrategy("random_thinning", d=d, target_fraction=target, p=p), s)
    rec = {"trial": trial, "seed": s, "gamma": gamma, "feasible": pr.feasible, "min_degree": pr.min_degree,
           "floor": pr.floor, "edges": pr.graph.num_edges}
    use = solver if solver != "auto" else ("oracle" if n <= MAX_DECIDE_N else "pipeline")
    if use == "oracle":
        res = has_loose_hc(pr.graph, budget=budget)
        rec["decision"] = res.decision
        ok = res.cycle is not None and bool(validate_loose_cycle(pr.graph, res.cycle))
    else:
        pres = find_loose_hc_pipeline(pr.graph, PipelineConfig(seed=s))
        rec["decision"] = "yes" if pres else "unknown"
        ok = pres.cycle is not None and bool(validate_loose_cycle(pr.graph, pres.cycle))
    rec["success"] = ok
    rec["solver"] = use
    return rec


def cmd_experiment_resilience(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.seed is None:
        raise UsageError("--seed is required")
    if args.n % 2:
        raise UsageError("n must be even")
    jobs = [(args.n, args.p, args.d, g, args.seed, gi * args.trials + t, args.solver, args.budget)
            for gi, g in enumerate(args.gamma_grid) for t in range(args.trials)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            records = list(ex.map(resilience_trial, jobs))
    else:
        records = [resilience_trial(j) for j in jobs]
    records.sort(key=lambda r: r["trial"])
    rows = []
    for g in args.gamma_grid:
        rs = [r for r in records if r["gamma"] == g]
        succ = sum(r["success"] for r in rs)
        rows.append({
            "schema": SCHEMA, "n": args.n, "p": args.p, "d": args.d, "gamma": g,
            "target_fraction": round(float(THRESHOLD[args.d]) + g, 10), "trials": len(rs),
            "feasible": sum(r["feasible"] for r in rs), "successes": succ,
            "unknown": sum(r["decision"] == "unknown" for r in rs),
            "success_fraction": succ / len(rs) if rs else 0.0,
        })
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=RESILIENCE_HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue(), args, "resilience.csv")
    else:
        _emit(_json(_report(args, {"rows": rows, "records": records}, t0)), args, "resilience.json")
    return 2 if any(r["decision"] == "unknown" and r["solver"] == "oracle" for r in records) else 0


# parser ------------------------------------------------------------------------
def _graph_args(p: argparse.ArgumentParser, random_ok: bool = True) -> None:
    p.add_argument("--input", help="hypergraph file (text or .json)")
    if random_ok:
        p.add_argument("--n", type=_pos_int)
        p.add_argument("--p", type=_prob)
    p.add_argument("--seed", type=_nonneg_int)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="loosehc", description="Loose Hamilton cycle toolkit for 3-uniform hypergraphs.")
    ap.add_argument("--version", action="version", version=f"loosehc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a hypergraph")
    g.add_argument("--model", required=True, choices=["h3np", "extremal-codegree", "extremal-degree", "complete"])
    g.add_argument("--n", type=_pos_int, required=True)
    g.add_argument("--p", type=_prob)
    g.add_argument("--seed", type=_nonneg_int)
    g.add_argument("--prune", type=float, help="adversarial thinning to this fraction of the expected d-degree")
    g.add_argument("--d", type=int, choices=[1, 2], default=2)
    g.add_argument("--format", choices=["json", "text"])
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="degree statistics")
    _graph_args(a)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="lemma checkers")
    csub = c.add_subparsers(dest="check", required=True, parser_class=_Parser)

    m3 = csub.add_parser("m3", help="exact 3-density")
    m3.add_argument("--gadget", choices=sorted(_GADGETS))
    m3.add_argument("--input")
    m3.add_argument("--witness", action="store_true")
    m3.add_argument("--out")
    m3.set_defaults(func=cmd_check_m3, n=None, p=None, seed=None)

    cc = csub.add_parser("concentration", help="empirical concentration checks")
    _graph_args(cc)
    cc.add_argument("--lemma", nargs="+", default=["one_edge", "two_edge", "general_edge"],
                    choices=["varying_size_sets", "one_edge", "two_edge", "general_edge"])
    cc.add_argument("--regime", nargs="+", choices=["i", "ii"])
    cc.add_argument("--epsilon", type=float, default=0.1)
    cc.add_argument("--trials", type=_pos_int, default=500)
    cc.add_argument("--threshold-const", type=float)
    cc.add_argument("--general-const", type=float, default=200.0)
    cc.add_argument("--details", action="store_true")
    cc.add_argument("--format", choices=["json", "csv"], default="json")
    cc.add_argument("--out")
    cc.set_defaults(func=cmd_check_concentration)

    uu = csub.add_parser("upper-uniform", help="upper-uniformity sampler")
    _graph_args(uu)
    uu.add_argument("--eta", type=float, default=0.1)
    uu.add_argument("--b", type=float, default=1.5)
    uu.add_argument("--trials", type=_pos_int, default=200)
    uu.add_argument("--details", action="store_true")
    uu.add_argument("--out")
    uu.set_defaults(func=cmd_check_upper_uniform)

    tp = csub.add_parser("template", help="build and verify a template graph")
    tp.add_argument("--m", type=_pos_int, required=True)
    tp.add_argument("--mode", choices=["compact", "exact-small", "random-bounded-degree"], default="compact")
    tp.add_argument("--degree", type=_pos_int, default=10)
    tp.add_argument("--retries", type=_pos_int, default=5)
    tp.add_argument("--verify", choices=["exhaustive", "sampled"])
    tp.add_argument("--trials", type=_pos_int, default=1000)
    tp.add_argument("--seed", type=_nonneg_int, default=0)
    tp.add_argument("--show", action="store_true")
    tp.add_argument("--out")
    tp.set_defaults(func=cmd_check_template)

    ab = csub.add_parser("absorber", help="assemble and verify an absorber")
    _graph_args(ab)
    ab.add_argument("--r", type=_nonneg_int, required=True, help="size of R")
    ab.add_argument("--reservoir", type=_nonneg_int, default=0, help="size of the connecting reservoir W")
    ab.add_argument("--d", type=int, choices=[1, 2], default=2)
    ab.add_argument("--template-mode", choices=["compact", "exact-small", "random-bounded-degree"], default="compact")
    ab.add_argument("--restarts", type=_pos_int, default=20)
    ab.add_argument("--budget", type=_pos_int, default=200_000)
    ab.add_argument("--verify", choices=["exhaustive", "sampled"], default="exhaustive")
    ab.add_argument("--trials", type=_pos_int, default=1000)
    ab.add_argument("--show", action="store_true")
    ab.add_argument("--out")
    ab.set_defaults(func=cmd_check_absorber)

    ss = csub.add_parser("supersaturation", help="supersaturation check plus DFS path on a random tripartite instance")
    ss.add_argument("--t", type=_pos_int, required=True)
    ss.add_argument("--k", type=_pos_int, required=True)
    ss.add_argument("--p", type=_prob, default=0.5)
    ss.add_argument("--seed", type=_nonneg_int, required=True)
    ss.add_argument("--out")
    ss.set_defaults(func=cmd_check_supersaturation)

    f = sub.add_parser("find", help="search for structures")
    fsub = f.add_subparsers(dest="target", required=True, parser_class=_Parser)
    hc = fsub.add_parser("hc", help="loose Hamilton cycle")
    _graph_args(hc)
    hc.add_argument("--mode", choices=["oracle", "pipeline"], default="pipeline")
    hc.add_argument("--budget", type=_pos_int, default=50_000_000)
    hc.add_argument("--m", type=_pos_int)
    hc.add_argument("--alpha", type=float)
    hc.add_argument("--d", type=int, choices=[1, 2], default=2)
    hc.add_argument("--rho", type=float, default=0.15)
    hc.add_argument("--retries", type=_pos_int, default=10)
    hc.add_argument("--bare", action="store_true", help="omit config echo and timing")
    hc.add_argument("--out")
    hc.set_defaults(func=cmd_find_hc)

    e = sub.add_parser("experiment", help="Monte Carlo sweeps")
    esub = e.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    rs = esub.add_parser("resilience", help="success fraction of loose Hamiltonicity across a gamma grid")
    rs.add_argument("--n", type=_pos_int, required=True)
    rs.add_argument("--p", type=_prob, required=True)
    rs.add_argument("--d", type=int, choices=[1, 2], default=2)
    rs.add_argument("--gamma-grid", type=parse_grid, required=True)
    rs.add_argument("--trials", type=_pos_int, default=10)
    rs.add_argument("--seed", type=_nonneg_int, default=0)
    rs.add_argument("--solver", choices=["auto", "oracle", "pipeline"], default="auto")
    rs.add_argument("--budget", type=_pos_int, default=50_000_000)
    rs.add_argument("--workers", type=_pos_int, default=1)
    rs.add_argument("--format", choices=["csv", "json"], default="csv")
    rs.add_argument("--out")
    rs.set_defaults(func=cmd_experiment_resilience)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except UsageError as exc:
        print(f"loosehc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
