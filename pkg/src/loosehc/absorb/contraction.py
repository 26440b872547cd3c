"""Contracting vertex 4-tuples into single vertices, and the inverse bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..hgraph import Hypergraph3

Tuple4 = tuple[int, int, int, int]


@dataclass(frozen=True)
class ContractionSpec:
    U1: frozenset[int]
    U2: frozenset[int]
    F: tuple[Tuple4, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "U1", frozenset(self.U1))
        object.__setattr__(self, "U2", frozenset(self.U2))
        object.__setattr__(self, "F", tuple(tuple(w) for w in self.F))
        if self.U1 & self.U2:
            raise ValueError("U1 and U2 must be disjoint")
        seen = set(self.U1 | self.U2)
        for w in self.F:
            if len(w) != 4 or len(set(w)) != 4:
                raise ValueError(f"tuple {w} must have four distinct vertices")
            if seen.intersection(w):
                raise ValueError(f"tuple {w} overlaps U1, U2 or an earlier tuple")
            seen.update(w)

    def check_against(self, G: Hypergraph3) -> None:
        for v in self.U1 | self.U2 | {x for w in self.F for x in w}:
            if not 0 <= v < G.n:
                raise ValueError(f"vertex {v} outside the host graph")


@dataclass
class ContractionResult:
    graph: Hypergraph3
    # new vertex -> ("vertex", original) or ("tuple", index into F)
    provenance: list[tuple[str, int]]
    index: dict[tuple[str, int], int] = field(default_factory=dict)

    def vertex_of(self, v: int) -> int:
        return self.index[("vertex", v)]

    def tuple_vertex(self, i: int) -> int:
        return self.index[("tuple", i)]


def contract(G: Hypergraph3, spec: ContractionSpec) -> ContractionResult:
    """Keep ``G[U1 + U2]`` and add one vertex per tuple ``w``.

    The new vertex ``w`` forms an edge with ``u, v`` when both lie in ``U1``
    and ``w2 u v`` is an edge of ``G``, or both lie in ``U2`` and ``w4 u v``
    is.  New vertices come after the kept ones, in tuple order.
    """
    spec.check_against(G)
    kept = sorted(spec.U1 | spec.U2)
    prov: list[tuple[str, int]] = [("vertex", v) for v in kept] + [("tuple", i) for i in range(len(spec.F))]
    index = {p: i for i, p in enumerate(prov)}
    keep = set(kept)
    edges = [tuple(index[("vertex", x)] for x in e) for e in G.edges if keep.issuperset(e)]
    for i, w in enumerate(spec.F):
        t = index[("tuple", i)]
        for anchor, side in ((w[1], spec.U1), (w[3], spec.U2)):
            for u, v in G.link_pairs(anchor):
                if u in side and v in side:
                    edges.append((t, index[("vertex", u)], index[("vertex", v)]))
    return ContractionResult(Hypergraph3(len(prov), edges), prov, index)


def certify_contraction(G: Hypergraph3, spec: ContractionSpec, res: ContractionResult) -> list[tuple[int, int, int]]:
    """Edges of the contracted graph that their defining rule does not justify (empty when sound)."""
    bad = []
    for e in res.graph.edges:
        kinds = [res.provenance[x] for x in e]
        tuples = [k for k in kinds if k[0] == "tuple"]
        plain = [k[1] for k in kinds if k[0] == "vertex"]
        if not tuples:
            ok = G.has_edge(*plain)
        elif len(tuples) == 1:
            w = spec.F[tuples[0][1]]
            u, v = plain
            ok = (u in spec.U1 and v in spec.U1 and G.has_edge(w[1], u, v)) or (
                u in spec.U2 and v in spec.U2 and G.has_edge(w[3], u, v)
            )
        else:
            ok = False
        if not ok:
            bad.append(e)
    return bad


@dataclass
class ExpansionFamilies:
    """Disjoint pairs ``{u, v}`` with ``x u v`` an edge, and disjoint 4-tuples hanging off them.

    ``tuples[i] = (w1, w2, w3, w4)`` comes with ``via[i] = (u, v)`` such that
    ``u w1 w2`` and ``v w3 w4`` are edges.
    """

    root: int
    pairs: list[tuple[int, int]]
    tuples: list[Tuple4]
    via: list[tuple[int, int]]


def expansion_families(G: Hypergraph3, x: int, W: Sequence[int], max_tuples: int | None = None) -> ExpansionFamilies:
    """Greedy maximal collections: pairs through ``x`` first, then 4-tuples through those pairs."""
    pool = sorted(set(W) - {x})
    free = set(pool)
    pairs: list[tuple[int, int]] = []
    for u, v in sorted(G.link_pairs(x)):
        if u in free and v in free:
            pairs.append((u, v))
            free -= {u, v}
    tuples: list[Tuple4] = []
    via: list[tuple[int, int]] = []

    def grab(c: int) -> tuple[int, int] | None:
        for a, b in sorted(G.link_pairs(c)):
            if a in free and b in free:
                return a, b
        return None

    progress = True
    while progress and (max_tuples is None or len(tuples) < max_tuples):
        progress = False
        for u0, v0 in pairs:
            for u, v in ((u0, v0), (v0, u0)):
                if max_tuples is not None and len(tuples) >= max_tuples:
                    break
                first = grab(u)
                if first is None:
                    continue
                free -= set(first)
                second = grab(v)
                if second is None:
                    free |= set(first)
                    continue
                free -= set(second)
                tuples.append((first[0], first[1], second[0], second[1]))
                via.append((u, v))
                progress = True
    return ExpansionFamilies(x, pairs, tuples, via)


def unfold_contracted_backbone(
    G: Hypergraph3,
    spec: ContractionSpec,
    res: ContractionResult,
    embedding: Mapping[str, int],
    x: int,
    y: int,
    via: Mapping[int, tuple[int, int]],
) -> dict[str, int]:
    """Turn a contracted-backbone copy in the contracted graph into a backbone copy in ``G``.

    ``embedding`` maps template labels to contracted-graph vertices; ``via[i]``
    gives the pair ``(x3, x4)`` certifying tuple ``i``.  Raises if the result is
    not a valid backbone.
    """
    from .gadgets import build_gadget_template

    out: dict[str, int] = {"x": x, "y": y}
    for label, v in embedding.items():
        kind, ref = res.provenance[v]
        if label in ("x'", "y'"):
            if kind != "tuple":
                raise ValueError(f"{label} must sit on a contracted tuple")
            s = label[0]
            w1, w2, w5, w6 = spec.F[ref]
            a, b = via[ref]
            out.update({f"{s}1": w1, f"{s}2": w2, f"{s}3": a, f"{s}4": b, f"{s}5": w5, f"{s}6": w6})
        else:
            if kind != "vertex":
                raise ValueError(f"{label} must sit on an original vertex")
            out[label] = ref
    tpl = build_gadget_template("backbone1")
    if len(set(out.values())) != len(out) or set(out) != set(tpl.vertices):
        raise ValueError("unfolded map is not injective on the backbone")
    for e in tpl.edges:
        if not G.has_edge(*(out[v] for v in e)):
            raise ValueError(f"backbone edge {e} missing after unfolding")
    return out
