"""Labelled gadget templates used to build absorbers.

Every template carries its edges over string labels. Templates with absorbing
behaviour also carry two label sequences between the same endpoints: one
through every vertex (the covering route) and one skipping the two root
vertices (the non-covering route).

The larger gadget has four path slots, each an unspecified short loose path
between two named vertices. A route crossing a slot is written as the two
slot endpoints next to each other; ``expand_route`` splices in the concrete
slot path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal, Mapping, Sequence

from ..hgraph import Hypergraph3, validate_loose_path

Kind = Literal["A2", "A1", "backbone1", "contracted_backbone"]
Label = str


@dataclass(frozen=True)
class Slot:
    name: str
    start: Label
    end: Label


@dataclass(frozen=True)
class GadgetTemplate:
    kind: str
    vertices: tuple[Label, ...]
    edges: tuple[tuple[Label, Label, Label], ...]
    covering_path: tuple[Label, ...] | None = None
    noncovering_path: tuple[Label, ...] | None = None
    roles: Mapping[str, Label] = field(default_factory=dict)
    slots: tuple[Slot, ...] = ()

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate template vertex")
        for e in self.edges:
            if len(set(e)) != 3 or not vs.issuperset(e):
                raise ValueError(f"bad template edge {e}")
        if not is_linear(self.edges):
            raise ValueError(f"{self.kind} template is not linear")

    @property
    def internal(self) -> tuple[Label, ...]:
        roots = {self.roles.get("x"), self.roles.get("y")}
        return tuple(v for v in self.vertices if v not in roots)

    def as_hypergraph(self) -> tuple[Hypergraph3, dict[Label, int]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        return Hypergraph3(len(self.vertices), [tuple(idx[v] for v in e) for e in self.edges]), idx

    def slot_between(self, u: Label, w: Label) -> tuple[Slot, bool] | None:
        for s in self.slots:
            if (s.start, s.end) == (u, w):
                return s, False
            if (s.start, s.end) == (w, u):
                return s, True
        return None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "covering_path": list(self.covering_path) if self.covering_path else None,
            "noncovering_path": list(self.noncovering_path) if self.noncovering_path else None,
            "roles": dict(self.roles),
            "slots": [[s.name, s.start, s.end] for s in self.slots],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def is_linear(edges: Sequence[Sequence]) -> bool:
    seen: set[frozenset] = set()
    for e in edges:
        a, b, c = e
        for p in (frozenset((a, b)), frozenset((a, c)), frozenset((b, c))):
            if p in seen:
                return False
            seen.add(p)
    return True


def _v(prefix: str, k: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, k + 1)]


def _a2_edges(v: Sequence[str], x: str, y: str) -> list[tuple[str, str, str]]:
    return [(v[0], v[1], v[2]), (v[2], v[3], v[4]), (v[4], v[5], v[6]), (v[1], x, v[3]), (v[3], y, v[5])]


def _side(s: str) -> list[tuple[str, str, str]]:
    c = [f"{s}1", f"{s}2", f"{s}3", s, f"{s}4", f"{s}5", f"{s}6", f"{s}7", f"{s}8", f"{s}9", f"{s}10"]
    return [(c[i], c[i + 1], c[i + 2]) for i in range(0, 10, 2)]


def _switch(s: str, t: str) -> list[tuple[str, str, str]]:
    return [(f"{s}1", f"{s}2", f"{s}3"), (f"{s}2", f"{s}4", f"{t}2"), (f"{s}3", f"{s}4", f"{t}9")]


_A1_SLOTS = (
    Slot("Px", "x10", "x1"),
    Slot("Py", "y10", "y1"),
    Slot("Q5", "x5", "y5"),
    Slot("Q7", "v7", "b1"),
)

# Both routes run a1 -> v1. Found by exhaustive search over the full gadget
# (slot paths of length four); each is the unique route of its kind.
_A1_COVER = (
    "a1 a2 a3 a4 x9 x8 x10 x1 x2 x3 x x4 x6 x5 y5 y6 y4 y y3 y2 y1 y10 y8 y9 "
    "b4 b3 b2 b1 v7 v5 v6 y7 v4 x7 v2 v3 v1"
).split()
_A1_SKIP = (
    "a1 a3 a2 a4 x2 x3 x1 x10 x9 x8 x7 x6 x4 x5 y5 y4 y6 y7 y8 y9 y10 y1 y3 y2 "
    "b4 b2 b3 b1 v7 v6 v5 v4 v3 v2 v1"
).split()


def build_gadget_template(kind: Kind) -> GadgetTemplate:
    if kind == "A2":
        v = _v("v", 7)
        return GadgetTemplate(
            "A2",
            ("x", "y", *v),
            tuple(_a2_edges(v, "x", "y")),
            ("v1", "v3", "v2", "x", "v4", "y", "v6", "v5", "v7"),
            tuple(v),
            {"x": "x", "y": "y", "start": "v1", "end": "v7"},
        )
    if kind in ("A1", "backbone1"):
        xs = ["x", *_v("x", 10)]
        ys = ["y", *_v("y", 10)]
        verts = (*xs, *ys, *_v("v", 7), *_v("a", 4), *_v("b", 4))
        edges = _side("x") + _side("y") + _a2_edges(_v("v", 7), "x7", "y7") + _switch("a", "x") + _switch("b", "y")
        if kind == "backbone1":
            return GadgetTemplate(kind, verts, tuple(edges), roles={"x": "x", "y": "y"})
        return GadgetTemplate(
            kind,
            verts,
            tuple(edges),
            tuple(_A1_COVER),
            tuple(_A1_SKIP),
            {"x": "x", "y": "y", "start": "a1", "end": "v1"},
            _A1_SLOTS,
        )
    if kind == "contracted_backbone":
        verts = ("x'", *_v("x", 10)[6:], "y'", *_v("y", 10)[6:], *_v("v", 7), *_v("a", 4), *_v("b", 4))
        edges = [
            ("x'", "x7", "x8"), ("x8", "x9", "x10"), ("a1", "a2", "a3"), ("a2", "a4", "x'"), ("a3", "a4", "x9"),
            ("y'", "y7", "y8"), ("y8", "y9", "y10"), ("b1", "b2", "b3"), ("b2", "b4", "y'"), ("b3", "b4", "y9"),
            *_a2_edges(_v("v", 7), "x7", "y7"),
        ]
        return GadgetTemplate("contracted_backbone", verts, tuple(edges), roles={"x": "x'", "y": "y'"})
    raise ValueError(f"unknown gadget kind {kind!r}")


def expand_route(
    template: GadgetTemplate, route: Sequence[Label], slot_inner: Mapping[str, Sequence]
) -> list:
    """Replace every slot crossing in ``route`` by the slot's internal vertices.

    ``slot_inner[name]`` lists the slot's internal vertices oriented from
    ``slot.start`` to ``slot.end``.  Labels are returned unchanged, so the
    result mixes labels with whatever ``slot_inner`` contains.
    """
    out: list = [route[0]]
    for u, w in zip(route, route[1:]):
        hit = template.slot_between(u, w)
        if hit is not None:
            slot, backwards = hit
            inner = list(slot_inner[slot.name])
            out.extend(reversed(inner) if backwards else inner)
        out.append(w)
    return out


def full_abstract_a1(slot_len: int = 4) -> tuple[Hypergraph3, dict[str, int], list[int], list[int]]:
    """The complete gadget with abstract slot paths of ``slot_len`` edges.

    Returns the hypergraph, the label index and both routes as vertex lists.
    """
    tpl = build_gadget_template("A1")
    labels = list(tpl.vertices)
    edges = list(tpl.edges)
    inner: dict[str, list[str]] = {}
    for s in tpl.slots:
        mids = [f"{s.name}.{i}" for i in range(1, 2 * slot_len)]
        inner[s.name] = mids
        labels += mids
        seq = [s.start, *mids, s.end]
        edges += [tuple(seq[i : i + 3]) for i in range(0, len(seq) - 2, 2)]
    idx = {v: i for i, v in enumerate(labels)}
    H = Hypergraph3(len(labels), [tuple(idx[v] for v in e) for e in edges])
    cover = [idx[v] for v in expand_route(tpl, tpl.covering_path, inner)]  # type: ignore[arg-type]
    skip = [idx[v] for v in expand_route(tpl, tpl.noncovering_path, inner)]  # type: ignore[arg-type]
    assert validate_loose_path(H, cover) and validate_loose_path(H, skip)
    return H, idx, cover, skip
