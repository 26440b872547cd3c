"""Immutable 3-uniform hypergraphs, degree operators and loose path/cycle checks.

Vertices are the integers ``0..n-1``. Edges are stored as sorted triples; a
pair index maps every pair ``(u, v)`` with ``u < v`` to the set of vertices
completing it to an edge, which makes codegree queries O(1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

Edge = tuple[int, int, int]


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Hypergraph3:
    """A 3-uniform hypergraph on ``range(n)``.

    Instances are treated as immutable: every operation that changes the edge
    set returns a new object.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        norm: set[Edge] = set()
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != 3:
                raise ValueError(f"edge {tuple(e)} does not have 3 vertices")
            if len(set(t)) != 3:
                raise ValueError(f"edge {tuple(e)} repeats a vertex")
            if t[0] < 0 or t[2] >= n:
                raise ValueError(f"edge {tuple(e)} out of range for n={n}")
            norm.add(t)  # type: ignore[arg-type]
        self._n = n
        self._edges: frozenset[Edge] = frozenset(norm)

    @classmethod
    def _trusted(cls, n: int, edges: Iterable[Edge]) -> "Hypergraph3":
        # caller guarantees sorted, distinct, in-range triples
        G = cls.__new__(cls)
        G._n = n
        G._edges = frozenset(edges)
        return G

    @cached_property
    def _index(self) -> tuple[dict[tuple[int, int], frozenset[int]], tuple[tuple[Edge, ...], ...]]:
        pairs: dict[tuple[int, int], set[int]] = {}
        inc: list[list[Edge]] = [[] for _ in range(self._n)]
        for e in self._edges:
            a, b, c = e
            pairs.setdefault((a, b), set()).add(c)
            pairs.setdefault((a, c), set()).add(b)
            pairs.setdefault((b, c), set()).add(a)
            inc[a].append(e)
            inc[b].append(e)
            inc[c].append(e)
        return (
            {k: frozenset(v) for k, v in pairs.items()},
            tuple(tuple(sorted(x)) for x in inc),
        )

    @property
    def _pairs(self) -> dict[tuple[int, int], frozenset[int]]:
        return self._index[0]

    @property
    def _inc(self) -> tuple[tuple[Edge, ...], ...]:
        return self._index[1]

    # basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self._n}, edges={self.num_edges})"

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def has_edge(self, a: int, b: int, c: int) -> bool:
        if a == b or b == c or a == c:
            return False
        return c in self._pairs.get(_pair(a, b), ())

    def codegree_set(self, u: int, v: int) -> frozenset[int]:
        return self._pairs.get(_pair(u, v), frozenset())

    def codegree(self, u: int, v: int) -> int:
        return len(self.codegree_set(u, v))

    def incident(self, v: int) -> tuple[Edge, ...]:
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def link_pairs(self, v: int) -> Iterator[tuple[int, int]]:
        """Pairs ``(u, w)`` with ``u < w`` such that ``{v, u, w}`` is an edge."""
        for e in self._inc[v]:
            a, b = (x for x in e if x != v)
            yield a, b

    def pairs(self) -> Iterator[tuple[tuple[int, int], frozenset[int]]]:
        return iter(self._pairs.items())

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 3)`` int array in lexicographic order."""
        if not self._edges:
            return np.zeros((0, 3), dtype=np.int64)
        return np.array(self.sorted_edges(), dtype=np.int64)

    @cached_property
    def _masks(self) -> dict[tuple[int, int], int]:
        out = {}
        for k, ws in self._pairs.items():
            m = 0
            for w in ws:
                m |= 1 << w
            out[k] = m
        return out

    def pair_mask(self, u: int, v: int) -> int:
        """Codegree neighbourhood of ``{u, v}`` as a bitset."""
        return self._masks.get(_pair(u, v), 0)

    # derived graphs ---------------------------------------------------
    def induced(self, vertices: Iterable[int]) -> "Hypergraph3":
        """Sub-hypergraph on the same vertex range keeping edges inside ``vertices``."""
        keep = set(vertices)
        return Hypergraph3(self._n, (e for e in self._edges if keep.issuperset(e)))

    def without_edges(self, drop: Iterable[Sequence[int]]) -> "Hypergraph3":
        gone = {tuple(sorted(e)) for e in drop}
        return Hypergraph3(self._n, (e for e in self._edges if e not in gone))

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Hypergraph3":
        return Hypergraph3(self._n, list(self._edges) + [tuple(e) for e in extra])

    def relabel(self, order: Sequence[int]) -> tuple["Hypergraph3", dict[int, int]]:
        """Compact the vertices listed in ``order`` to ``0..len(order)-1``."""
        idx = {v: i for i, v in enumerate(order)}
        edges = [tuple(idx[x] for x in e) for e in self._edges if all(x in idx for x in e)]
        return Hypergraph3(len(order), edges), idx

    # serialisation ---------------------------------------------------
    def to_text(self, header: Sequence[str] = ()) -> str:
        lines = [f"n {self._n}"]
        lines += [f"# {h}" for h in header]
        lines += [f"{a} {b} {c}" for a, b, c in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph3":
        rows = [ln.strip() for ln in text.splitlines()]
        rows = [r for r in rows if r and not r.startswith("#")]
        if not rows or not rows[0].startswith("n "):
            raise ValueError("text hypergraph must start with a line 'n <count>'")
        n = int(rows[0].split()[1])
        edges = []
        for r in rows[1:]:
            parts = r.split()
            if len(parts) != 3:
                raise ValueError(f"malformed edge line {r!r}")
            edges.append(tuple(int(p) for p in parts))
        return cls(n, edges)

    def to_dict(self) -> dict:
        return {"n": self._n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self, meta: dict | None = None) -> str:
        d = self.to_dict()
        if meta:
            d["meta"] = meta
        return json.dumps(d, separators=(",", ":"), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Hypergraph3":
        if "n" not in d or "edges" not in d:
            raise ValueError("JSON hypergraph needs keys 'n' and 'edges'")
        return cls(int(d["n"]), [tuple(e) for e in d["edges"]])

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph3":
        return cls.from_dict(json.loads(text))


def complete(n: int) -> Hypergraph3:
    return Hypergraph3(n, combinations(range(n), 3))


def load(path: str | Path) -> Hypergraph3:
    p = Path(path)
    text = p.read_text()
    if p.suffix == ".json" or text.lstrip().startswith("{"):
        return Hypergraph3.from_json(text)
    return Hypergraph3.from_text(text)


def save(G: Hypergraph3, path: str | Path, meta: dict | None = None) -> None:
    p = Path(path)
    if p.suffix == ".json":
        p.write_text(G.to_json(meta))
    else:
        header = [f"{k}={v}" for k, v in sorted((meta or {}).items())]
        p.write_text(G.to_text(header))


# degree operators ----------------------------------------------------
def deg_set(G: Hypergraph3, S: Iterable[int], W: Iterable[int] | None = None) -> int:
    """Number of edges containing ``S``; with ``W``, only edges whose other vertices lie in ``W``."""
    s = tuple(sorted(set(S)))
    if len(s) not in (1, 2):
        raise ValueError("S must contain 1 or 2 vertices")
    if s[0] < 0 or s[-1] >= G.n:
        raise ValueError(f"vertex out of range for n={G.n}")
    if len(s) == 2:
        nb = G.codegree_set(*s)
        if W is None:
            return len(nb)
        w = set(W)
        return sum(1 for z in nb if z in w)
    (v,) = s
    if W is None:
        return G.degree(v)
    w = set(W)
    return sum(1 for a, b in G.link_pairs(v) if a in w and b in w)


def min_d_degree(G: Hypergraph3, d: int) -> int:
    """Minimum vertex degree (d=1) or minimum codegree over all pairs (d=2)."""
    n = G.n
    if d == 1:
        return min((G.degree(v) for v in range(n)), default=0)
    if d == 2:
        if n < 2:
            return 0
        counts = [len(ws) for _, ws in G.pairs()]
        if len(counts) < comb(n, 2):
            return 0
        return min(counts)
    raise ValueError("d must be 1 or 2")


def _mask(n: int, S: Iterable[int]) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    idx = list(S)
    if idx:
        m[np.asarray(idx, dtype=np.int64)] = True
    return m


_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def e_triple(G: Hypergraph3, X: Iterable[int], Y: Iterable[int], Z: Iterable[int]) -> int:
    """Ordered triples ``(x, y, z)`` in ``X x Y x Z`` whose vertex set is an edge."""
    arr = G.edge_array
    if len(arr) == 0:
        return 0
    mx, my, mz = _mask(G.n, X), _mask(G.n, Y), _mask(G.n, Z)
    total = 0
    for i, j, k in _PERMS:
        total += int(np.count_nonzero(mx[arr[:, i]] & my[arr[:, j]] & mz[arr[:, k]]))
    return total


def e_pairs(G: Hypergraph3, P: Iterable[Sequence[int]], Z: Iterable[int]) -> int:
    """Pairs ``({x, y}, z)`` with ``{x, y}`` in ``P``, ``z`` in ``Z`` and ``xyz`` an edge."""
    zs = set(Z)
    total = 0
    for x, y in {_pair(*p) for p in P}:
        nb = G.codegree_set(x, y)
        if len(nb) < len(zs):
            total += sum(1 for z in nb if z in zs)
        else:
            total += sum(1 for z in zs if z in nb)
    return total


def neighborhood(G: Hypergraph3, seed: int | Sequence[int], W: Iterable[int]) -> frozenset[int]:
    """Vertices of ``W`` reachable in one edge from ``seed`` with the rest of the edge in ``W``.

    For a single vertex ``v`` this is ``{w in W : uvw in E for some u in W}``;
    for a pair ``{u, v}`` it is ``{w in W : uvw in E}``.
    """
    w = set(W)
    if isinstance(seed, (int, np.integer)):
        v = int(seed)
        out = set()
        for a, b in G.link_pairs(v):
            if a in w and b in w:
                out.add(a)
                out.add(b)
        return frozenset(out)
    u, v = seed
    return frozenset(z for z in G.codegree_set(u, v) if z in w)


# loose paths and cycles -------------------------------------------------
class Check(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class LoosePath:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def length(self) -> int:
        return (len(self.vertices) - 1) // 2

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def edges(self) -> list[Edge]:
        v = self.vertices
        return [tuple(sorted(v[i : i + 3])) for i in range(0, len(v) - 2, 2)]  # type: ignore[misc]

    def reversed(self) -> "LoosePath":
        return LoosePath(self.vertices[::-1])


@dataclass(frozen=True)
class LooseCycle:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) // 2

    def edges(self) -> list[Edge]:
        v = self.vertices
        L = len(v)
        return [tuple(sorted((v[i], v[(i + 1) % L], v[(i + 2) % L]))) for i in range(0, L, 2)]  # type: ignore[misc]


def _common(G: Hypergraph3, seq: Sequence[int]) -> Check | None:
    for v in seq:
        if not 0 <= v < G.n:
            return Check(False, f"vertex_out_of_range:{v}")
    if len(set(seq)) != len(seq):
        return Check(False, "repeated_vertex")
    return None


def validate_loose_path(G: Hypergraph3, path: LoosePath | Sequence[int]) -> Check:
    seq = path.vertices if isinstance(path, LoosePath) else tuple(path)
    if not seq:
        return Check(False, "empty")
    if len(seq) % 2 == 0:
        return Check(False, "even_vertex_count")
    bad = _common(G, seq)
    if bad is not None:
        return bad
    for i in range(0, len(seq) - 2, 2):
        if not G.has_edge(seq[i], seq[i + 1], seq[i + 2]):
            return Check(False, f"missing_edge:{i // 2}")
    return Check(True)


def validate_loose_cycle(G: Hypergraph3, cycle: LooseCycle | Sequence[int]) -> Check:
    seq = cycle.vertices if isinstance(cycle, LooseCycle) else tuple(cycle)
    if len(seq) % 2 == 1:
        return Check(False, "odd_vertex_count")
    if len(seq) < 6:
        return Check(False, "too_short")
    bad = _common(G, seq)
    if bad is not None:
        return bad
    L = len(seq)
    for i in range(0, L, 2):
        if not G.has_edge(seq[i], seq[i + 1], seq[(i + 2) % L]):
            return Check(False, f"missing_edge:{i // 2}")
    return Check(True)


def is_hamilton_cycle(G: Hypergraph3, cycle: LooseCycle | Sequence[int]) -> Check:
    seq = cycle.vertices if isinstance(cycle, LooseCycle) else tuple(cycle)
    c = validate_loose_cycle(G, seq)
    if not c:
        return c
    if len(seq) != G.n:
        return Check(False, "not_spanning")
    return Check(True)
