"""Finite truncations of Markov shifts over the alphabet of nonnegative integers.

A :class:`MarkovGraph` is the transition structure restricted to finitely many
symbols.  Trimming keeps the symbols that admit an infinite forward itinerary;
block lifting recodes range-``m`` potentials as edge weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .errors import BeyondExplicitRegion, EmptyShift, NotFinitelyPrimitive

Word = tuple  # tuple[int, ...]

DEFAULT_K0_CAP = 32


@dataclass(frozen=True)
class MarkovGraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    _succ: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(sorted(set(int(v) for v in self.vertices)))
        if any(v < 0 for v in verts):
            raise ValueError("symbols must be nonnegative integers")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        vs = set(verts)
        bad = [e for e in edges if e[0] not in vs or e[1] not in vs]
        if bad:
            raise ValueError(f"edges {sorted(bad)} leave the vertex set")
        succ = {v: [] for v in verts}
        for i, j in edges:
            succ[i].append(j)
        for v in succ:
            succ[v].sort()
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_succ", succ)

    @classmethod
    def full(cls, symbols: Iterable[int]) -> "MarkovGraph":
        symbols = list(symbols)
        return cls(tuple(symbols), frozenset(product(symbols, symbols)))

    @classmethod
    def from_rows(cls, symbols: Iterable[int], rows: Iterable[str]) -> "MarkovGraph":
        """Build from dense ``"0101"`` row strings, one per symbol in order."""
        symbols = sorted(symbols)
        rows = [r.replace(" ", "") for r in rows]
        if len(rows) != len(symbols) or any(len(r) != len(symbols) for r in rows):
            raise ValueError("transition rows must form a square 0/1 matrix over the symbols")
        edges = set()
        for a, row in zip(symbols, rows):
            for b, bit in zip(symbols, row):
                if bit not in "01":
                    raise ValueError(f"bad transition entry {bit!r}")
                if bit == "1":
                    edges.add((a, b))
        return cls(tuple(symbols), frozenset(edges))

    def successors(self, v: int) -> list[int]:
        return self._succ[v]

    def restrict(self, symbols: Iterable[int]) -> "MarkovGraph":
        keep = set(symbols) & set(self.vertices)
        return MarkovGraph(
            tuple(keep), frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)
        )

    def is_subgraph_of(self, other: "MarkovGraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and self.edges <= other.edges


@dataclass(frozen=True)
class PrimitivityCertificate:
    F: tuple[int, ...]
    K0: int

    @property
    def I_F(self) -> int:
        return max(self.F)


@dataclass(frozen=True)
class BlockGraph:
    """Higher-block presentation: vertices are (m-1)-words, edges are m-words."""

    order: int
    vertices: tuple[Word, ...]
    edges: tuple[Word, ...]
    _succ: dict = field(default_factory=dict, compare=False, repr=False)
    _pred: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        succ = {v: [] for v in self.vertices}
        pred = {v: [] for v in self.vertices}
        for e in self.edges:
            succ[e[:-1]].append(e)
            pred[e[1:]].append(e)
        for d in (succ, pred):
            for v in d:
                d[v].sort()
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    @staticmethod
    def source(edge: Word) -> Word:
        return edge[:-1]

    @staticmethod
    def target(edge: Word) -> Word:
        return edge[1:]

    def out_edges(self, v: Word) -> list[Word]:
        return self._succ[v]

    def in_edges(self, v: Word) -> list[Word]:
        return self._pred[v]

    def symbols(self) -> set[int]:
        return {s for v in self.vertices for s in v}


def trim_essential(g: MarkovGraph) -> MarkovGraph:
    """Drop sinks repeatedly; what survives has an infinite forward itinerary."""
    alive = set(g.vertices)
    outdeg = {v: 0 for v in alive}
    preds = {v: [] for v in alive}
    for i, j in g.edges:
        outdeg[i] += 1
        preds[j].append(i)
    queue = [v for v in alive if outdeg[v] == 0]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for p in preds[v]:
            if p in alive:
                outdeg[p] -= 1
                if outdeg[p] == 0:
                    queue.append(p)
    return g.restrict(alive)


def _reach(g: MarkovGraph, F: set[int], k: int) -> dict[int, set[int]]:
    """For each vertex i, the set of j joined by a path with exactly k interior F-symbols."""
    succ = {v: set(g.successors(v)) for v in g.vertices}
    # frontier[i] = interior endpoints reachable with the interior so far
    frontier = {i: succ[i] & F for i in g.vertices}
    for _ in range(k - 1):
        frontier = {i: set().union(*(succ[l] & F for l in cur)) if cur else set()
                    for i, cur in frontier.items()}
    return {i: set().union(*(succ[l] for l in cur)) if cur else set()
            for i, cur in frontier.items()}


def compute_primitivity(g: MarkovGraph, F: Iterable[int], k0_cap: int = DEFAULT_K0_CAP) -> PrimitivityCertificate:
    """Smallest uniform connection length ``K0`` through the connecting set ``F``.

    Every ordered pair of vertices must be joined by a path whose ``K0`` interior
    symbols all lie in ``F``.  ``K0`` is searched from 1; the check is exhaustive.
    """
    F = set(F)
    if not F:
        raise NotFinitelyPrimitive("connecting set F is empty")
    if not F <= set(g.vertices):
        raise NotFinitelyPrimitive(f"F contains non-essential symbols {sorted(F - set(g.vertices))}")
    if k0_cap < 0:
        raise ValueError("k0_cap must be nonnegative")
    verts = set(g.vertices)
    for k in range(1, k0_cap + 1):
        reach = _reach(g, F, k)
        if all(reach[i] >= verts for i in g.vertices):
            return PrimitivityCertificate(tuple(sorted(F)), k)
    raise NotFinitelyPrimitive(f"no uniform connection length K0 <= {k0_cap} through F={sorted(F)}")


def certificate_holds(g: MarkovGraph, cert: PrimitivityCertificate) -> bool:
    reach = _reach(g, set(cert.F), cert.K0)
    verts = set(g.vertices)
    return all(reach[i] >= verts for i in g.vertices)


def allowed_words(g: MarkovGraph, length: int) -> list[Word]:
    words = [(v,) for v in g.vertices]
    succ = {v: g.successors(v) for v in g.vertices}
    for _ in range(length - 1):
        words = [w + (s,) for w in words for s in succ[w[-1]]]
    return words


def lift_blocks(g: MarkovGraph, m: int) -> BlockGraph:
    if m < 2:
        raise ValueError("block order must be at least 2")
    g = trim_essential(g)
    edges = allowed_words(g, m)
    if not edges:
        raise EmptyShift(f"no essential words of length {m - 1}")
    vertices = sorted({e[:-1] for e in edges} | {e[1:] for e in edges})
    return BlockGraph(m, tuple(vertices), tuple(sorted(edges)))


def truncate(model, I: int) -> MarkovGraph:
    """The trimmed graph of the subshift on symbols ``{0, ..., I}``.

    ``model`` is a :class:`~weakkam.potential.CountableModel` or a bare
    :class:`MarkovGraph` (whose largest symbol then bounds the explicit region).
    """
    graph = getattr(model, "graph", model)
    i_max = getattr(model, "i_max", None)
    if i_max is None:
        i_max = max(graph.vertices, default=-1)
    if I > i_max:
        raise BeyondExplicitRegion(f"level {I} exceeds the explicit region bound {i_max}")
    return trim_essential(graph.restrict(range(I + 1)))
