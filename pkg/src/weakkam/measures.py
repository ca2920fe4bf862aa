"""Invariant measures as stationary edge frequencies on a block graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ._numeric import Number, fmt
from .errors import CharacterizationViolation, EmptyCritical, NoCycle, UnsupportedEdge
from .maxplus import CriticalStructure, WeightedBlockGraph, word_key

Word = tuple


@dataclass(frozen=True)
class PeriodicOrbit:
    cycle: tuple[Word, ...]

    def __post_init__(self):
        c = tuple(tuple(e) for e in self.cycle)
        if not c:
            raise ValueError("empty cycle")
        for a, b in zip(c, c[1:] + c[:1]):
            if a[1:] != b[:-1]:
                raise ValueError(f"edges {a} and {b} do not chain")
        object.__setattr__(self, "cycle", c)

    @property
    def vertices(self) -> tuple[Word, ...]:
        return tuple(e[:-1] for e in self.cycle)

    @classmethod
    def from_vertices(cls, vertices: Iterable[Word]) -> "PeriodicOrbit":
        """Cycle through consecutive vertex words, closing back to the first."""
        vs = list(vertices)
        return cls(tuple(a + b[-1:] for a, b in zip(vs, vs[1:] + vs[:1])))


@dataclass(frozen=True)
class InvariantMeasure:
    edge_freq: Mapping[Word, Number]

    @property
    def support(self) -> tuple[Word, ...]:
        return tuple(sorted(e for e, f in self.edge_freq.items() if f != 0))

    def problems(self, tol: float = 0) -> list[str]:
        out = []
        if any(f < -tol for f in self.edge_freq.values()):
            out.append("negative frequency")
        if abs(sum(self.edge_freq.values()) - 1) > tol:
            out.append("total mass is not 1")
        balance: dict[Word, Number] = {}
        for e, f in self.edge_freq.items():
            balance[e[:-1]] = balance.get(e[:-1], 0) + f
            balance[e[1:]] = balance.get(e[1:], 0) - f
        if any(abs(b) > tol for b in balance.values()):
            out.append("flow is not balanced")
        return out

    def blend(self, other: "InvariantMeasure", t: Number) -> "InvariantMeasure":
        keys = set(self.edge_freq) | set(other.edge_freq)
        return InvariantMeasure({
            e: t * self.edge_freq.get(e, 0) + (1 - t) * other.edge_freq.get(e, 0)
            for e in sorted(keys)
        })

    def to_json(self) -> list:
        return [[list(e), fmt(f)] for e, f in sorted(self.edge_freq.items())]


def cycle_measure(c: PeriodicOrbit) -> InvariantMeasure:
    freq: dict[Word, Fraction] = {}
    step = Fraction(1, len(c.cycle))
    for e in c.cycle:
        freq[e] = freq.get(e, 0) + step
    return InvariantMeasure(dict(sorted(freq.items())))


def integrate(mu: InvariantMeasure, g: WeightedBlockGraph) -> Number:
    """``int A dmu`` as the frequency-weighted sum of edge weights."""
    total = g.zero()
    for e, f in mu.edge_freq.items():
        if f == 0:
            continue
        if e not in g.weight:
            raise UnsupportedEdge(f"measure charges edge {e} outside the graph")
        total += f * g.weight[e] if not g.tol else float(f) * g.weight[e]
    return total


def shortest_cycle(edges: Iterable[Word], vertices: Iterable[Word] | None = None) -> PeriodicOrbit:
    """Shortest cycle in the edge set; among those, lexicographically smallest from its least vertex."""
    edges = sorted(set(edges))
    succ: dict[Word, list[Word]] = {}
    pred: dict[Word, list[Word]] = {}
    for e in edges:
        succ.setdefault(e[:-1], []).append(e[1:])
        pred.setdefault(e[1:], []).append(e[:-1])
    verts = sorted(set(vertices) if vertices is not None else set(succ) | set(pred))
    best = None
    for v in verts:
        # distances to v along the edge set, by BFS on reversed edges
        dist = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for p in pred.get(x, ()):
                if p not in dist:
                    dist[p] = dist[x] + 1
                    queue.append(p)
        lengths = [dist[s] + 1 for s in succ.get(v, ()) if s in dist]
        if not lengths:
            continue
        L = min(lengths)
        if best is not None and L >= best[0]:
            continue
        path = [v]
        cur, remaining = v, L
        while remaining > 1:
            cur = next(s for s in succ[cur] if dist.get(s) == remaining - 1)
            path.append(cur)
            remaining -= 1
        best = (L, path)
    if best is None:
        raise NoCycle("edge set carries no cycle")
    return PeriodicOrbit.from_vertices(best[1])


@dataclass(frozen=True)
class MaximizingClass:
    vertices: tuple[Word, ...]
    edges: tuple[Word, ...]
    measure: InvariantMeasure
    integral: Number

    def to_json(self) -> dict:
        return {
            "vertices": [word_key(v) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "measure": self.measure.to_json(),
            "integral": fmt(self.integral),
        }


def maximizing_set(g: WeightedBlockGraph, cs: CriticalStructure) -> list[MaximizingClass]:
    """One ergodic maximizing measure per critical class."""
    if not cs.critical_classes:
        raise EmptyCritical("no critical class; the sub-action certificate was not valid")
    out = []
    for cls in cs.critical_classes:
        members = set(cls)
        edges = tuple(e for e in cs.critical_edges if e[:-1] in members)
        mu = cycle_measure(shortest_cycle(edges, cls))
        value = integrate(mu, g)
        if abs(value - cs.beta) > g.tol:
            raise CharacterizationViolation(
                f"critical cycle in class {cls[0]} integrates to {fmt(value)}, not beta={fmt(cs.beta)}"
            )
        out.append(MaximizingClass(tuple(cls), edges, mu, value))
    return out


def verify_maximizing(mu: InvariantMeasure, g: WeightedBlockGraph, cs: CriticalStructure) -> bool:
    """Whether ``mu`` is supported on the critical edges; must agree with ``int A dmu == beta``."""
    inside = set(mu.support) <= set(cs.critical_edges)
    value = integrate(mu, g)
    attains = abs(value - cs.beta) <= g.tol
    if inside != attains:
        raise CharacterizationViolation(
            f"support inside critical set: {inside}, but integral {fmt(value)} vs beta {fmt(cs.beta)}"
        )
    return inside


def symbol_cycle(g: WeightedBlockGraph, symbols: Iterable[int]) -> PeriodicOrbit:
    """Shortest periodic orbit whose itinerary stays inside ``symbols``."""
    allowed = set(symbols)
    return shortest_cycle(e for e in g.edges if set(e) <= allowed)
