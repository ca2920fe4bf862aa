"""Brute-force references for the fast max-plus routines.

Nothing here calls into :mod:`weakkam.maxplus` beyond its graph types; the
point is to fail when the fast code is wrong.  Size guards are hard limits.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ._numeric import Number
from .errors import NoCycle, TooLarge
from .maxplus import WeightedBlockGraph, weighted_graph
from .potential import Potential
from .shift import MarkovGraph, trim_essential

MAX_VERTICES = 12
MAX_WALKS = 2_000_000

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


def _adjacency(g: WeightedBlockGraph):
    idx = {v: i for i, v in enumerate(g.vertices)}
    out = [[] for _ in g.vertices]
    for e in g.edges:
        out[idx[e[:-1]]].append((idx[e[1:]], e))
    return idx, out


def simple_cycles(g: WeightedBlockGraph):
    """Every simple directed cycle, as a list of edge words, by backtracking.

    Each cycle is reported once, rooted at its smallest vertex index.
    """
    if len(g.vertices) > MAX_VERTICES:
        raise TooLarge(f"{len(g.vertices)} vertices exceeds the oracle limit {MAX_VERTICES}")
    _, out = _adjacency(g)
    n = len(out)
    for start in range(n):
        on_path = [False] * n
        on_path[start] = True
        stack = [(start, 0, [])]
        while stack:
            v, k, path = stack.pop()
            if k < len(out[v]):
                stack.append((v, k + 1, path))
                t, e = out[v][k]
                if t == start:
                    yield path + [e]
                elif t > start and not on_path[t]:
                    on_path[t] = True
                    stack.append((t, 0, path + [e]))
            else:
                if v != start:
                    on_path[v] = False


def brute_beta(g: WeightedBlockGraph) -> Number:
    best = None
    for cyc in simple_cycles(g):
        total = sum(g.weight[e] for e in cyc)
        mean = total / len(cyc) if isinstance(total, float) else Fraction(total, len(cyc))
        if best is None or mean > best:
            best = mean
    if best is None:
        raise NoCycle("graph has no cycle")
    return best


def _tropical_product(a, b):
    n = len(a)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            x = a[i][k]
            if x is None:
                continue
            row = b[k]
            for j in range(n):
                y = row[j]
                if y is not None and (out[i][j] is None or x + y > out[i][j]):
                    out[i][j] = x + y
    return out


def brute_minimal_subaction(g: WeightedBlockGraph, beta: Number, horizon: int) -> dict:
    """Best normalized weight over all backward walks of length ``<= horizon`` into each vertex.

    Walks of each exact length ``L`` are covered by the ``L``-th max-plus power of
    the dense normalized weight matrix; the empty walk contributes 0.
    """
    n = len(g.vertices)
    if n > MAX_VERTICES:
        raise TooLarge(f"{n} vertices exceeds the oracle limit {MAX_VERTICES}")
    if horizon < n:
        raise ValueError("horizon must be at least the number of vertices")
    idx = {v: i for i, v in enumerate(g.vertices)}
    step = [[None] * n for _ in range(n)]
    for e in g.edges:
        step[idx[e[:-1]]][idx[e[1:]]] = g.weight[e] - beta
    zero = 0.0 if isinstance(beta, float) else Fraction(0)
    best = [zero] * n
    power = step
    for _ in range(horizon):
        for i in range(n):
            for j in range(n):
                if power[i][j] is not None and power[i][j] > best[j]:
                    best[j] = power[i][j]
        power = _tropical_product(power, step)
    return {v: best[i] for v, i in idx.items()}


def count_walks(g: WeightedBlockGraph, k: int) -> int:
    counts = {v: 1 for v in g.vertices}
    for _ in range(k):
        counts = {v: sum(counts[e[1:]] for e in g.graph.out_edges(v)) for v in g.vertices}
    return sum(counts.values())


def ensure_feasible(g: WeightedBlockGraph, k: int) -> None:
    """Raise :class:`TooLarge` unless every oracle fits its guards for horizons up to ``k``."""
    if len(g.vertices) > MAX_VERTICES:
        raise TooLarge(f"{len(g.vertices)} vertices exceeds the oracle limit {MAX_VERTICES}")
    if k > 12 or count_walks(g, k) > MAX_WALKS:
        raise TooLarge(f"enumerating walks of length {k} exceeds the oracle limit")


def brute_finite_horizon(g: WeightedBlockGraph, k: int) -> Number:
    """``(1/k)`` times the best weight over an explicit enumeration of ``k``-edge walks."""
    if k < 1:
        raise ValueError("horizon must be at least 1")
    ensure_feasible(g, k)
    _, out = _adjacency(g)
    out = [[(t, g.weight[e]) for t, e in row] for row in out]
    best = None
    for start in range(len(out)):
        stack = [(start, 0, 0)]
        while stack:
            v, depth, total = stack.pop()
            if depth == k:
                if best is None or total > best:
                    best = total
                continue
            for t, w in out[v]:
                stack.append((t, depth + 1, total + w))
    if best is None:
        raise NoCycle("no walk of the requested length")
    return best / k if isinstance(best, float) else Fraction(best, k)


class Lcg64:
    """64-bit linear congruential generator; draws are the high 32 bits of the state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u32(self) -> int:
        self.state = (self.state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK64
        return self.state >> 32

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 32) - (1 << 32) % n
        while True:
            x = self.next_u32()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)


def _draw(seed: int, max_vertices: int, weight_range: tuple[int, int]):
    rng = Lcg64(seed)
    n = 1 + rng.below(max_vertices)
    edges = {}
    for i in range(n):
        for j in range(n):
            # about two out-edges per vertex on average
            if rng.below(n + 1) < 2:
                edges[(i, j)] = Fraction(rng.between(*weight_range))
    return MarkovGraph(tuple(range(n)), frozenset(edges)), edges


def generate_instance(
    seed: int, max_vertices: int = 7, weight_range: tuple[int, int] = (-9, 9)
) -> tuple[WeightedBlockGraph, int]:
    """Seeded random trimmed graph with integer weights, plus how many seeds were skipped.

    Generator: ``Lcg64(seed)``; vertex count ``1 + below(max_vertices)``; for each
    ordered pair ``(i, j)`` in row-major order the edge exists when
    ``below(n + 1) < 2`` and then takes weight ``between(lo, hi)``.  A draw that
    trims to nothing is replaced by the draw for ``seed + 1``, and so on.
    """
    skips = 0
    while True:
        g, edges = _draw(seed + skips, max_vertices, weight_range)
        core = trim_essential(g)
        if core.vertices:
            return weighted_graph(core, Potential(2, {e: edges[e] for e in core.edges})), skips
        skips += 1


def random_instance(seed: int, max_vertices: int = 7, weight_range: tuple[int, int] = (-9, 9)) -> WeightedBlockGraph:
    return generate_instance(seed, max_vertices, weight_range)[0]


def random_full_shift(seed: int, size: int, weight_range: tuple[int, int] = (-9, 9), order: int = 2):
    """Full shift on ``size`` symbols with seeded integer weights on every ``order``-word."""
    rng = Lcg64(seed)
    g = MarkovGraph.full(range(size))
    table = {w: Fraction(rng.between(*weight_range)) for w in product(range(size), repeat=order)}
    return g, Potential(order, table)
