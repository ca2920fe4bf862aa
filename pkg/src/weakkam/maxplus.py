"""Max-plus spectral machinery on weighted block graphs.

On a finite block graph a locally constant potential is an edge weighting, the
ergodic maximizing value is the maximum cycle mean, calibrated sub-actions are
max-plus eigenvectors of the transposed weight matrix, and the minimal
sub-action is a longest-backward-walk potential.

Edge ``e`` runs from ``e[:-1]`` to ``e[1:]``; a sub-action ``u`` lives on
vertices and the defect of ``e`` is ``w(e) + u(source) - u(target) - beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ._numeric import Number, div, fmt, tolerance
from .errors import (
    InvalidSubAction,
    NoCycle,
    NotStronglyConnected,
    PositiveCycle,
)
from .potential import Potential
from .shift import BlockGraph, MarkovGraph, lift_blocks

Word = tuple


@dataclass(frozen=True)
class WeightedBlockGraph:
    graph: BlockGraph
    weight: Mapping[Word, Number]
    tol: float = field(default=0, compare=False)

    def __post_init__(self):
        missing = [e for e in self.graph.edges if e not in self.weight]
        if missing:
            raise ValueError(f"unweighted edges {missing[:5]}")
        object.__setattr__(self, "tol", tolerance(self.weight.values()))

    @property
    def vertices(self) -> tuple[Word, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Word, ...]:
        return self.graph.edges

    def zero(self) -> Number:
        return 0.0 if self.tol else Fraction(0)

    def restrict(self, vertices: Iterable[Word]) -> "WeightedBlockGraph":
        keep = set(vertices)
        edges = tuple(e for e in self.edges if e[:-1] in keep and e[1:] in keep)
        bg = BlockGraph(self.graph.order, tuple(sorted(keep)), edges)
        return WeightedBlockGraph(bg, {e: self.weight[e] for e in edges})


def weighted_graph(g: MarkovGraph, p: Potential) -> WeightedBlockGraph:
    """Lift ``g`` to order ``max(m, 2)`` and weight each edge by ``A`` of its first ``m`` letters."""
    m = p.range
    bg = lift_blocks(g, max(m, 2))
    return WeightedBlockGraph(bg, {e: p(e[:m]) for e in bg.edges})


def graph_from_edges(edges: Mapping[tuple[int, int], Number]) -> WeightedBlockGraph:
    """Order-2 weighted graph from a ``{(i, j): weight}`` map (a range-2 potential)."""
    g = MarkovGraph(tuple({s for e in edges for s in e}), frozenset(edges))
    return weighted_graph(g, Potential(2, dict(edges)))


@dataclass(frozen=True)
class SubAction:
    u: Mapping[Word, Number]
    beta: Number

    @property
    def osc(self) -> Number:
        return max(self.u.values()) - min(self.u.values())

    def shifted(self, c: Number) -> "SubAction":
        return SubAction({v: x + c for v, x in self.u.items()}, self.beta)

    def to_json(self) -> dict:
        return {"beta": fmt(self.beta), "u": {word_key(v): fmt(x) for v, x in sorted(self.u.items())}}


@dataclass(frozen=True)
class CriticalStructure:
    beta: Number
    tight_edges: tuple[Word, ...]
    critical_edges: tuple[Word, ...]
    critical_classes: tuple[tuple[Word, ...], ...]

    def to_json(self) -> dict:
        return {
            "beta": fmt(self.beta),
            "tight_edges": [list(e) for e in self.tight_edges],
            "critical_edges": [list(e) for e in self.critical_edges],
            "critical_classes": [[word_key(v) for v in c] for c in self.critical_classes],
        }


@dataclass(frozen=True)
class CertificateReport:
    beta: Number
    max_defect: Number
    defects_nonpositive: bool
    tight_cycle: bool
    osc: Number

    @property
    def verdict(self) -> str:
        return "VALID" if self.defects_nonpositive and self.tight_cycle else "INVALID"

    def to_json(self) -> dict:
        return {
            "beta": fmt(self.beta),
            "max_defect": fmt(self.max_defect),
            "defects_nonpositive": self.defects_nonpositive,
            "tight_cycle": self.tight_cycle,
            "osc": fmt(self.osc),
            "verdict": self.verdict,
        }


def word_key(word: Word) -> str:
    return ",".join(str(s) for s in word)


def parse_word_key(key: str) -> Word:
    return tuple(int(s) for s in key.split(","))


def strongly_connected_components(vertices: Iterable, succ) -> list[list]:
    """Tarjan's algorithm, iterative.  ``succ(v)`` yields successors of ``v``."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list] = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def _vertex_succ(g: WeightedBlockGraph):
    return lambda v: [e[1:] for e in g.graph.out_edges(v)]


def cyclic_components(g: WeightedBlockGraph) -> list[list[Word]]:
    """Strongly connected components that carry at least one cycle."""
    comps = strongly_connected_components(g.vertices, _vertex_succ(g))
    return [c for c in comps if len(c) > 1 or any(e[1:] == c[0] for e in g.graph.out_edges(c[0]))]


def largest_component(g: WeightedBlockGraph) -> WeightedBlockGraph:
    """Restriction to the largest cyclic component (ties: smallest first vertex)."""
    comps = cyclic_components(g)
    if not comps:
        raise NoCycle("graph has no cycle")
    return g.restrict(min(comps, key=lambda c: (-len(c), c[0])))


def _karp(g: WeightedBlockGraph, comp: list[Word]) -> Number:
    members = set(comp)
    n = len(comp)
    s = comp[0]
    rows = [{s: g.zero()}]
    for _ in range(n):
        prev, cur = rows[-1], {}
        for v, d in prev.items():
            for e in g.graph.out_edges(v):
                t = e[1:]
                if t in members:
                    val = d + g.weight[e]
                    if t not in cur or val > cur[t]:
                        cur[t] = val
        rows.append(cur)
    best = None
    for v, dn in rows[n].items():
        worst = None
        for k in range(n):
            if v in rows[k]:
                r = div(dn - rows[k][v], n - k)
                if worst is None or r < worst:
                    worst = r
        if best is None or worst > best:
            best = worst
    return best


def max_cycle_mean(g: WeightedBlockGraph) -> Number:
    """Largest mean weight of a directed cycle (Karp's recurrence per component)."""
    comps = cyclic_components(g)
    if not comps:
        raise NoCycle("graph has no cycle")
    return max(_karp(g, c) for c in comps)


def defects(g: WeightedBlockGraph, u: SubAction) -> dict[Word, Number]:
    return {e: g.weight[e] + u.u[e[:-1]] - u.u[e[1:]] - u.beta for e in g.edges}


def calibrated_subaction(g: WeightedBlockGraph, max_iter: int | None = None) -> SubAction:
    """Max-plus eigenvector by Howard policy iteration on in-edges.

    Each vertex selects one incoming edge; the policy's cycles fix the cycle means
    and values, then the policy improves first on cycle means and then on values.
    Ties go to the lexicographically smallest source word.  The result is
    normalized so that its maximum is 0.
    """
    comps = strongly_connected_components(g.vertices, _vertex_succ(g))
    if len(comps) != 1 or not g.edges:
        raise NotStronglyConnected(f"graph has {len(comps)} strongly connected components")
    tol = g.tol
    V = list(g.vertices)
    inc = {x: g.graph.in_edges(x) for x in V}
    w = g.weight

    policy = {}
    for x in V:
        best = max(w[e] for e in inc[x])
        policy[x] = next(e for e in inc[x] if w[e] >= best - tol)

    val = {x: g.zero() for x in V}
    eta: dict[Word, Number] = {}
    if max_iter is None:
        max_iter = 10 * len(V) * len(V) + 100
    for _ in range(max_iter):
        _evaluate_policy(policy, w, val, eta)
        changed = False
        for x in V:
            top = max(eta[e[:-1]] for e in inc[x])
            if eta[policy[x][:-1]] < top - tol:
                policy[x] = next(e for e in inc[x] if eta[e[:-1]] >= top - tol)
                changed = True
        if changed:
            continue
        for x in V:
            cands = [e for e in inc[x] if eta[e[:-1]] >= eta[policy[x][:-1]] - tol]
            top = max(w[e] + val[e[:-1]] for e in cands)
            cur = policy[x]
            if w[cur] + val[cur[:-1]] < top - tol:
                policy[x] = next(e for e in cands if w[e] + val[e[:-1]] >= top - tol)
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("policy iteration did not terminate")

    beta = eta[V[0]]
    if any(abs(eta[x] - beta) > tol for x in V):
        raise RuntimeError("policy iteration ended with unequal cycle means on a connected graph")
    top = max(val.values())
    sub = SubAction({x: val[x] - top for x in V}, beta)
    d = defects(g, sub)
    if any(v > tol for v in d.values()) or any(
        all(d[e] < -tol for e in inc[x]) for x in V
    ):
        raise RuntimeError("policy iteration produced a non-calibrated sub-action")
    return sub


def _evaluate_policy(policy, w, val, eta) -> None:
    """Value determination: cycle means and values along each policy tree."""
    pred = {x: e[:-1] for x, e in policy.items()}
    state: dict[Word, int] = {}  # 1 = on current path, 2 = done
    for start in sorted(policy):
        if start in state:
            continue
        path = []
        x = start
        while x not in state:
            state[x] = 1
            path.append(x)
            x = pred[x]
        if state[x] == 1:
            # new cycle: path[i:] where path[i] == x
            cyc = path[path.index(x):]
            mean = div(sum((w[policy[c]] for c in cyc), 0 * w[policy[cyc[0]]]), len(cyc))
            root = min(cyc)
            eta[root] = mean
            # val[root] keeps its previous value
            order = []
            y = pred[root]
            while y != root:
                order.append(y)
                y = pred[y]
            for y in reversed(order):
                p = pred[y]
                eta[y] = mean
                val[y] = w[policy[y]] + val[p] - mean
            for y in cyc:
                state[y] = 2
        for y in reversed(path):
            if state[y] == 2:
                continue
            p = pred[y]
            eta[y] = eta[p]
            val[y] = w[policy[y]] + val[p] - eta[y]
            state[y] = 2


def minimal_subaction(g: WeightedBlockGraph, beta: Number) -> SubAction:
    """Supremum of normalized Birkhoff sums over backward walks, by Bellman relaxation.

    Runs exactly ``|V|`` rounds from 0, then one more round that must change nothing.
    """
    tol = g.tol
    u = {v: g.zero() for v in g.vertices}

    def relax(cur):
        new = {}
        for x in g.vertices:
            best = g.zero()
            for e in g.graph.in_edges(x):
                cand = cur[e[:-1]] + g.weight[e] - beta
                if cand > best:
                    best = cand
            new[x] = best
        return new

    for _ in range(len(g.vertices)):
        u = relax(u)
    check = relax(u)
    if any(check[v] > u[v] + tol for v in g.vertices):
        raise PositiveCycle(f"beta={fmt(beta)} is below the maximum cycle mean")
    return SubAction(u, beta)


def finite_horizon_bound(g: WeightedBlockGraph, k: int) -> Number:
    """``(1/k) max S_k A``: best weight of a walk with exactly ``k`` edges, divided by ``k``."""
    if k < 1:
        raise ValueError("horizon must be at least 1")
    best = {v: g.zero() for v in g.vertices}
    for _ in range(k):
        nxt = {}
        for v in g.vertices:
            cands = [g.weight[e] + best[e[1:]] for e in g.graph.out_edges(v) if e[1:] in best]
            if cands:
                nxt[v] = max(cands)
        best = nxt
    if not best:
        raise NoCycle("no walk of the requested length")
    return div(max(best.values()), k)


def _tight_cycles(g: WeightedBlockGraph, d: Mapping[Word, Number]):
    tol = g.tol
    tight = sorted(e for e, v in d.items() if abs(v) <= tol)
    tsucc: dict[Word, list[Word]] = {v: [] for v in g.vertices}
    for e in tight:
        tsucc[e[:-1]].append(e[1:])
    comps = strongly_connected_components(g.vertices, lambda v: tsucc[v])
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    critical = [e for e in tight if comp_of[e[:-1]] == comp_of[e[1:]]]
    live = {comp_of[e[:-1]] for e in critical}
    classes = sorted(tuple(comps[i]) for i in live)
    return tuple(tight), tuple(critical), tuple(classes)


def critical_structure(g: WeightedBlockGraph, u: SubAction) -> CriticalStructure:
    """Tight edges, the critical edges on tight cycles, and the critical classes."""
    d = defects(g, u)
    bad = {e: v for e, v in d.items() if v > g.tol}
    if bad:
        e = min(bad)
        raise InvalidSubAction(f"edge {e} has positive defect {fmt(bad[e])}")
    return CriticalStructure(u.beta, *_tight_cycles(g, d))


def check_certificate(g: WeightedBlockGraph, u: SubAction) -> CertificateReport:
    """Audit a candidate sub-action: nonpositive defects plus a tight cycle pin ``beta``."""
    d = defects(g, u)
    max_defect = max(d.values())
    _, critical, _ = _tight_cycles(g, d)
    return CertificateReport(u.beta, max_defect, max_defect <= g.tol, bool(critical), u.osc)


def subaction_variation(u: SubAction, k: int) -> Number:
    """``Var_k(u)`` for ``u`` on block vertices: spread over words sharing ``k`` letters."""
    if k >= len(next(iter(u.u))):
        return 0 * next(iter(u.u.values()))
    hi: dict = {}
    lo: dict = {}
    for v, x in u.u.items():
        key = v[:k]
        hi[key] = max(hi.get(key, x), x)
        lo[key] = min(lo.get(key, x), x)
    return max(hi[c] - lo[c] for c in hi)
