"""Finite-range potentials and the scalar constants built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ._numeric import Number, fmt, tolerance
from .errors import DisallowedWord, IncompletePotential, InvalidModel
from .shift import MarkovGraph, PrimitivityCertificate, allowed_words, trim_essential

Word = tuple


@dataclass(frozen=True)
class Potential:
    """A locally constant potential: ``A(x)`` is ``weights[x_0 ... x_{m-1}]``."""

    range: int
    weights: Mapping[Word, Number]

    def __post_init__(self):
        if self.range < 1:
            raise ValueError("potential range must be at least 1")
        table = {}
        for word, value in self.weights.items():
            word = tuple(int(s) for s in word)
            if len(word) != self.range:
                raise ValueError(f"word {word} has length {len(word)}, expected {self.range}")
            table[word] = value
        object.__setattr__(self, "weights", dict(sorted(table.items())))

    @classmethod
    def from_function(cls, graph: MarkovGraph, m: int, fn: Callable[[Word], Number]) -> "Potential":
        return cls(m, {w: fn(w) for w in allowed_words(graph, m)})

    def __call__(self, word: Word) -> Number:
        try:
            return self.weights[tuple(word)]
        except KeyError:
            raise DisallowedWord(f"no weight for word {tuple(word)}") from None

    def on(self, graph: MarkovGraph) -> "Potential":
        """Restrict to the essential words of ``graph``; every such word needs a weight."""
        words = allowed_words(trim_essential(graph), self.range)
        missing = [w for w in words if w not in self.weights]
        if missing:
            raise IncompletePotential(f"missing weights for words {missing[:5]}")
        return Potential(self.range, {w: self.weights[w] for w in words})

    def check_allowed(self, graph: MarkovGraph) -> None:
        for w in self.weights:
            if w[0] not in graph.vertices or any(
                (a, b) not in graph.edges for a, b in zip(w, w[1:])
            ):
                raise DisallowedWord(f"weighted word {w} is not allowed by the transitions")

    @property
    def tol(self) -> float:
        return tolerance(self.weights.values())


@dataclass(frozen=True)
class VariationSummary:
    var_k: tuple[Number, ...]
    var_total: Number
    sup_A: Number
    inf_A_on_F: Number
    var_0: Number

    def tail_sum(self, k: int) -> Number:
        """``sum_{j >= k} Var_j(A)``."""
        return sum(self.var_k[k - 1:], 0 * self.var_total)

    def head_sum(self, k: int) -> Number:
        """``sum_{j <= k} Var_j(A)``."""
        return sum(self.var_k[:k], 0 * self.var_total)

    def primitive_bound(self, K0: int) -> Number:
        """``Var(A) + K0 (sup A - inf A|F)``; bounds osc of calibrated sub-actions."""
        return self.var_total + K0 * (self.sup_A - self.inf_A_on_F)

    def to_json(self) -> dict:
        return {
            "var_k": [fmt(v) for v in self.var_k],
            "var_total": fmt(self.var_total),
            "var_0": fmt(self.var_0),
            "sup_A": fmt(self.sup_A),
            "inf_A_on_F": fmt(self.inf_A_on_F),
        }


@dataclass(frozen=True)
class HoelderModel:
    H: Number
    lam: Number

    def __post_init__(self):
        if not 0 < self.lam < 1:
            raise ValueError("lambda must lie in (0, 1)")
        if self.H < 0:
            raise ValueError("Hoelder constant must be nonnegative")

    def bound(self, k: int) -> Number:
        return self.H * self.lam ** k


def birkhoff_sum(p: Potential, itinerary: Iterable[int]) -> Number:
    """``S_k A`` along an itinerary of length ``k + m - 1``."""
    itinerary = tuple(itinerary)
    k = len(itinerary) - p.range + 1
    if k < 0:
        raise ValueError(f"itinerary shorter than the range minus one ({p.range - 1})")
    total = 0.0 if p.tol else Fraction(0)
    for j in range(k):
        total += p(itinerary[j:j + p.range])
    return total


def variation(p: Potential, k: int) -> Number:
    """``Var_k(A)``: largest ``A(a) - A(b)`` over words agreeing on ``k`` letters."""
    if k < 1:
        raise ValueError("variation order must be at least 1")
    zero = 0.0 if p.tol else Fraction(0)
    if k >= p.range:
        return zero
    hi: dict[Word, Number] = {}
    lo: dict[Word, Number] = {}
    for w, v in p.weights.items():
        key = w[:k]
        hi[key] = max(hi.get(key, v), v)
        lo[key] = min(lo.get(key, v), v)
    return max((hi[c] - lo[c] for c in hi), default=zero)


def summarize(p: Potential, cert: PrimitivityCertificate) -> VariationSummary:
    var_k = tuple(variation(p, k) for k in range(1, p.range))
    values = list(p.weights.values())
    on_F = [v for w, v in p.weights.items() if w[0] in cert.F]
    if not on_F:
        raise IncompletePotential("no weighted word starts with a symbol of F")
    zero = 0.0 if p.tol else Fraction(0)
    return VariationSummary(
        var_k=var_k,
        var_total=sum(var_k, zero),
        sup_A=max(values),
        inf_A_on_F=min(on_F),
        var_0=max(values) - min(values),
    )


def hoelder_var_bound(h: HoelderModel) -> Number:
    """Geometric-series bound ``H lam / (1 - lam)`` on ``Var(A)``."""
    return h.H * h.lam / (1 - h.lam)


def symbol_sups(p: Potential) -> dict[int, Number]:
    """``sup A|[i]`` for each symbol that starts a weighted word."""
    out: dict[int, Number] = {}
    for w, v in p.weights.items():
        out[w[0]] = max(out.get(w[0], v), v)
    return out


@dataclass(frozen=True)
class TailBound:
    """A nonincreasing majorant ``tau(i) >= sup A|[i]``.

    ``entries`` pin ``tau`` at listed symbols; past the last entry (or everywhere,
    when there are none) ``tau`` continues affinely with ``slope``.  Symbols below
    the first entry have no bound (``None``).
    """

    slope: Number
    offset: Number = 0
    entries: Mapping[int, Number] = field(default_factory=dict)

    @classmethod
    def affine(cls, slope: Number, offset: Number) -> "TailBound":
        return cls(slope=slope, offset=offset)

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(sorted((int(i), v) for i, v in self.entries.items())))
        if self.entries:
            keys = list(self.entries)
            if keys != list(range(keys[0], keys[-1] + 1)):
                raise ValueError("tail table entries must cover a contiguous range of symbols")

    def __call__(self, i: int) -> Number | None:
        if not self.entries:
            return self.offset + self.slope * i
        first, last = next(iter(self.entries)), self.last_breakpoint
        if i < first:
            return None
        if i <= last:
            return self.entries[i]
        return self.entries[last] + self.slope * (i - last)

    @property
    def last_breakpoint(self) -> int:
        return max(self.entries) if self.entries else 0

    @property
    def decays(self) -> bool:
        return self.slope < 0

    def first_below(self, c: Number, start: int) -> int | None:
        """Smallest ``j >= start`` with ``tau(j) < c``; ``None`` if there is none.

        Relies on ``tau`` being nonincreasing, so the condition persists past ``j``.
        """
        if self.entries:
            j = max(start, next(iter(self.entries)))
            while j <= self.last_breakpoint:
                if self.entries[j] < c:
                    return j
                j += 1
            base, anchor = self.entries[self.last_breakpoint], self.last_breakpoint
        else:
            j, base, anchor = start, self.offset, 0
        if base + self.slope * (j - anchor) < c:
            return j
        if self.slope >= 0:
            return None
        # base + slope * (x - anchor) < c  <=>  x > anchor + (base - c) / (-slope)
        edge = anchor + (base - c) / (-self.slope)
        return max(j, math.floor(edge) + 1)

    def is_nonincreasing(self) -> bool:
        if self.slope > 0:
            return False
        vals = list(self.entries.values())
        return all(b <= a for a, b in zip(vals, vals[1:]))

    def to_json(self) -> dict:
        if not self.entries:
            return {"type": "affine", "slope": fmt(self.slope), "offset": fmt(self.offset)}
        return {
            "type": "table",
            "entries": [[i, fmt(v)] for i, v in self.entries.items()],
            "slope": fmt(self.slope),
        }


@dataclass(frozen=True)
class CountableModel:
    """Explicit region ``{0, ..., i_max}`` of a countable shift plus declared global bounds.

    ``tail is None`` marks a finite-alphabet model.
    """

    graph: MarkovGraph
    potential: Potential
    i_max: int
    tail: TailBound | None = None
    sup_A: Number | None = None
    var_total: Number | None = None
    inf_A_on_F: Number | None = None
    hoelder: HoelderModel | None = None

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    @property
    def essential(self) -> MarkovGraph:
        return trim_essential(self.graph)

    def explicit_potential(self) -> Potential:
        return self.potential.on(self.essential)

    def declared(self, summary: VariationSummary) -> tuple[Number, Number, Number]:
        """``(Var(A), sup A, inf A|F)`` valid for the whole system.

        Declared values win; the explicit summary fills in whatever is undeclared.
        """
        var_total = summary.var_total if self.var_total is None else self.var_total
        sup_A = summary.sup_A if self.sup_A is None else self.sup_A
        inf_F = summary.inf_A_on_F if self.inf_A_on_F is None else self.inf_A_on_F
        if inf_F > summary.inf_A_on_F:
            raise InvalidModel(
                f"declared inf_A_on_F={fmt(inf_F)} exceeds the explicit value {fmt(summary.inf_A_on_F)}"
            )
        return var_total, sup_A, inf_F


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...]
    explicit_sup_A: Number | None = None
    explicit_var_total: Number | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_countable(model: CountableModel, require_decay: bool = True) -> ValidationReport:
    """Check the declared tail and global bounds against the explicit region.

    ``require_decay=False`` drops the coercivity requirement, for models whose
    truncation level is supplied directly rather than derived from the tail.
    """
    failures: list[str] = []
    if model.i_max < max(model.graph.vertices, default=-1):
        failures.append(f"graph has symbols above i_max={model.i_max}")
    try:
        model.potential.check_allowed(model.graph)
        p = model.explicit_potential()
    except (DisallowedWord, IncompletePotential) as exc:
        return ValidationReport(False, (str(exc),))
    if not p.weights:
        return ValidationReport(False, ("explicit region has no essential words",))
    tol = p.tol
    var_k = [variation(p, k) for k in range(1, p.range)]
    var_total = sum(var_k, 0 * next(iter(p.weights.values())))
    sup_A = max(p.weights.values())
    sups = symbol_sups(p)

    if model.sup_A is not None and model.sup_A < sup_A - tol:
        failures.append(f"declared sup_A={fmt(model.sup_A)} is below the explicit sup {fmt(sup_A)}")
    if model.var_total is not None and model.var_total < var_total - tol:
        failures.append(
            f"declared var_total={fmt(model.var_total)} is below the explicit variation {fmt(var_total)}"
        )
    if model.hoelder is not None:
        for k, v in enumerate(var_k, start=1):
            if model.hoelder.bound(k) < v - tol:
                failures.append(f"Hoelder bound H*lambda^{k} under Var_{k}(A)={fmt(v)}")
    tail = model.tail
    if tail is not None:
        if not tail.is_nonincreasing():
            failures.append("tail bound is not nonincreasing")
        if require_decay and not tail.decays:
            failures.append("tail bound does not decay to -infinity (slope must be negative)")
        for i, s in sorted(sups.items()):
            t = tail(i)
            if t is not None and t < s - tol:
                failures.append(f"tail bound tau({i})={fmt(t)} is below sup A|[{i}]={fmt(s)}")
        if model.sup_A is None:
            failures.append("countable models must declare sup_A")
        if model.var_total is None:
            failures.append("countable models must declare var_total")
    return ValidationReport(not failures, tuple(failures), sup_A, var_total)
