"""Coercive truncation: the level ``I_hat`` past which the maximizing value plateaus.

Beyond ``I_hat`` the potential sits so far below ``inf A|F`` that the oscillation
bound on calibrated sub-actions forbids any maximizing measure from visiting
those symbols.  Everything here is checked on finite truncations of the model's
explicit region; the declared tail bound covers the symbols beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ._numeric import FLOAT_TOL, Number, fmt
from .errors import (
    ExplicitRegionTooSmall,
    NoCoerciveTail,
    NoThreshold,
    PlateauViolation,
)
from .maxplus import (
    CriticalStructure,
    SubAction,
    WeightedBlockGraph,
    calibrated_subaction,
    critical_structure,
    defects,
    max_cycle_mean,
    weighted_graph,
)
from .potential import CountableModel, VariationSummary, summarize, symbol_sups
from .shift import PrimitivityCertificate, truncate


@dataclass(frozen=True)
class TruncationReport:
    I_F: int
    I_hat: int
    margin: Number | None
    beta_by_I: Mapping[int, Number]
    plateau_ok: bool
    omega: CriticalStructure
    localized: bool = True

    @property
    def beta(self) -> Number:
        return self.beta_by_I[self.I_hat]

    def to_json(self) -> dict:
        return {
            "I_F": self.I_F,
            "I_hat": self.I_hat,
            "margin": None if self.margin is None else fmt(self.margin),
            "beta_by_I": {str(i): fmt(b) for i, b in sorted(self.beta_by_I.items())},
            "plateau_ok": self.plateau_ok,
            "localized": self.localized,
            "omega": self.omega.to_json(),
        }


def level_graph(model: CountableModel, I: int) -> WeightedBlockGraph:
    """The weighted block graph of the truncation to symbols ``{0, ..., I}``."""
    g = truncate(model, I)
    return weighted_graph(g, model.potential.on(g))


def explicit_summary(model: CountableModel, cert: PrimitivityCertificate) -> VariationSummary:
    return summarize(model.explicit_potential(), cert)


def i_hat_threshold(model: CountableModel, summary: VariationSummary, cert: PrimitivityCertificate) -> Number:
    """Right-hand side ``inf A|F - [Var(A) + K0 (sup A - inf A|F)]``."""
    var_total, sup_A, inf_F = model.declared(summary)
    return inf_F - (var_total + cert.K0 * (sup_A - inf_F))


def _margin(summary: VariationSummary, margin: Number | None) -> Number:
    if margin is not None:
        return margin
    return FLOAT_TOL if isinstance(summary.sup_A, float) else 0


def compute_I_hat(
    model: CountableModel,
    summary: VariationSummary,
    cert: PrimitivityCertificate,
    margin: Number | None = None,
) -> int:
    """Smallest ``I_hat > I_F`` with ``tau(I_hat + 1)`` strictly below the threshold.

    ``tau`` is nonincreasing, so its value at ``I_hat + 1`` bounds ``sup A`` on
    every cylinder past ``I_hat``.  In float mode the inequality must hold with
    ``margin`` to spare.
    """
    if model.tail is None:
        raise NoCoerciveTail("finite model has no tail bound")
    rhs = i_hat_threshold(model, summary, cert) - _margin(summary, margin)
    j = model.tail.first_below(rhs, cert.I_F + 2)
    if j is None:
        raise NoCoerciveTail(f"tail bound never drops below {fmt(rhs)}")
    I_hat = j - 1
    if I_hat + model.potential.range - 1 > model.i_max:
        raise ExplicitRegionTooSmall(
            f"I_hat={I_hat} needs symbols up to {I_hat + model.potential.range - 1}, "
            f"explicit region ends at {model.i_max}"
        )
    return I_hat


def tail_sup_bound(model: CountableModel, I: int) -> Number | None:
    """Bound on ``sup A`` over cylinders ``[i]``, ``i > I``: exact on the explicit region, tail beyond.

    ``None`` when no symbol past ``I`` exists.
    """
    sups = symbol_sups(model.explicit_potential())
    vals = [s for i, s in sups.items() if i > I]
    if model.tail is not None:
        t = model.tail(max(I, model.i_max) + 1)
        if t is None:
            raise NoCoerciveTail(f"tail bound undefined at {max(I, model.i_max) + 1}")
        vals.append(t)
    return max(vals) if vals else None


def check_I_hat(
    model: CountableModel, summary: VariationSummary, cert: PrimitivityCertificate, I_hat: int
) -> Number | None:
    """Slack in the defining inequality for a directly supplied ``I_hat``.

    Positive slack certifies it; ``None`` means nothing lies past ``I_hat``.
    """
    lhs = tail_sup_bound(model, I_hat)
    if lhs is None:
        return None
    return i_hat_threshold(model, summary, cert) - lhs


def plateau_scan(
    model: CountableModel,
    cert: PrimitivityCertificate,
    I_hat: int | None,
    window: int = 3,
    raise_on_violation: bool = True,
    summary: VariationSummary | None = None,
) -> TruncationReport:
    """Maximizing values ``beta_A(I)`` for ``I_F <= I <= I_hat + window``.

    Asserts they are nondecreasing, constant from ``I_hat`` on, and that every
    critical class at the top level only uses symbols up to ``I_hat``.
    """
    if summary is None:
        summary = explicit_summary(model, cert)
    if model.is_finite and I_hat is None:
        top = max(model.essential.vertices)
        wg = level_graph(model, top)
        beta = max_cycle_mean(wg)
        omega = critical_structure(wg, calibrated_subaction(wg))
        return TruncationReport(cert.I_F, top, None, {top: beta}, True, omega)
    if I_hat is None:
        raise ValueError("countable models need a truncation level")
    if I_hat + window + model.potential.range - 1 > model.i_max:
        raise ExplicitRegionTooSmall(
            f"scan up to {I_hat + window} needs the explicit region to reach "
            f"{I_hat + window + model.potential.range - 1}, it ends at {model.i_max}"
        )
    betas = {I: max_cycle_mean(level_graph(model, I)) for I in range(cert.I_F, I_hat + window + 1)}
    tol = FLOAT_TOL if isinstance(summary.sup_A, float) else 0
    problems = []
    levels = sorted(betas)
    for a, b in zip(levels, levels[1:]):
        if betas[b] < betas[a] - tol:
            problems.append(f"beta({b})={fmt(betas[b])} < beta({a})={fmt(betas[a])}")
    for I in range(I_hat, I_hat + window + 1):
        if abs(betas[I] - betas[I_hat]) > tol:
            problems.append(f"beta({I})={fmt(betas[I])} differs from beta({I_hat})={fmt(betas[I_hat])}")
    top_graph = level_graph(model, I_hat + window)
    top_cs = critical_structure(top_graph, calibrated_subaction(top_graph))
    stray = sorted({s for c in top_cs.critical_classes for v in c for s in v if s > I_hat})
    localized = not stray
    if stray:
        problems.append(f"critical classes at level {I_hat + window} visit symbols {stray} > I_hat")
    if problems and raise_on_violation:
        raise PlateauViolation("; ".join(problems))
    base = level_graph(model, I_hat)
    omega = critical_structure(base, calibrated_subaction(base))
    margin = check_I_hat(model, summary, cert, I_hat)
    return TruncationReport(cert.I_F, I_hat, margin, betas, not problems, omega, localized)


def support_bound_check(
    model: CountableModel,
    u: SubAction,
    eta: Number,
    graph: WeightedBlockGraph | None = None,
) -> int:
    """Smallest ``I`` such that every cylinder ``[i]``, ``i > I``, has defect below ``-eta``.

    On the explicit region defects are exact; past it ``tau(i) + osc(u) - beta``
    bounds them.  ``u`` must be a sub-action on the explicit region's graph.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    if model.tail is None:
        raise NoThreshold("finite model: no coercive tail to push mass below a threshold")
    if graph is None:
        graph = level_graph(model, model.i_max)
    d = defects(graph, u)
    offenders = [e[0] for e, v in d.items() if not v < -eta]
    I = max(offenders, default=0)
    # tau(j) + osc - beta < -eta  <=>  tau(j) < -eta - osc + beta
    j0 = model.tail.first_below(-eta - u.osc + u.beta, model.i_max + 1)
    if j0 is None:
        raise NoThreshold(f"tail bound never pushes defects below -{fmt(eta)}")
    return max(I, j0 - 1) if j0 > model.i_max + 1 else I
