"""End-to-end analysis of a configured model and the audited report it produces."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._numeric import Number, fmt, parse_number
from .config import AnalysisConfig, canonical_json
from .errors import ConfigError, InvalidModel, NotFinitelyPrimitive
from .maxplus import (
    SubAction,
    WeightedBlockGraph,
    calibrated_subaction,
    check_certificate,
    critical_structure,
    defects,
    finite_horizon_bound,
    max_cycle_mean,
    minimal_subaction,
    parse_word_key,
    subaction_variation,
)
from .measures import cycle_measure, integrate, maximizing_set, symbol_cycle
from .potential import summarize, validate_countable
from .shift import PrimitivityCertificate, compute_primitivity, truncate
from .truncation import (
    check_I_hat,
    compute_I_hat,
    explicit_summary,
    level_graph,
    plateau_scan,
    support_bound_check,
)


@dataclass
class Checks:
    tol: float
    rows: list = field(default_factory=list)

    def le(self, name: str, lhs: Number, rhs: Number) -> None:
        self.rows.append({"name": name, "lhs": fmt(lhs), "rel": "<=", "rhs": fmt(rhs),
                          "ok": bool(lhs <= rhs + self.tol)})

    def lt(self, name: str, lhs: Number, rhs: Number) -> None:
        self.rows.append({"name": name, "lhs": fmt(lhs), "rel": "<", "rhs": fmt(rhs),
                          "ok": bool(lhs < rhs)})

    def eq(self, name: str, lhs: Number, rhs: Number) -> None:
        self.rows.append({"name": name, "lhs": fmt(lhs), "rel": "==", "rhs": fmt(rhs),
                          "ok": bool(abs(lhs - rhs) <= self.tol)})

    def holds(self, name: str, ok: bool, detail: str = "") -> None:
        self.rows.append({"name": name, "lhs": detail, "rel": "holds", "rhs": "", "ok": bool(ok)})

    @property
    def failed(self) -> list[dict]:
        return [r for r in self.rows if not r["ok"]]


def certify_primitivity(cfg: AnalysisConfig) -> PrimitivityCertificate:
    """Verify the configured connecting set, or the smallest prefix of essential symbols that works."""
    ess = cfg.model.essential
    if not ess.vertices:
        raise InvalidModel("explicit region has no essential symbols")
    if cfg.F is not None:
        return compute_primitivity(ess, cfg.F, cfg.k0_cap)
    for c in ess.vertices:
        try:
            return compute_primitivity(ess, [s for s in ess.vertices if s <= c], cfg.k0_cap)
        except NotFinitelyPrimitive:
            continue
    raise NotFinitelyPrimitive(f"no prefix of the essential symbols connects within K0 <= {cfg.k0_cap}")


def analyze(cfg: AnalysisConfig) -> dict:
    """Run the whole pipeline; the returned report carries every check and a verdict."""
    model = cfg.model
    report = validate_countable(model, require_decay=cfg.I_hat is None)
    if not report.ok:
        raise InvalidModel(report.failures[0])
    cert = certify_primitivity(cfg)
    summary = explicit_summary(model, cert)
    checks = Checks(tol=0 if cfg.exact else 1e-9)

    if model.is_finite:
        I_hat = cfg.I_hat
    elif cfg.I_hat is not None:
        I_hat = cfg.I_hat
        if I_hat <= cert.I_F:
            raise InvalidModel(f"supplied I_hat={I_hat} must exceed I_F={cert.I_F}")
        slack = check_I_hat(model, summary, cert, I_hat)
        if slack is not None and not slack > 0:
            raise InvalidModel(f"supplied I_hat={I_hat} violates the truncation inequality (slack {fmt(slack)})")
    else:
        I_hat = compute_I_hat(model, summary, cert)

    trunc = plateau_scan(model, cert, I_hat, cfg.window, raise_on_violation=False, summary=summary)
    level = trunc.I_hat
    wg = level_graph(model, level)
    local = summarize(model.potential.on(truncate(model, level)), cert)

    beta = max_cycle_mean(wg)
    u = calibrated_subaction(wg)
    u_A = minimal_subaction(wg, beta)
    cs = critical_structure(wg, u)
    cert_report = check_certificate(wg, u)
    classes = maximizing_set(wg, cs)
    horizon = {k: finite_horizon_bound(wg, k) for k in range(1, cfg.horizon + 1)}

    K0 = cert.K0
    spread = local.sup_A - local.inf_A_on_F
    checks.holds("certificate_valid", cert_report.verdict == "VALID", cert_report.verdict)
    checks.eq("howard_beta_equals_karp_beta", u.beta, beta)
    d = defects(wg, u)
    calibrated = all(any(abs(d[e]) <= checks.tol for e in wg.graph.in_edges(v)) for v in wg.vertices)
    checks.holds("calibration", calibrated)
    checks.le("osc_calibrated_bound", u.osc, local.primitive_bound(K0))
    checks.le("u_A_nonnegative", -min(u_A.u.values()), 0 * beta)
    gap = max(u_A.u[v] - (u.u[v] - min(u.u.values())) for v in wg.vertices)
    checks.le("u_A_minimal_below_calibrated", gap, 0 * beta)
    checks.le("u_A_bounded", max(u_A.u.values()),
              max(local.primitive_bound(K0), K0 * (local.sup_A - beta)))
    for k in range(1, wg.graph.order):
        checks.le(f"u_A_variation_{k}", subaction_variation(u_A, k), local.tail_sum(k))
    if model.hoelder is not None:
        h = model.hoelder
        for k in range(1, wg.graph.order):
            checks.le(f"u_A_hoelder_{k}", subaction_variation(u_A, k), h.H / (1 - h.lam) * h.lam ** k)
    for k, val in horizon.items():
        checks.le(f"finite_horizon_{k}_above_beta", beta, val)
        if k > K0:
            checks.le(f"finite_horizon_{k}_convergence", val - beta, (local.head_sum(k) + K0 * spread) / k)
    for c in classes:
        checks.eq(f"maximizing_class_{c.vertices[0]!s}_integral", c.integral, beta)
    mu_F = cycle_measure(symbol_cycle(wg, cert.F))
    f_value = integrate(mu_F, wg)
    checks.le("mu_F_below_beta", f_value, beta)
    checks.le("inf_A_F_below_mu_F", local.inf_A_on_F, f_value)
    checks.le("beta_above_inf_A_F", local.inf_A_on_F, beta)

    threshold = None
    if not model.is_finite:
        checks.holds("plateau", trunc.plateau_ok)
        checks.holds("localization", trunc.localized)
        if trunc.margin is not None:
            checks.lt("I_hat_inequality_slack_positive", 0 * beta, trunc.margin)
        for I, b in trunc.beta_by_I.items():
            checks.le(f"beta_{I}_above_inf_A_F", local.inf_A_on_F, b)
        top = level_graph(model, model.i_max)
        u_top = calibrated_subaction(top)
        threshold = support_bound_check(model, u_top, cfg.eta, graph=top)
        checks.eq("beta_explicit_region_equals_beta_I_hat", u_top.beta, beta)

    return {
        "schema": 1,
        "name": cfg.name,
        "mode": cfg.mode,
        "config_hash": cfg.config_hash,
        "primitivity": {"F": list(cert.F), "K0": cert.K0, "I_F": cert.I_F},
        "variation": summary.to_json(),
        "level_variation": local.to_json(),
        "truncation": trunc.to_json(),
        "beta": fmt(beta),
        "calibrated_subaction": u.to_json(),
        "minimal_subaction": u_A.to_json(),
        "oscillation": {"osc": fmt(u.osc), "bound": fmt(local.primitive_bound(K0))},
        "critical": cs.to_json(),
        "maximizing_classes": [c.to_json() for c in classes],
        "certificate": cert_report.to_json(),
        "finite_horizon": {str(k): fmt(v) for k, v in horizon.items()},
        "support_threshold": None if threshold is None else {"eta": fmt(cfg.eta), "threshold": threshold},
        "checks": checks.rows,
        "verdict": "FALSIFIED" if checks.failed else "OK",
    }


def render(report: dict) -> str:
    return canonical_json(report, indent=2)


def read_subaction(obj: dict, exact: bool) -> tuple[SubAction, int | None]:
    """Parse ``{"beta": ..., "u": {word: value}}``, or pull the calibrated one out of a report."""
    level = None
    if "calibrated_subaction" in obj:
        level = obj.get("truncation", {}).get("I_hat")
        obj = obj["calibrated_subaction"]
    if not isinstance(obj, dict) or "beta" not in obj or "u" not in obj:
        raise ConfigError("sub-action file needs 'beta' and 'u'")
    level = obj.get("level", level)
    try:
        u = {parse_word_key(k): parse_number(v, exact) for k, v in obj["u"].items()}
        beta = parse_number(obj["beta"], exact)
    except (ValueError, ZeroDivisionError, AttributeError) as exc:
        raise ConfigError(f"sub-action: {exc}") from None
    return SubAction(u, beta), level


def subaction_graph(cfg: AnalysisConfig, u: SubAction, level: int | None) -> WeightedBlockGraph:
    if level is None:
        level = cfg.model.i_max
    wg = level_graph(cfg.model, level)
    if set(u.u) != set(wg.vertices):
        raise ConfigError(f"sub-action vertices do not match the level-{level} block graph")
    return wg


def audit(cfg: AnalysisConfig, report: dict) -> list[str]:
    """Recompute every numeric claim of a serialized report; returns the disagreements."""
    problems = []
    u, level = read_subaction(report, cfg.exact)
    wg = subaction_graph(cfg, u, level)
    cr = check_certificate(wg, u)
    if cr.verdict != "VALID":
        problems.append("calibrated sub-action no longer certifies beta")
    if fmt(max_cycle_mean(wg)) != report["beta"]:
        problems.append("beta differs")
    if fmt(u.osc) != report["oscillation"]["osc"]:
        problems.append("osc differs")
    u_A, _ = read_subaction(report["minimal_subaction"], cfg.exact)
    if minimal_subaction(wg, u.beta).u != u_A.u:
        problems.append("minimal sub-action differs")
    for k, v in report["finite_horizon"].items():
        if fmt(finite_horizon_bound(wg, int(k))) != v:
            problems.append(f"finite horizon {k} differs")
    cs = critical_structure(wg, u)
    if cs.to_json() != report["critical"]:
        problems.append("critical structure differs")
    if render(analyze(cfg)) != render(report):
        problems.append("report does not reproduce")
    return problems
