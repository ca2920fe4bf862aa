"""Acceptance criteria 1-8, each printed as one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from weakkam.config import load_config
from weakkam.errors import NotFinitelyPrimitive
from weakkam.maxplus import (
    calibrated_subaction,
    critical_structure,
    defects,
    finite_horizon_bound,
    graph_from_edges,
    largest_component,
    max_cycle_mean,
    minimal_subaction,
    subaction_variation,
    weighted_graph,
)
from weakkam.measures import PeriodicOrbit, cycle_measure, integrate, verify_maximizing
from weakkam.oracle import (
    brute_beta,
    brute_finite_horizon,
    brute_minimal_subaction,
    random_full_shift,
    random_instance,
    simple_cycles,
)
from weakkam.pipeline import analyze, audit, render
from weakkam.potential import Potential, TailBound, summarize
from weakkam.shift import MarkovGraph, compute_primitivity
from weakkam.truncation import (
    compute_I_hat,
    explicit_summary,
    level_graph,
    plateau_scan,
    support_bound_check,
)

from conftest import E2_WEIGHTS, GOLDEN, coercive_model, e1_potential, e2_graph, e2_potential, e3_model

SEEDS = range(1, 201)


def report(n: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)


def instances():
    return [random_instance(s, 7, (-9, 9)) for s in SEEDS]


def fixed_graphs():
    return {
        "E1": weighted_graph(MarkovGraph.full((0, 1)), e1_potential()),
        "E2": graph_from_edges({e: Fraction(w) for e, w in E2_WEIGHTS.items()}),
        "E4": graph_from_edges({(0, 1): Fraction(10), (1, 0): Fraction(0)}),
    }


def primitive_instances():
    """(name, weighted graph, certificate, summary) with a verified (F, K0)."""
    out = []
    for size in range(2, 7):
        for seed in range(1, 6):
            g, p = random_full_shift(seed, size)
            cert = compute_primitivity(g, [0])
            out.append((f"full{size}/s{seed}", weighted_graph(g, p), cert, summarize(p, cert)))
    g, p = e2_graph(), e2_potential()
    cert = compute_primitivity(g, [0, 1, 2], 5)
    out.append(("E2", weighted_graph(g, p), cert, summarize(p, cert)))
    # random instances whose largest component is primitive, connected through all its symbols
    for s in SEEDS:
        core = largest_component(random_instance(s))
        symbols = sorted({v[0] for v in core.vertices})
        mg = MarkovGraph(tuple(symbols), frozenset(core.edges))
        try:
            cert = compute_primitivity(mg, symbols)
        except NotFinitelyPrimitive:
            continue
        p = Potential(2, dict(core.weight))
        out.append((f"seed{s}", core, cert, summarize(p, cert)))
    return out


def criterion_1():
    start = time.perf_counter()
    bad = []
    for s, g in zip(SEEDS, instances()):
        beta = max_cycle_mean(g)
        if beta != brute_beta(g):
            bad.append((s, "beta"))
        if minimal_subaction(g, beta).u != brute_minimal_subaction(g, beta, 2 * len(g.vertices)):
            bad.append((s, "u_A"))
        for k in range(1, 7):
            if finite_horizon_bound(g, k) != brute_finite_horizon(g, k):
                bad.append((s, f"fh{k}"))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 30, f"200 instances, mismatches={bad[:5]}, {elapsed:.2f}s (< 30s)"


def criterion_2():
    graphs = [largest_component(g) for g in instances()] + list(fixed_graphs().values())
    bad = 0
    for g in graphs:
        d = defects(g, calibrated_subaction(g))
        if any(x > 0 for x in d.values()) or any(
            all(d[e] != 0 for e in g.graph.in_edges(v)) for v in g.vertices
        ):
            bad += 1
    return bad == 0, f"{len(graphs)} graphs, non-calibrated={bad}"


def criterion_3():
    bad, e2_detail = [], ""
    cases = primitive_instances()
    for name, g, cert, s in cases:
        osc = calibrated_subaction(g).osc
        bound = s.primitive_bound(cert.K0)
        if not osc <= bound:
            bad.append(name)
        if name == "E2":
            e2_detail = f"E2 osc {osc} <= {bound}"
            if (osc, bound) != (8, 15):
                bad.append("E2 values")
    return not bad, f"{len(cases)} primitive instances, {e2_detail}, violations={bad[:5]}"


def criterion_4():
    bad = []
    cases = primitive_instances()
    for name, g, cert, s in cases:
        beta = max_cycle_mean(g)
        u = calibrated_subaction(g)
        u_A = minimal_subaction(g, beta)
        low = min(u.u.values())
        top = max(s.primitive_bound(cert.K0), cert.K0 * (s.sup_A - beta))
        ok = all(0 <= u_A.u[v] <= u.u[v] - low for v in g.vertices)
        ok &= max(u_A.u.values()) <= top
        ok &= all(subaction_variation(u_A, k) <= s.tail_sum(k) for k in range(1, g.graph.order))
        if not ok:
            bad.append(name)
    return not bad, f"{len(cases)} primitive instances, violations={bad[:5]}"


def criterion_5():
    bad = []
    cases = primitive_instances()
    for name, g, cert, s in cases:
        beta = max_cycle_mean(g)
        spread = s.sup_A - s.inf_A_on_F
        for k in range(1, 13):
            fh = finite_horizon_bound(g, k)
            if fh < beta or (k > cert.K0 and fh - beta > (s.head_sum(k) + cert.K0 * spread) / k):
                bad.append((name, k))
    return not bad, f"{len(cases)} primitive instances, k=1..12, violations={bad[:5]}"


def coercive_families():
    yield "E3 A=-x0", e3_model(i_max=8), [0], 1
    yield "peaked A=-|x0-2|", coercive_model(8, lambda w: Fraction(-abs(w[0] - 2)), TailBound.affine(-1, 2)), [2], 3
    yield (
        "range-2 A=-2x0+(x1 mod 2)",
        coercive_model(8, lambda w: Fraction(-2 * w[0] + w[1] % 2), TailBound.affine(-2, 1), 1, 1, m=2),
        [0],
        1,
    )


def criterion_6():
    start = time.perf_counter()
    window = 3
    notes, ok = [], True
    for name, model, F, expected in coercive_families():
        cert = compute_primitivity(model.essential, F)
        s = explicit_summary(model, cert)
        I_hat = compute_I_hat(model, s, cert)
        assert model.i_max >= I_hat + window + 1
        rep = plateau_scan(model, cert, I_hat, window)
        plateau = len({rep.beta_by_I[I] for I in range(I_hat, I_hat + window + 1)}) == 1
        top = level_graph(model, I_hat + window)
        classes = critical_structure(top, calibrated_subaction(top)).critical_classes
        local = all(sym <= I_hat for c in classes for v in c for sym in v)
        full = level_graph(model, model.i_max)
        threshold = support_bound_check(model, calibrated_subaction(full), Fraction(1, 2), full)
        good = I_hat == expected and plateau and local and rep.plateau_ok and threshold is not None
        ok &= good
        notes.append(f"{name}: I_hat={I_hat} beta={rep.beta} threshold={threshold}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 5, "; ".join(notes) + f"; {elapsed:.2f}s (< 5s)"


def criterion_7():
    graphs = instances() + list(fixed_graphs().values())
    cycles = 0
    bad = []
    for i, g in enumerate(graphs):
        beta = max_cycle_mean(g)
        # any sub-action at beta exposes every mean-beta cycle as tight
        cs = critical_structure(g, minimal_subaction(g, beta))
        critical = set(cs.critical_edges)
        for cyc in simple_cycles(g):
            cycles += 1
            mu = cycle_measure(PeriodicOrbit(tuple(cyc)))
            attains = integrate(mu, g) == beta
            if attains != set(cyc).issubset(critical) or verify_maximizing(mu, g, cs) != attains:
                bad.append(i)
    return not bad, f"{len(graphs)} graphs, {cycles} simple cycles, disagreements={bad[:5]}"


def criterion_8():
    notes, ok = [], True
    for name, beta in (("e2", "5"), ("e3", "0")):
        cfg = load_config(GOLDEN / f"{name}.json")
        first, second = render(analyze(cfg)), render(analyze(load_config(GOLDEN / f"{name}.json")))
        frozen = (GOLDEN / f"{name}.report.json").read_text()
        r = json.loads(frozen)
        problems = audit(cfg, r)
        ok &= first == second == frozen and not problems and r["beta"] == beta and r["verdict"] == "OK"
        notes.append(f"{name}: identical={first == second == frozen} audit={problems or 'clean'} beta={r['beta']}")
    e2 = json.loads((GOLDEN / "e2.report.json").read_text())
    e3 = json.loads((GOLDEN / "e3.report.json").read_text())
    ok &= e2["calibrated_subaction"]["u"] == {"0": "-5", "1": "-8", "2": "0"}
    ok &= e3["truncation"]["I_hat"] == 1
    return ok, "; ".join(notes)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        print()
        report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        report(n, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
