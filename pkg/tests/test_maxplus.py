from __future__ import annotations

from fractions import Fraction

import pytest

from weakkam.errors import InvalidSubAction, NotStronglyConnected, PositiveCycle
from weakkam.maxplus import (
    SubAction,
    calibrated_subaction,
    check_certificate,
    critical_structure,
    defects,
    finite_horizon_bound,
    graph_from_edges,
    largest_component,
    max_cycle_mean,
    minimal_subaction,
    strongly_connected_components,
    subaction_variation,
    weighted_graph,
)
from weakkam.shift import MarkovGraph

from conftest import e2_potential


def sub(values, beta):
    return SubAction({(i,): Fraction(v) for i, v in enumerate(values)}, Fraction(beta))


def as_tuple(u: SubAction):
    return tuple(u.u[v] for v in sorted(u.u))


def test_max_cycle_mean_examples(e1, e2):
    assert max_cycle_mean(e1) == 1
    assert max_cycle_mean(e2) == 5
    assert max_cycle_mean(graph_from_edges({(0, 0): Fraction(-7, 3)})) == Fraction(-7, 3)


def test_max_cycle_mean_multi_component():
    g = graph_from_edges({(0, 0): Fraction(1), (0, 1): Fraction(50), (1, 1): Fraction(3)})
    assert max_cycle_mean(g) == 3


def test_calibrated_examples(e1, e2):
    u = calibrated_subaction(e1)
    assert u.beta == 1 and as_tuple(u) == (0, 0)
    u = calibrated_subaction(e2)
    assert u.beta == 5 and as_tuple(u) == (-5, -8, 0)
    d = defects(e2, u)
    assert d[(2, 0)] == d[(0, 1)] == d[(2, 2)] == 0
    loop = calibrated_subaction(graph_from_edges({(3, 3): Fraction(4)}))
    assert as_tuple(loop) == (0,) and loop.beta == 4


def test_calibrated_rejects_disconnected():
    g = graph_from_edges({(0, 0): Fraction(1), (0, 1): Fraction(0), (1, 1): Fraction(3)})
    with pytest.raises(NotStronglyConnected):
        calibrated_subaction(g)
    core = largest_component(g)
    assert calibrated_subaction(core).beta == 1


def test_minimal_examples(e2, e4):
    assert as_tuple(minimal_subaction(e2, 5)) == (0, 0, 0)
    assert as_tuple(minimal_subaction(e4, 5)) == (0, 5)
    g = graph_from_edges({(0, 1): Fraction(2), (1, 0): Fraction(-1), (1, 1): Fraction(2)})
    assert set(minimal_subaction(g, 2).u.values()) == {0}


def test_minimal_rejects_low_beta(e2):
    with pytest.raises(PositiveCycle):
        minimal_subaction(e2, 4)


def test_finite_horizon_examples(e1, e2, e4):
    assert finite_horizon_bound(e1, 3) == 1
    assert finite_horizon_bound(e4, 1) == 10
    assert finite_horizon_bound(e4, 2) == 5
    assert finite_horizon_bound(e4, 3) == Fraction(20, 3)
    assert finite_horizon_bound(e2, 2) == 5


def test_critical_examples(e1, e2, e4):
    cs = critical_structure(e2, sub((-5, -8, 0), 5))
    assert set(cs.tight_edges) == {(0, 1), (2, 0), (2, 2)}
    assert cs.critical_edges == ((2, 2),)
    assert cs.critical_classes == (((2,),),)
    cs = critical_structure(e4, sub((0, 5), 5))
    assert set(cs.critical_edges) == {(0, 1), (1, 0)}
    cs = critical_structure(e1, sub((0, 0), 1))
    assert set(cs.tight_edges) == {(1, 0), (1, 1)}
    assert cs.critical_edges == ((1, 1),)


def test_critical_rejects_positive_defect(e2):
    with pytest.raises(InvalidSubAction):
        critical_structure(e2, sub((0, 0, 0), 4))


def test_certificate_examples(e2):
    rep = check_certificate(e2, sub((-5, -8, 0), 5))
    assert rep.verdict == "VALID" and rep.osc == 8
    rep = check_certificate(e2, sub((0, 0, 0), 4))
    assert rep.verdict == "INVALID" and rep.max_defect == 1
    assert check_certificate(e2, sub((0, 0, 0), 5)).verdict == "VALID"


def test_certificate_needs_tight_cycle(e2):
    # beta too large: all defects negative, nothing pins beta
    rep = check_certificate(e2, sub((0, 0, 0), 6))
    assert rep.defects_nonpositive and not rep.tight_cycle and rep.verdict == "INVALID"


def test_tarjan_order_and_components():
    succ = {0: [1], 1: [0, 2], 2: [3], 3: [2], 4: []}
    comps = strongly_connected_components(range(5), lambda v: succ[v])
    assert sorted(map(sorted, comps)) == [[0, 1], [2, 3], [4]]


def test_order_three_lifting():
    g = MarkovGraph.full((0, 1))
    p = {w: Fraction(1 if w == (0, 1, 0) else 0) for w in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]}
    from weakkam.potential import Potential

    wg = weighted_graph(g, Potential(3, p))
    assert len(wg.vertices) == 4
    assert max_cycle_mean(wg) == Fraction(1, 2)
    u = calibrated_subaction(wg)
    assert check_certificate(wg, u).verdict == "VALID"
    assert subaction_variation(u, 2) == 0


def test_e2_range_two_weighted_graph(e2):
    from conftest import e2_graph

    assert weighted_graph(e2_graph(), e2_potential()).weight == e2.weight


def test_float_mode_agrees(e2):
    g = graph_from_edges({e: float(w) for e, w in e2.weight.items()})
    assert g.tol > 0
    assert max_cycle_mean(g) == pytest.approx(5.0)
    u = calibrated_subaction(g)
    assert [u.u[v] for v in sorted(u.u)] == pytest.approx([-5, -8, 0])
