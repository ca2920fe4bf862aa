from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from weakkam.maxplus import graph_from_edges, weighted_graph
from weakkam.potential import CountableModel, Potential, TailBound
from weakkam.shift import MarkovGraph

GOLDEN = Path(__file__).parent / "golden"

E2_WEIGHTS = {(0, 1): 2, (1, 0): 4, (1, 2): 0, (2, 2): 5, (2, 0): 0}


def e1_potential() -> Potential:
    return Potential(1, {(0,): Fraction(0), (1,): Fraction(1)})


def e2_graph() -> MarkovGraph:
    return MarkovGraph((0, 1, 2), frozenset(E2_WEIGHTS))


def e2_potential() -> Potential:
    return Potential(2, {w: Fraction(v) for w, v in E2_WEIGHTS.items()})


def coercive_model(i_max: int, fn, tail: TailBound, sup_A=0, var_total=0, m: int = 1) -> CountableModel:
    g = MarkovGraph.full(range(i_max + 1))
    return CountableModel(g, Potential.from_function(g, m, fn), i_max, tail, Fraction(sup_A), Fraction(var_total))


def e3_model(i_max: int = 8, tail: TailBound | None = None) -> CountableModel:
    return coercive_model(i_max, lambda w: Fraction(-w[0]), tail or TailBound.affine(-1, 0))


@pytest.fixture
def e1():
    return weighted_graph(MarkovGraph.full((0, 1)), e1_potential())


@pytest.fixture
def e2():
    return graph_from_edges({e: Fraction(w) for e, w in E2_WEIGHTS.items()})


@pytest.fixture
def e3():
    return e3_model()


@pytest.fixture
def e4():
    return graph_from_edges({(0, 1): Fraction(10), (1, 0): Fraction(0)})
