from __future__ import annotations

import json

import pytest

from weakkam.config import parse_config
from weakkam.errors import ExplicitRegionTooSmall, InvalidModel, NotFinitelyPrimitive
from weakkam.pipeline import analyze, audit

from conftest import GOLDEN


def raw(name):
    return json.loads((GOLDEN / f"{name}.json").read_text())


def range_two_config():
    n = 9
    table = [
        {"word": [i, j], "value": str(-2 * i + j % 2)} for i in range(n) for j in range(n)
    ]
    return {
        "schema": 1,
        "graph": {"symbols": n, "transitions": "full"},
        "potential": {"range": 2, "table": table},
        "F": [0],
        "tail": {"type": "affine", "slope": -2, "offset": 1},
        "declared": {"sup_A": 1, "var_total": 1},
        "hoelder": {"H": 2, "lambda": "1/2"},
    }


def test_range_two_countable_model():
    cfg = parse_config(range_two_config())
    r = analyze(cfg)
    assert r["verdict"] == "OK"
    assert r["truncation"]["I_hat"] == 1 and r["beta"] == "0"
    assert any(c["name"].startswith("u_A_hoelder") for c in r["checks"])
    assert audit(cfg, r) == []


def test_default_F_is_smallest_certifying_prefix():
    r = raw("e2")
    del r["F"]
    rep = analyze(parse_config(r))
    # {0} has no loop and {0, 1} only alternates, so the full alphabet is needed
    assert rep["primitivity"]["F"] == [0, 1, 2] and rep["primitivity"]["K0"] == 2


def test_default_F_prefers_short_prefix():
    r = raw("e3")
    del r["F"]
    assert analyze(parse_config(r))["primitivity"]["F"] == [0]


def test_unconnectable_graph():
    r = raw("e2")
    r["graph"]["transitions"] = [[0, 1], [1, 0]]
    r["potential"]["table"] = r["potential"]["table"][:2]
    del r["F"]
    with pytest.raises(NotFinitelyPrimitive):
        analyze(parse_config(r))


def test_supplied_I_hat():
    r = raw("e3")
    r["I_hat"] = 2
    rep = analyze(parse_config(r))
    assert rep["truncation"]["I_hat"] == 2 and rep["verdict"] == "OK"
    r["I_hat"] = 0
    with pytest.raises(InvalidModel):
        analyze(parse_config(r))


def test_supplied_I_hat_must_satisfy_inequality():
    r = raw("e3")
    r["I_hat"] = 1
    # symbol 2 reaches sup A, so nothing past I_hat = 1 sits strictly below the threshold
    r["potential"]["table"][2]["value"] = "0"
    r["tail"] = {"type": "affine", "slope": -1, "offset": 2}
    with pytest.raises(InvalidModel, match="truncation inequality"):
        analyze(parse_config(r))


def test_float_mode_report():
    r = raw("e3")
    r["mode"] = "float"
    rep = analyze(parse_config(r))
    assert rep["verdict"] == "OK" and float(rep["beta"]) == 0.0


def test_explicit_region_too_small():
    r = raw("e3")
    r["graph"]["symbols"] = 4
    r["potential"]["table"] = r["potential"]["table"][:4]
    r["i_max"] = 3
    with pytest.raises(ExplicitRegionTooSmall):
        analyze(parse_config(r))
