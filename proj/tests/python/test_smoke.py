import pytest

import folmod


def test_classify():
    assert folmod.classify("d(y^2 - x^3)") == "to_blow_up"
    assert folmod.classify("d(x*y)") == "simple"
    assert folmod.classify("y*dx + x^2*dy") == "saddle_node"


def test_resolve_cusp():
    rep = folmod.resolve("d(y^2 - x^3)", [("C", "y^2 - x^3")])
    assert rep["status"] == "accepted"
    assert rep["blow_ups"] == 3
    assert rep["exceptional"] == ["E1", "E2", "E3"]
    (branch,) = rep["branches"]
    assert branch["equation"] == "C"
    assert [m["nu"] for m in branch["multiplicities"]] == [2, 1, 1, 1]


def test_resolve_rejection():
    rep = folmod.resolve("y*dx - x*dy")
    assert rep["status"] == "rejected"
    assert rep["reason"] in ("dicritical", "resonant_presimple")


def test_model_cusp():
    rep = folmod.model("d(y^2 - x^3)", [("C", "y^2 - x^3")])
    assert rep["status"] == "accepted"
    assert rep["checks"] == {
        "divisor_dicritical": False,
        "indices": True,
        "support": True,
    }
    ledger = {e["id"]: e["coefficient"] for e in rep["exceptional"]}
    assert ledger == {"E1": "2", "E2": "3", "E3": "6"}


def test_model_three_lines():
    eqs = [("L1", "x"), ("L2", "y"), ("L3", "x + y")]
    rep = folmod.model("d(x*y*(x+y))", eqs)
    assert [b["coefficient"] for b in rep["branches"]] == ["1", "1", "1"]
    assert [b["cs_index"] for b in rep["branches"]] == ["-2", "-2", "-2"]


def test_dicritical_witness():
    w = folmod.dicritical_witness(["1", "-1"])
    assert w is not None and sum(w) > 0
    assert folmod.dicritical_witness(["2", "3"]) is None


def test_reduce_list():
    rep = folmod.reduce_list(["x", "y^2 - x^3"])
    assert rep["status"] == "desingularized"
    assert rep["blow_ups"] == 4
    for pt in rep["terminal_points"]:
        assert pt["certificates"]


def test_dual_graph():
    dot = folmod.dual_graph_dot("d(y^2 - x^3)", [("C", "y^2 - x^3")])
    assert "graph dual" in dot
    assert '"E3" -- "B1"' in dot


def test_parse_error():
    with pytest.raises(ValueError):
        folmod.classify("x + * y")
