import json

import pytest

import cubecat

TREFOIL = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"
BIGON = "X[2,3,4,1];X[4,3,2,1]"


def test_parse():
    d = cubecat.parse_pd(TREFOIL)
    assert d.crossings == 3
    assert d.c_minus == 3
    assert d.mirror().c_plus == 3
    with pytest.raises(ValueError):
        cubecat.parse_pd("")


def test_trefoil_table():
    h = cubecat.homology(TREFOIL)
    cells = {(e["i"], e["j"]): (e["rank"], e["torsion"]) for e in h["entries"]}
    assert cells[(0, -1)] == (1, [])
    assert cells[(-3, -9)] == (1, [])
    assert cells[(-2, -7)] == (0, [2])


def test_euler_matches_state_sum():
    for theory in ("kh", "nested", "odd"):
        assert cubecat.euler_characteristic(TREFOIL, theory) == cubecat.kauffman_bracket(TREFOIL)


def test_certificates():
    assert cubecat.verify_theorem1(BIGON, orient="numbering")["ok"]
    assert cubecat.compare_mod2(TREFOIL)["equal"]
    assert cubecat.outer_face_invariance("X[1,4,2,3];X[3,2,4,1]")["invariant"]
    assert cubecat.random_sign_trials(TREFOIL, "odd", trials=20, seed=5)["ok"]


def test_relations_and_signs():
    nested = cubecat.relations("nested")
    assert [r["name"] for r in nested["relations"] if r["observed"] == -1] == ["torus:d0>m0|d1>m1"]
    report = cubecat.classify_signs()
    assert report["satisfying"] == 32
    assert report["sets_agree"]


def test_run_matches_cli_contract():
    status, out, _ = cubecat.run("compute", pd=TREFOIL, theory="odd")
    assert status == 0
    assert json.loads(out)["theory"] == "odd"
    status, _, err = cubecat.run("compute", pd="")
    assert status == 1
    assert "empty" in err
    again = cubecat.run("verify", theorem="signs", pd=TREFOIL, seed=4, trials=5)
    assert again == cubecat.run("verify", theorem="signs", pd=TREFOIL, seed=4, trials=5)
