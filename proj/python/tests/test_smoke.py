import math

import pytest

import icvx


def test_builtins():
    assert icvx.builtin_names() == ["karney", "padded_finite_qp", "onedim_tail", "minimax_abs"]
    k = icvx.builtin("karney")
    assert k.dim == 2 and k.name == "karney"
    again = icvx.parse_instance(k.to_json())
    assert again.to_json() == k.to_json()


def test_karney_values():
    assert abs(icvx.solve_primal("karney")["value"]) < 1e-7
    assert icvx.solve_dual("karney", "haar")["value"] == pytest.approx(-1.0, abs=1e-6)
    d = icvx.solve_dual("karney", "d")
    assert abs(d["value"]) < 1e-6
    assert d["multiplier"]["lambda_inf"] == pytest.approx(1.0, abs=1e-6)


def test_lagrangian_and_transfer():
    assert icvx.dual_value("karney", {"space": "haar", "support": [0.0, 1.0]})["value"] == "-inf"
    hat = icvx.transfer_D_to_Dm({"space": "l1", "lambda_inf": 1.0}, 3)
    assert hat["space"] == "linf" and hat["tail_value"] == 1.0


def test_chain_and_slater():
    ch = icvx.duality_chain("padded_finite_qp", [0, 3], horizon=8)
    assert ch["ordered"]
    assert icvx.slater_check("karney")["holds"]
    assert not icvx.slater_check("minimax_abs")["holds"]
    assert icvx.minimax_check("minimax_abs", 8)["holds"]


def test_certificates():
    mult = {"space": "l1", "lambda_inf": 1.0}
    c = icvx.fuzzy_kkt("karney", "d", [0.0, 0.0], mult, eps=1e-6, cap=5)
    assert c["found"] and c["min_norm"] == 0.0 and c["recheck"]["pass"]
    hat = icvx.transfer_D_to_Dm(mult, 3)
    c50 = icvx.fuzzy_kkt("karney", "dm", [0.0, 0.0], hat, m=3, eps=1e-3, cap=4, n=50)
    assert not c50["found"]
    assert c50["min_norm"] == pytest.approx(1 / math.sqrt(2501), rel=1e-6)
    assert icvx.complementary_slackness("karney", [0.0, 0.0], mult)["pass"]
    assert not icvx.lagrangian_attainment("karney", [0.0, 0.1], mult)["pass"]


def test_errors():
    with pytest.raises(icvx.Error):
        icvx.builtin("missing")
    with pytest.raises(ValueError):
        icvx.parse_instance("{")
