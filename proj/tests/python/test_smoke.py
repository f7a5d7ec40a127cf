import json

import pytest

phifix = pytest.importorskip("phifix")

MINI = """
space reals from -2 to 2 step 0.5
map piecewise { x > 1 : x - 1 ; otherwise : x }
phi piecewise { otherwise : 0 }
query rho
query fixset
"""


def test_parse_canonicalizes():
    assert (
        phifix.parse("piecewise{x>2:x/2;otherwise:x}")
        == "piecewise { x > 2 : x / 2 ; otherwise : x }"
    )


def test_parse_rejects_malformed():
    with pytest.raises(ValueError):
        phifix.parse("piecewise { x > : 1 ; otherwise : 0 }")


def test_eval():
    assert phifix.eval("piecewise { x > 2 : x / 2 ; otherwise : x }", 4) == 2
    assert phifix.eval("piecewise { otherwise : abs(x) - x }", -3) == 6
    assert phifix.eval("piecewise { otherwise : -conj(z) }", -5 + 1j, True) == 5 + 1j


def test_run_scenario_reports_rho():
    report = json.loads(phifix.run_scenario(MINI, name="mini"))
    assert report["scenario"] == "mini"
    values = {r["query"]: r["value"] for r in report["results"]}
    assert values["rho"] == pytest.approx(1.0)
    assert len(values["fixset"]) == 7


def test_corpus_passes():
    report = json.loads(phifix.corpus())
    assert report["pass"] is True
    assert len(report["scenarios"]) == 8
    assert len(phifix.corpus_names()) == 8
    assert "piecewise" in phifix.corpus_text("finite_union_map")


def test_scan_is_sound_and_deterministic():
    a = json.loads(phifix.scan(seed=7, trials=40))
    b = json.loads(phifix.scan(seed=7, trials=40))
    assert a["soundness_violations"] == 0
    assert a == b
    assert a["converse_failures"] > 0
