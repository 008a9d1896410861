import json

from localfactors.cli import main
from localfactors.ratfunc import parse_rf


FIELD3 = {"p": 3, "f": 1, "level": 4}
QUAD = {
    "conductor": 1,
    "unit_images": [{"zeta_order": 2, "zeta_power": 1}, {}, {}],
}


def run_cli(capsys, args, doc=None, tmp_path=None):
    argv = list(args)
    if doc is not None:
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(doc))
        argv += ["--doc", str(path)]
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_factor_tate_trivial(capsys, tmp_path):
    doc = {"field": FIELD3, "characters": {"one": {"conductor": 0}}, "chi": "one"}
    code, out = run_cli(capsys, ["factor", "tate"], doc, tmp_path)
    assert code == 0
    assert out["ok"] is True
    assert out["results"]["L"] == "(1 - Z)^-1"
    assert out["results"]["eps"] == "1"
    assert out["results"]["gamma"] == "-1*q^1*Z^1*(1 - Z)^1*(1 - q^1*Z)^-1"


def test_factor_twisted_wedge2_gl1(capsys, tmp_path):
    doc = {
        "field": FIELD3,
        "characters": {"quad": QUAD, "one": {"conductor": 0}},
        "param": {"type": "principal_series", "characters": ["quad"]},
        "r0": "wedge2",
        "eta": "one",
    }
    code, out = run_cli(capsys, ["factor", "twisted"], doc, tmp_path)
    assert code == 0
    assert out["results"]["gamma"] == "1"


def test_rootdatum_flags(capsys):
    code = main(["rootdatum", "--n", "2", "--parity", "odd"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["cartan_matrix"] == [[2, -2], [-1, 2]]


def test_outputs_reparse_and_are_deterministic(capsys, tmp_path):
    doc = {
        "field": FIELD3,
        "characters": {"quad": QUAD, "one": {"conductor": 0}},
        "param": {"type": "principal_series", "characters": ["quad", "one"]},
        "r0": "sym2",
        "eta": "quad",
        "eval": "s=0.25+0.5i",
    }
    code, out = run_cli(capsys, ["factor", "twisted"], doc, tmp_path)
    assert code == 0
    for name, text in out["results"].items():
        parse_rf(text)  # round-trips without error
    code2, out2 = run_cli(capsys, ["factor", "twisted"], doc, tmp_path)
    assert out == out2


def test_usage_error_exit_code(capsys, tmp_path):
    doc = {"field": FIELD3, "characters": {}, "chi": "nope"}
    code, out = run_cli(capsys, ["factor", "tate"], doc, tmp_path)
    assert code == 2
    assert out["ok"] is False


def test_schema_error_exit_code_and_pointer(capsys, tmp_path):
    doc = {"field": {"p": 3, "f": 1, "level": 0}, "chi": "x"}
    code, out = run_cli(capsys, ["factor", "tate"], doc, tmp_path)
    assert code == 2
    assert any("/field/level" == loc["pointer"] for loc in out["error"]["locations"])


def test_stability_demo_with_scan(capsys, tmp_path):
    level6 = {"p": 3, "f": 1, "level": 6}
    images = lambda entries: entries + [{}] * (5 - len(entries))
    doc = {
        "field": level6,
        "characters": {
            "one": {"conductor": 0},
            "quad": {"conductor": 1, "unit_images": images([{"zeta_order": 2, "zeta_power": 1}])},
            "eta4": {"conductor": 4, "unit_images": images([{}, {"zeta_order": 9, "zeta_power": 1}])},
        },
        "p1": ["quad", "quad"],
        "p2": ["one", "one"],
        "eta": "eta4",
        "r0": "wedge2",
    }
    code, out = run_cli(capsys, ["stability-demo", "--scan-threshold"], doc, tmp_path)
    assert code == 0
    assert out["equal"] is True and out["matches_closed_form"] is True
    scan = out["scan"]
    assert scan[-1]["minimal_working_conductor"] is not None


def test_plancherel_with_partitions(capsys, tmp_path):
    doc = {
        "field": FIELD3,
        "characters": {"quad": QUAD, "one": {"conductor": 0}},
        "param": {"type": "principal_series", "characters": ["quad", "one"]},
        "r0": "sym2",
        "eta": "one",
        "partitions": [[1, 1], [2]],
    }
    code, out = run_cli(capsys, ["plancherel"], doc, tmp_path)
    assert code == 0
    assert out["decompositions_verified"] == [[1, 1], [2]]
    assert "mu_normalized" in out["results"]
    assert "gamma_w0(G/P)^2 is symbolic" in out["normalization"]


def test_selftest_subset(capsys):
    code = main(["selftest", "--criteria", "2", "10"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["all_passed"] is True
    assert [c["number"] for c in out["criteria"]] == [2, 10]
