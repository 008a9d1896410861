import json

from fastapi.testclient import TestClient

from localfactors.service.app import app
from localfactors.service.models import MultCharSpec
from localfactors.characters import make_mult_char
from localfactors.localfield import make_field
from localfactors.ratfunc import parse_rf
from localfactors.scalar import Scalar
from localfactors.tate import tate_gamma
from localfactors.characters import AddChar

client = TestClient(app)


FIELD3 = {"p": 3, "f": 1, "level": 4}
TRIVIAL = {"conductor": 0}
# level-4 field at p=3 has wild generators (1,0), (2,0): three images total
QUAD = {
    "conductor": 1,
    "unit_images": [{"zeta_order": 2, "zeta_power": 1}] + [{}] * 2,
}


def post(path, doc):
    return client.post(path, json=doc)


def test_healthz():
    r = client.get("/healthz")
    assert r.status_code == 200 and r.json()["ok"]


def test_tate_trivial_character():
    doc = {"field": FIELD3, "characters": {"one": TRIVIAL}, "chi": "one"}
    r = post("/factor/tate", doc)
    assert r.status_code == 200
    body = r.json()
    assert body["ok"]
    assert body["results"]["L"] == "(1 - Z)^-1"
    assert body["results"]["eps"] == "1"
    assert parse_rf(body["results"]["gamma"]) == tate_gamma(
        make_mult_char(make_field(3, 1, 4), 0, Scalar.one()),
        AddChar.canonical(make_field(3, 1, 4)),
    )
    assert any("epsilon normalization" in note for note in body["provenance"])


def test_tate_quadratic_with_eval():
    doc = {
        "field": FIELD3, "characters": {"quad": QUAD}, "chi": "quad",
        "eval": "s=0.5",
    }
    r = post("/factor/tate", doc)
    assert r.status_code == 200
    body = r.json()
    gamma = parse_rf(body["results"]["gamma"])
    val = body["evaluations"]["values"]["gamma"]
    expect = gamma.evaluate(0.5, 3)
    assert abs(complex(val[0], val[1]) - expect) < 1e-9
    # |gamma(1/2)| = 1 for unitary data
    assert abs(abs(complex(val[0], val[1])) - 1.0) < 1e-9


def test_twisted_wedge2_degree_one_is_one():
    doc = {
        "field": FIELD3,
        "characters": {"quad": QUAD, "one": TRIVIAL},
        "param": {"type": "principal_series", "characters": ["quad"]},
        "r0": "wedge2",
        "eta": "one",
    }
    r = post("/factor/twisted", doc)
    assert r.status_code == 200
    assert r.json()["results"]["gamma"] == "1"


def test_twisted_langlands_quotient():
    doc = {
        "field": FIELD3,
        "characters": {"quad": QUAD, "one": TRIVIAL},
        "param": {
            "type": "langlands_quotient",
            "blocks": [
                {"characters": ["quad"], "twist": "1/2"},
                {"characters": ["one"], "twist": "-1/2"},
            ],
        },
        "r0": "sym2",
        "eta": "one",
    }
    r = post("/factor/twisted", doc)
    assert r.status_code == 200
    body = r.json()
    assert "gamma" in body["results"] and "L" in body["results"]


def test_rootdatum_cartan_example():
    r = post("/rootdatum", {"n": 2, "parity": "odd", "partitions": [[1, 1]]})
    assert r.status_code == 200
    body = r.json()
    assert body["cartan_matrix"] == [[2, -2], [-1, 2]]
    assert body["w0_length"] == 3
    deco = body["decompositions"][0]
    assert sorted(f["length"] for f in deco["factors"]) == [1, 1, 1]


def test_transfer_check():
    doc = {
        "field_a": {"p": 3, "f": 1, "level": 6},
        "field_b": {"p": 3, "f": 1, "level": 9},
        "level": 6,
        "characters": {
            # level-6 field at p=3: wild generators (1,0), (2,0), (4,0), (5,0)
            "quad": {"conductor": 1,
                     "unit_images": [{"zeta_order": 2, "zeta_power": 1}] + [{}] * 4},
            "eta": {"conductor": 2,
                    "unit_images": [{}, {"zeta_order": 3, "zeta_power": 1}] + [{}] * 3},
        },
        "sigma": ["quad"],
        "eta": "eta",
        "r0": "sym2",
    }
    r = post("/transfer-check", doc)
    assert r.status_code == 200
    body = r.json()
    assert body["equal"] is True
    assert max(body["levels_read"].values()) < 6


def test_schema_violation_reports_pointer():
    r = post("/factor/tate", {"field": {"p": 3, "level": 0}, "chi": "x"})
    assert r.status_code == 422
    body = r.json()
    locations = body["detail"] if "detail" in body else body["error"]["locations"]
    assert any("level" in str(loc) for loc in locations)


def test_usage_error_is_422():
    doc = {"field": FIELD3, "characters": {}, "chi": "missing"}
    r = post("/factor/tate", doc)
    assert r.status_code == 422
    assert "missing" in r.json()["error"]["message"]


def test_determinism_byte_identical():
    doc = {
        "field": FIELD3,
        "characters": {"quad": QUAD, "one": TRIVIAL},
        "param": {"type": "principal_series", "characters": ["quad", "one"]},
        "r0": "sym2",
        "eta": "quad",
    }
    a = post("/factor/twisted", doc).content
    b = post("/factor/twisted", doc).content
    assert a == b


def test_mult_char_spec_roundtrip():
    field = make_field(3, 1, 4)
    chi = make_mult_char(
        field, 2, Scalar.zeta(4) * Scalar.qpow(1) ** 0,
        teich_image=(2, 1), wild_images={(1, 0): (3, 2)},
    )
    spec = MultCharSpec.of(chi)
    again = spec.build(field)
    assert again == chi
    spec2 = MultCharSpec.model_validate(json.loads(spec.model_dump_json()))
    assert spec2.build(field) == chi
