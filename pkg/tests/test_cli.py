import json
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from gausscat.cli import main
from gausscat.serialize import load_schema


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def proj_complex(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"terms": [{"vertex": "y"}, {"vertex": "x"}],
                                "twist": [{"i": 0, "j": 1, "element": ["b"]}]}))
    return str(path)


@pytest.fixture
def iprime_complex(tmp_path):
    path = tmp_path / "i.json"
    path.write_text(json.dumps({"terms": [{"k": 0, "m": 1}, {"k": 0}], "twist": [{"i": 0, "j": 1, "n": 0}]}))
    return str(path)


def test_normalize(capsys):
    assert run(capsys, "normalize", "cup ; cap") == (0, "1·(0,0,0)  deg 0\n", "")
    code, out, _ = run(capsys, "normalize", "alpha0 + alpha0 ; alpha0")
    assert out == "1·(0,0,1) + 1·(0,0,2)  deg mixed\n"
    assert run(capsys, "normalize", "alpha0 + alpha0")[1] == "0\n"


def test_normalize_json(capsys):
    code, out, _ = run(capsys, "normalize", "--json", "hf ; hfb")
    data = json.loads(out)
    jsonschema.validate(data, load_schema("normalize"))
    assert data["terms"] == [{"k": 0, "l": 0, "n": 1, "degree": 1, "name": "alpha0"}]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "normalize", "cup ;")[0] == 2
    assert run(capsys, "normalize", "cup ; hf")[0] == 3
    assert run(capsys, "normalize", "--strict", "false", "cup ; hf")[0] == 0
    assert run(capsys, "k0", str(tmp_path / "missing.json"))[0] == 5
    assert run(capsys, "render", "cup", "-o", str(tmp_path / "no" / "x.svg"))[0] == 5
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"terms": [{"k": 0}, {"k": 0}], "twist": [{"i": 0, "j": 1, "n": 0}]}))
    assert run(capsys, "k0", str(bad))[0] == 3


def test_hom(capsys):
    assert run(capsys, "hom", "0", "0", "--deg", "2")[1] == "alpha0^2\n"
    assert run(capsys, "hom", "1", "0", "--deg", "0")[1] == "0\n"
    out = run(capsys, "hom", "2", "0", "--all-degrees", "--max", "3")[1]
    assert out.splitlines() == ["deg 1: cap", "deg 2: alpha0 . cap", "deg 3: alpha0^2 . cap"]
    assert "exceeds" in run(capsys, "hom", "0", "0", "--deg", "5", "--max-n", "3")[1]


def test_hom_json_and_env(capsys, monkeypatch):
    monkeypatch.setenv("GAUSSCAT_MAX_N", "2")
    data = json.loads(run(capsys, "hom", "0", "0", "--all-degrees", "--json")[1])
    jsonschema.validate(data, load_schema("hom"))
    assert [row["degree"] for row in data["degrees"]] == [0, 1, 2]


def test_tensor_r(capsys):
    code, out, _ = run(capsys, "tensor-r", "M", "P(x)")
    data = json.loads(out)
    jsonschema.validate(data, load_schema("module"))
    assert {b["label"] for b in data["basis"]} == {"ymx⊗ex", "a.ymx⊗ex", "ba.ymx⊗ex"}
    data = json.loads(run(capsys, "tensor-r", "M", "M")[1])
    jsonschema.validate(data, load_schema("module"))
    assert sorted(b["deg"] for b in data["basis"]) == [-1, -1, -1, 0, 0, 0]
    assert run(capsys, "tensor-r", "P(x)", "M")[0] == 3


def test_act(capsys, proj_complex):
    data = json.loads(run(capsys, "act", "id1", proj_complex)[1])
    jsonschema.validate(data, load_schema("complex_proj"))
    assert data["terms"] == [{"vertex": "x", "m": 1}, {"vertex": "y", "m": 0}]
    data = json.loads(run(capsys, "act", "alpha0", proj_complex)[1])
    assert data["degree"] == 1 and {c["i"] for c in data["components"]} == {0, 1}


def test_k0(capsys, proj_complex, iprime_complex):
    assert run(capsys, "k0", proj_complex)[1] == "(1, 1)\n"
    assert run(capsys, "k0", iprime_complex)[1] == "0\n"
    assert json.loads(run(capsys, "k0", "--json", iprime_complex)[1]) == {"re": 0, "im": 0}


def test_verify_k0(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "k0")
    assert code == 0
    assert "[[0,-1],[1,0]]" in out and "square = -I: ok" in out


def test_verify_json_is_valid_and_deterministic(capsys):
    code, first, _ = run(capsys, "verify", "--suite", "algebra", "--json")
    assert code == 0
    jsonschema.validate(json.loads(first), load_schema("report"))
    assert run(capsys, "verify", "--suite", "algebra", "--json")[1] == first


@pytest.mark.parametrize("expr", ["id1", "cup", "cap", "hf", "alpha0", "alpha1 + alpha1 ; alpha1", "id0"])
def test_render(capsys, tmp_path, expr):
    out = tmp_path / "d.svg"
    assert run(capsys, "render", expr, "-o", str(out))[0] == 0
    root = ET.parse(out).getroot()
    assert root.tag == "{http://www.w3.org/2000/svg}svg" and root.get("version") == "1.1"


def test_render_marks(tmp_path, capsys):
    out = tmp_path / "hf.svg"
    run(capsys, "render", "hf", "-o", str(out))
    tags = [el.tag.split("}")[1] for el in ET.parse(out).getroot().iter()]
    assert "circle" in tags
    run(capsys, "render", "cup", "-o", str(out))
    tags = [el.tag.split("}")[1] for el in ET.parse(out).getroot().iter()]
    assert "path" in tags and "circle" not in tags
