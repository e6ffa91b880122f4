import io
import json
import subprocess
import sys
from collections import Counter

import pytest

from quiverforge.algebra import presentation_from_json, presentation_to_json, standard_relations
from quiverforge.cli import run
from quiverforge.fixtures import FIXTURES, fixtures, get_fixture, roundtrip
from quiverforge.quiver import make_G


def _run(*argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def _json(*argv, **kw):
    code, text = _run(*argv, **kw)
    return code, json.loads(text)


def test_cyclic_check_G22():
    assert _json("cyclic-check", "--fixture", "G22") == (0, {"cyclically_oriented": True})


def test_check_theorem_C5():
    code, doc = _json("check-theorem", "-f", "C5")
    assert code == 0 and doc["all_pass"]
    assert len(doc["cuts"]) == 5 and all(c["ok"] for c in doc["cuts"])


def test_mutate_double_arrow():
    code, doc = _json("mutate", "--vertex", "2", "-f", "double-arrow")
    assert code == 0
    pairs = Counter((a["from"], a["to"]) for a in doc["arrows"])
    assert pairs == Counter({("1", "3"): 5, ("2", "1"): 2, ("3", "2"): 2})


def test_mutation_twice_is_identity_up_to_ids():
    code, doc = _json("mutate", "-k", "2", "-k", "2", "-f", "double-arrow")
    pairs = Counter((a["from"], a["to"]) for a in doc["arrows"])
    assert pairs == Counter({("1", "2"): 2, ("2", "3"): 2, ("1", "3"): 1})


def test_input_from_file_and_stdin(tmp_path, monkeypatch):
    doc = presentation_to_json(standard_relations(make_G(2, 2)))
    path = tmp_path / "g22.json"
    path.write_text(json.dumps(doc))
    assert _json("cuts", "--input", str(path))[1]["count"] == 5
    assert _json("cuts", "-i", "-", stdin=json.dumps(doc), monkeypatch=monkeypatch)[1]["count"] == 5


def test_cuts_options():
    assert _json("cuts", "-f", "G22", "--containing", "eta")[1] == {"cut": ["eta"]}
    code, doc = _json("cuts", "-f", "G22", "--quotient", "alpha1,beta1")
    assert code == 0 and doc["report"]["structural_ok"]
    assert len(doc["presentation"]["relations"]) == 2
    code, doc = _json("cuts", "-f", "G22", "--quotient", "alpha1")
    assert code == 2 and doc["error"] == "precondition failed"


def test_relations_and_normalize(tmp_path):
    code, doc = _json("relations", "-f", "G22")
    assert code == 0 and len(doc["relations"]) == 5
    path = tmp_path / "std.json"
    doc["relations"][0]["terms"][0]["coeff"] = "3"
    path.write_text(json.dumps(doc))
    assert _json("relations", "--check", "-i", str(path))[1]["ok"]
    code, out = _json("normalize", "-i", str(path))
    assert code == 0
    assert presentation_from_json(out["presentation"]) == standard_relations(make_G(2, 2))
    assert sorted(set(out["scaling"].values())) in (["1", "1/3"], ["1", "3"])


def test_extend_and_classify():
    code, doc = _json("extend", "-f", "example13-B")
    assert code == 0 and doc["scope"] == "outside theorem scope"
    assert sorted(doc["witness"]["vertices"]) == ["1", "2", "3"]
    code, doc = _json("classify", "-f", "commutative-square")
    assert code == 0
    assert (doc["definiteness"], doc["roots"], doc["type"]) == ("positive-definite", 24, "D4")


def test_dot_output():
    code, text = _run("dot", "-f", "C3")
    assert code == 0 and text.startswith("digraph") and '"3" -> "1" [label="a3"];' in text
    code, text = _run("mutate", "-k", "1", "-f", "C3", "--format", "dot")
    assert code == 0 and text.startswith("digraph")


def test_exit_codes(tmp_path, monkeypatch):
    code, doc = _json("mutate", "-k", "9", "-f", "C3")
    assert code == 2 and set(doc) >= {"error", "detail"}
    code, doc = _json("cyclic-check", "-i", "-", stdin="{not json", monkeypatch=monkeypatch)
    assert code == 1 and doc["error"] == "malformed input"
    code, doc = _json("cyclic-check", "-i", "-", stdin="[1, 2]", monkeypatch=monkeypatch)
    assert code == 1
    code, doc = _json("cyclic-check", "-i", str(tmp_path / "missing.json"))
    assert code == 1
    code, doc = _json("cyclic-check", "-f", "nope")
    assert code == 1 and "unknown fixture" in doc["detail"]
    assert _run("no-such-command")[0] == 1
    bad = {"vertices": ["1"], "arrows": [{"id": "a", "from": "1", "to": "2"}]}
    assert _json("validate", "-i", "-", stdin=json.dumps(bad), monkeypatch=monkeypatch)[0] == 1


@pytest.mark.parametrize("argv", [
    ("classify", "-f", "example13-C"),
    ("check-theorem", "-f", "G32"),
    ("cuts", "-f", "G32"),
    ("cycles", "-f", "G33"),
    ("fixtures",),
])
def test_output_is_deterministic(argv):
    assert _run(*argv) == _run(*argv)


def test_fixture_catalog():
    names = {f.name for f in fixtures()}
    required = {"C3", "C4", "C5", "G22", "G32", "double-arrow", "example13-B", "example13-C",
                "commutative-square", "A2", "A3", "A4", "A5", "D4", "D5", "E6", "D~4"}
    assert required <= names
    assert all(roundtrip(f) for f in fixtures())
    assert [r.paths for r in get_fixture("example13-B").presentation.relations] == [(("phi", "gamma"),)]
    assert [r.paths for r in get_fixture("example13-C").presentation.relations] == [(("eta", "phi"),)]
    assert FIXTURES["C3"].quiver.arrow_ids == ("a1", "a2", "a3")
    code, doc = _json("fixtures")
    assert [f["name"] for f in doc["fixtures"]] == [f.name for f in fixtures()]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quiverforge", "cyclic-check", "-f", "C4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"cyclically_oriented": True}
