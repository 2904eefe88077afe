import json

import pytest

from cactuskit.cli import BUDGET, FALSE, OK, USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_abelianization(capsys):
    code, out, _ = run(capsys, "abelianization", "--preset=A3")
    assert code == OK and out.strip() == "Z2^3"
    code, out, _ = run(capsys, "abelianization", "--preset=E6", "--format", "json")
    assert json.loads(out) == {"rank": 8, "group": "Z2^8"}


def test_usage_errors(capsys):
    assert run(capsys, "info", "--preset", "Q7")[0] == USAGE
    assert run(capsys, "info")[0] == USAGE
    assert run(capsys, "info", "--preset", "A2", "--file", "x.json")[0] == USAGE
    assert run(capsys, "info", "--file", "/nonexistent.json")[0] == USAGE
    assert run(capsys, "lcs-z2z2", "--n", "0")[0] == USAGE
    assert run(capsys, "no-such-command")[0] == USAGE


def test_file_input(capsys, tmp_path):
    f = tmp_path / "a3.json"
    f.write_text(json.dumps({"generators": ["r", "s", "t"], "bonds": [{"a": "r", "b": "s", "m": 3}, {"a": "s", "b": "t", "m": 3}]}))
    code, out, _ = run(capsys, "abelianization", "--file", str(f))
    assert code == OK and out.strip() == "Z2^3"
    bad = tmp_path / "bad.json"
    bad.write_text('{"generators": ["a", "a"]}')
    assert run(capsys, "info", "--file", str(bad))[0] == USAGE


def test_info_and_enum(capsys):
    code, out, _ = run(capsys, "info", "--preset", "F4", "--format", "json")
    data = json.loads(out)
    assert code == OK and data["finite"] and data["components"][0]["type"] == "F4"
    code, out, _ = run(capsys, "enum-f", "--preset", "A3", "--format", "json")
    assert code == OK and len(json.loads(out)["F"]) == 6


def test_verify_section(capsys):
    code, out, _ = run(capsys, "verify-section", "--preset", "B3", "--section", "catalog")
    assert code == OK and out.startswith("cross: true")
    code, out, _ = run(capsys, "verify-section", "--preset", "D5", "--section", "catalog")
    assert code == FALSE and "cross: false" in out
    code, out, _ = run(capsys, "verify-section", "--preset", "D5", "--section", "catalog", "--kind", "transversal")
    assert code == OK
    code, out, _ = run(capsys, "verify-section", "--preset", "H3", "--section", "catalog", "--format", "json")
    data = json.loads(out)
    assert code == FALSE and data["condition"] == "c" and data["witness"] == [["s1"], ["s3"]]
    code, out, _ = run(capsys, "verify-section", "--preset", "I2(6)", "--section", "catalog", "--verbose")
    assert code == OK and "literal reading" in out
    assert run(capsys, "verify-section", "--preset", "E6", "--section", "catalog")[0] == FALSE


def test_section_file_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "search-section", "--preset", "B3", "--kind", "cross", "--format", "json")
    assert code == OK
    f = tmp_path / "sec.json"
    f.write_text(json.dumps(json.loads(out)["section"]))
    code, out, _ = run(capsys, "verify-section", "--preset", "B3", "--section", str(f))
    assert code == OK
    assert run(capsys, "verify-section", "--preset", "B3", "--section", str(tmp_path / "missing.json"))[0] == USAGE


def test_search(capsys, monkeypatch):
    code, out, _ = run(capsys, "search-section", "--preset", "E6", "--kind", "transversal")
    assert code == FALSE and out.strip() == "NONE (exhausted)"
    code, out, _ = run(capsys, "search-section", "--preset", "A3", "--kind", "cross")
    assert code == OK and out.split() == ["{s1}", "{s1,s2}", "{s1,s2,s3}"]
    code, out, _ = run(capsys, "search-section", "--preset", "E6", "--kind", "transversal", "--budget", "2")
    assert code == BUDGET and out.startswith("INCONCLUSIVE")
    monkeypatch.setenv("CACTUSKIT_BUDGET", "2")
    assert run(capsys, "search-section", "--preset", "E6", "--kind", "transversal")[0] == BUDGET
    monkeypatch.setenv("CACTUSKIT_BUDGET", "lots")
    assert run(capsys, "search-section", "--preset", "E6", "--kind", "transversal")[0] == USAGE


def test_presentation_formats(capsys):
    code, out, _ = run(capsys, "presentation", "--preset", "A2")
    assert code == OK and out.startswith("generators (3): ")
    code, out, _ = run(capsys, "presentation", "--preset", "A2", "--format", "gap")
    assert "F := FreeGroup(3);" in out and out.rstrip().endswith("G := F / rels;")
    code, out, _ = run(capsys, "presentation", "--preset", "A2", "--format", "json")
    assert len(json.loads(out)["generators"]) == 3


def test_minimal_presentation(capsys):
    code, out, _ = run(capsys, "minimal-presentation", "--preset", "I2(5)", "--section", "catalog")
    assert code == OK and out.startswith("generators (2): ")
    code, out, _ = run(capsys, "minimal-presentation", "--preset", "B3", "--section", "catalog", "--log")
    assert code == OK and out.count("== stage") == 5
    code, out, _ = run(capsys, "minimal-presentation", "--preset", "D5", "--section", "catalog", "--format", "gap")
    assert code == OK and "FreeGroup(7)" in out
    assert run(capsys, "minimal-presentation", "--preset", "H3", "--section", "catalog")[0] == FALSE


def test_minimal_presentation_json_round_trip(capsys):
    from cactuskit.coxeter import preset
    from cactuskit.render import presentation_from_json, presentation_json

    code, out, _ = run(capsys, "minimal-presentation", "--preset", "B3", "--section", "catalog", "--format", "json")
    data = json.loads(out)
    m = preset("B3")
    p = presentation_from_json(m, data)
    assert presentation_json(m, p)["relations"] == data["relations"]


def test_quotient_and_lcs(capsys):
    code, out, _ = run(capsys, "quotient-z2z2", "--preset", "A3")
    assert code == OK and "splitting: ok" in out
    code, out, _ = run(capsys, "quotient-z2z2", "--preset", "A1")
    assert code == FALSE and "no such quotient" in out
    code, out, _ = run(capsys, "lcs-z2z2", "--n", "3")
    assert code == OK and out.startswith("Gamma_3 = <(uv)^4>")


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--preset", "H3")
    assert code == OK and out.startswith("omega table: 6/6 agree")


def test_emit_dot(capsys):
    code, a3, _ = run(capsys, "emit-dot", "--preset", "A3")
    assert code == OK
    assert a3 == (
        'graph coxeter {\n  node [shape=circle];\n  "s1";\n  "s2";\n  "s3";\n'
        '  "s1" -- "s2";\n  "s2" -- "s3";\n}\n'
    )
    _, again, _ = run(capsys, "emit-dot", "--preset", "A3")
    assert again == a3
    _, f4, _ = run(capsys, "emit-dot", "--preset", "F4")
    assert '"s2" -- "s3" [label="4"];' in f4
    _, b3, _ = run(capsys, "emit-dot", "--preset", "B3", "--section", "catalog")
    assert b3.count("subgraph cluster_") == 5
