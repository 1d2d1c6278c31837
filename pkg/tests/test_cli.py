import json

import pytest

from ediv.cli import ScenarioConfig, render, run


def run_capture(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sq_table_matches_lucas(capsys):
    code, out, _ = run_capture(capsys, "sq", "--space", "nerve_z2:8", "--max-degree", "8")
    assert code == 0
    rep = json.loads(out)
    assert rep["mismatches"] == 0
    assert len(rep["table"]) == 45


def test_loop_prints_suspended_attachment(capsys):
    code, out, _ = run_capture(capsys, "loop", "--model", "em:3")
    rep = json.loads(out)
    assert code == 0
    assert rep["presentation"]["h"] == {"b2": "e3 + 12|21|12(e3,e3)"}
    assert rep["suspension"] == 1


def test_outputs_are_byte_identical(capsys):
    argv = ["divide", "--model", "em:2", "--space", "sphere:1", "--format", "csv"]
    _, a, _ = run_capture(capsys, *argv)
    _, b, _ = run_capture(capsys, *argv)
    assert a == b and a.startswith("generator,degree,internal_d,h")


def test_verify_subset(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = run(["verify", "--item", "02-theta-formulas", "--item", "09-loop-model", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert [r["item"] for r in rep] == ["02-theta-formulas", "09-loop-model"]
    assert all(set(r) >= {"item", "status", "details"} for r in rep)


def test_verify_parallel_matches_serial(capsys):
    argv = ["verify", "--item", "05-steenrod-lucas", "--item", "02-theta-formulas"]
    _, serial, _ = run_capture(capsys, *argv)
    _, parallel, _ = run_capture(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_mapping_space_csv(capsys):
    code, out, _ = run_capture(capsys, "mapping-space", "--space", "sphere:1", "--n", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[:4] == ["degree,dim", "0,1", "1,0", "2,1"]


def test_adem_single_monomial(capsys):
    _, out, _ = run_capture(capsys, "adem", "--monomial", "Sq2 Sq2")
    assert json.loads(out)["rows"][0]["normal_form"] == "Sq3 Sq1"


@pytest.mark.parametrize("argv", [["sq", "--space", "bogus:1"], ["loop", "--model", "nope"],
                                  ["mapping-space", "--max-degree", "0"], ["loop", "--model", "em:1"]])
def test_bad_config_exits_nonzero(capsys, argv):
    code, out, err = run_capture(capsys, *argv)
    assert code == 2 and err.startswith("error:") and out == ""


def test_capability_error_is_surfaced(capsys, tmp_path):
    spec = tmp_path / "model.json"
    spec.write_text(json.dumps({"generators": [{"name": "a", "degree": 1}, {"name": "b", "degree": 2}],
                                "h": {"b": "123(a,a,a)"}}))
    code, _, err = run_capture(capsys, "divide", "--model", str(spec), "--space", "sphere:1")
    assert code == 3
    assert "arity <= 2" in err


def test_render_csv_union_of_keys():
    text = render({}, [{"a": 1}, {"a": 2, "b": 3}], "csv")
    assert text == "a,b\n1,\n2,3\n"


def test_config_validation():
    with pytest.raises(ValueError):
        ScenarioConfig("verify", jobs=0).validate()
