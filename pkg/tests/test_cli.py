import json

import pytest

from ifsim import corpus, validate_bia
from ifsim.cli import main


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        return str(path)
    return write


def _corpus_path(name):
    return str(corpus.path(name))


def test_validate_ok(capsys):
    assert main(["validate", _corpus_path("IntA")]) == 0
    assert "OK (automaton)" in capsys.readouterr().out
    assert main(["validate", _corpus_path("model_unit_inputs")]) == 0
    assert "error model" in capsys.readouterr().out


def test_validate_invalid(files, capsys):
    bad = files("bad", {"name": "x", "inputs": ["a"], "outputs": ["a"],
                        "states": ["s"], "initial": "s", "transitions": []})
    assert main(["validate", bad]) == 2
    assert "INVALID" in capsys.readouterr().err


def test_validate_unrecognized(files, capsys):
    assert main(["validate", files("odd", {"foo": 1})]) == 2


def test_validate_missing_file(capsys):
    assert main(["validate", "/nonexistent.json"]) == 1


def test_usage_errors(capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["distance", _corpus_path("IntA"), _corpus_path("Int1"),
                 "--objective", "disc"]) == 1  # missing --lambda


def test_refines_true_and_false(capsys):
    assert main(["refines", _corpus_path("IntB"), _corpus_path("Int2")]) == 0
    assert "refines: true" in capsys.readouterr().out
    assert main(["refines", _corpus_path("Int2"), _corpus_path("IntB")]) == 0
    out = capsys.readouterr().out
    assert "refines: false" in out and "reason:" in out


def test_refines_precondition_is_a_verdict(capsys):
    # mismatched signatures: reported as false, exit 0
    assert main(["refines", _corpus_path("IntA"), _corpus_path("Send")]) == 0
    out = capsys.readouterr().out
    assert "refines: false" in out and "precondition" in out


def test_distance_json_deterministic(capsys):
    argv = ["distance", _corpus_path("IntA"), _corpus_path("Int2"),
            "--output-errors", _corpus_path("model_unit_outputs"),
            "--input-errors", _corpus_path("model_unit_inputs"), "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    doc = json.loads(first)
    assert doc["value"] == {"num": "1", "den": "2"}
    assert doc["decimal"] == "0.5"
    assert doc["refines"] is False
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_distance_identity_warning(capsys):
    assert main(["distance", _corpus_path("IntB"), _corpus_path("Int1")]) == 0
    captured = capsys.readouterr()
    assert captured.err.count("identity model") == 2
    assert "distance: 0/1" in captured.out


def test_distance_precondition_exit(capsys):
    assert main(["distance", _corpus_path("IntA"), _corpus_path("Send")]) == 4
    assert "alphabet precondition" in capsys.readouterr().err


def test_distance_disc(capsys):
    assert main(["distance", _corpus_path("IntB"), _corpus_path("Int1"),
                 "--output-errors", _corpus_path("model_unit_outputs"),
                 "--input-errors", _corpus_path("model_unit_inputs"),
                 "--objective", "disc", "--lambda", "1/2"]) == 0
    assert "lambda=1/2" in capsys.readouterr().out


def test_distance_dot(tmp_path, capsys):
    dot = tmp_path / "game.dot"
    assert main(["distance", _corpus_path("IntA"), _corpus_path("Int1"),
                 "--output-errors", _corpus_path("model_unit_outputs"),
                 "--input-errors", _corpus_path("model_unit_inputs"),
                 "--dot", str(dot)]) == 0
    text = dot.read_text()
    assert text.startswith("digraph") and "->" in text


def test_compose_roundtrip(tmp_path, capsys):
    out = tmp_path / "composed.json"
    assert main(["compose", _corpus_path("Send"), _corpus_path("Medium"),
                 "-o", str(out)]) == 0
    validate_bia(json.loads(out.read_text()))


def test_compose_report(capsys):
    assert main(["compose", _corpus_path("SendOnce"),
                 _corpus_path("MediumPerfect"), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert "composed" in doc and "report" in doc


def test_compose_not_composable(capsys):
    assert main(["compose", _corpus_path("IntA"), _corpus_path("Int1")]) == 3
    assert "not composable" in capsys.readouterr().err


def test_compose_incompatible(files, capsys):
    left = files("left", {
        "name": "L", "inputs": [], "outputs": ["boot"], "states": ["l0"],
        "initial": "l0",
        "transitions": [{"from": "l0", "action": "boot", "to": "l0"}]})
    right = files("right", {
        "name": "R", "inputs": ["boot"], "outputs": [], "states": ["r0"],
        "initial": "r0", "transitions": []})
    assert main(["compose", left, right]) == 3
    assert "incompatible" in capsys.readouterr().err


def test_abstract(files, capsys):
    part = files("part", {"classes": {"q": ["q0", "qa", "qb"]}})
    assert main(["abstract", _corpus_path("IntA"), part,
                 "--mode", "forall-exists"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["states"] == ["q"]


def test_abstract_bad_partition(files, capsys):
    part = files("part", {"classes": {"q": ["q0"]}})  # not total
    assert main(["abstract", _corpus_path("IntA"), part,
                 "--mode", "exists-forall"]) == 2


def test_game_command(tmp_path, capsys):
    assert main(["game", _corpus_path("IntB"), _corpus_path("Int1"),
                 "--boolean"]) == 0
    assert "game:" in capsys.readouterr().out
    dot = tmp_path / "g.dot"
    assert main(["game", _corpus_path("IntA"), _corpus_path("Int2"),
                 "--output-errors", _corpus_path("model_unit_outputs"),
                 "--input-errors", _corpus_path("model_unit_inputs"),
                 "--json", "--dot", str(dot)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["states"] and doc["edges"]
    assert dot.exists()
