import json

from pinbrauer.cli.main import main
from pinbrauer.core.diagrams import count_gb


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_dims(capsys):
    code, out = run(capsys, "dims", "--k", "2")
    assert code == 0
    data = json.loads(out)
    assert data["dim_cpk"] == 10
    assert data["gb_count"] == 10
    assert data["sum_of_squares"] == 10
    assert data["walks"] == [
        {"partition": [], "count": 2},
        {"partition": [1], "count": 2},
        {"partition": [1, 1], "count": 1},
        {"partition": [2], "count": 1},
    ]


def test_dims_as_table(capsys):
    code, out = run(capsys, "dims", "--k", "1", "--table")
    assert code == 0
    assert out.splitlines()[0].split() == ["partition", "count"]


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--k", "2", "--l", "1")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == count_gb(2, 1) == len(data["diagrams"])
    assert {"k", "l", "edges", "name"} <= set(data["diagrams"][0])


def test_multiply_aliases(capsys):
    code, out = run(capsys, "multiply", "--lhs", "y5", "--rhs", "y8")
    assert code == 0
    data = json.loads(out)
    assert data["family"] == "odd"
    assert {t["alias"] for t in data["product"]["terms"]} == {"y3", "y8"}


def test_realize_identity(capsys):
    diagram = '{"k": 1, "l": 1, "edges": [["U1", "L1"]]}'
    code, out = run(capsys, "realize", "--n", "1", "--N", "3", "--k", "1", "--lhs", diagram)
    assert code == 0
    matrix = json.loads(out)["matrix"]
    assert matrix["shape"] == [6, 6]
    assert matrix["nnz"] == 6


def test_decompose(capsys):
    left = '{"kind": "DELTA", "parts": [], "n": 2, "N": 5}'
    right = '{"kind": "SO", "parts": [1], "n": 2, "N": 5}'
    code, out = run(capsys, "decompose", "--left", left, "--right", right)
    assert code == 0
    data = json.loads(out)
    assert data["agrees_with_characters"] is True
    assert len(data["rule"]) == 2
    assert data["oracle"] == data["rule"]


def test_t0(capsys):
    code, out = run(capsys, "t0", "--n", "1", "--N", "3", "--k", "1")
    assert code == 0
    assert json.loads(out)["dimension"] == 4


def test_verify(capsys):
    code, out = run(capsys, "verify", "--suite", "walks")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert "failure" not in data


def test_invalid_configuration(capsys):
    code, out = run(capsys, "dims", "--n", "2", "--N", "7")
    assert code == 2
    assert json.loads(out)["error"] == "invalid configuration"


def test_missing_operand(capsys):
    code, out = run(capsys, "multiply", "--rhs", "y1")
    assert code == 1
    assert json.loads(out)["error"] == "PinBrauerError"


def test_unknown_alias(capsys):
    code, out = run(capsys, "multiply", "--lhs", "y42", "--rhs", "y1")
    assert code == 1
    assert json.loads(out)["error"] == "InvalidInputError"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "dims.json"
    code, out = run(capsys, "dims", "--k", "1", "-o", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["dim_cpk"] == 2


def test_relative_output_goes_to_out_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PINBRAUER_OUT_DIR", str(tmp_path))
    code, _ = run(capsys, "verify", "--suite", "walks", "--n", "1", "--N", "2", "-o", "walks.json")
    assert code == 0
    assert json.loads((tmp_path / "walks.json").read_text())["suite"] == "walks"
