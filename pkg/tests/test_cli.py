import json

import pytest

from gradcontract.cli import main
from gradcontract.liealg import abelian


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_ropa(capsys):
    code, out = run(capsys, "verify", "--system", "ropa")
    assert code == 0
    assert "ropa: 74/89 satisfy" in out


def test_orbits_triplets(capsys):
    code, out = run(capsys, "orbits", "--domain", "triplets", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert "11" in json.dumps(data) or len(data) == 11


def test_contract_writes_files(tmp_path, capsys):
    code, _ = run(capsys, "contract", "--matrix", "e17_8", "--matrix", "e21_1", "--out-dir", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["e17_8.json", "e21_1.json"]


def test_identify_abelian_file(tmp_path, capsys):
    path = tmp_path / "ab.json"
    path.write_text(abelian(8).dumps())
    code, out = run(capsys, "identify", "--algebra", str(path))
    assert code == 0
    assert "8A1" in out


def test_invariants_file(tmp_path, capsys):
    path = tmp_path / "ab.json"
    path.write_text(abelian(3).dumps())
    code, out = run(capsys, "invariants", "--algebra", str(path), "--alpha", "2", "--format", "json")
    assert code == 0
    json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--params", "zz=1"],
        ["contract", "--matrix", "no_such_matrix"],
        ["identify", "--algebra", "/nonexistent.json"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_bad_arguments_exit_2(capsys):
    assert main(["orbits", "--domain", "quads"]) == 2
    assert main([]) == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, "classify", "--format", "csv")
    second = run(capsys, "classify", "--format", "csv")
    assert first == second
