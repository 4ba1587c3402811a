import csv
import json

import pytest

from simplebraces.cli import main
from simplebraces.ybe import SolutionMap


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_minimal(capsys):
    code, out, _ = run(capsys, "build", "--primes", "2,3", "--exponents", "1,1", "--multiplicities", "1,1", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["order"] == 864
    assert data["signature"] == [[2, 1, 5], [3, 1, 3]]
    assert [b["C_order"] for b in data["blocks"]] == [3, 2]
    assert [b["l"] for b in data["blocks"]] == [2, 1]


@pytest.mark.parametrize("argv,message", [
    (["--primes", "2", "--exponents", "1", "--multiplicities", "1"], "m > 1"),
    (["--primes", "3,3"], "distinct"),
    (["--primes", "2,x"], ""),
])
def test_build_rejects_bad_params(capsys, argv, message):
    code, _, err = run(capsys, "build", *argv)
    assert code == 2
    assert message in err


def test_build_from_params_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"m": 2, "primes": [2, 3], "exponents": [1, 1], "multiplicities": [2, 1]}))
    code, out, _ = run(capsys, "build", "--params-file", str(path), "--json")
    assert code == 0 and json.loads(out)["order"] == 13824


def test_build_above_guard_is_symbolic(capsys):
    code, out, _ = run(capsys, "build", "--primes", "2,5", "--exponents", "3,1", "--json")
    data = json.loads(out)
    assert code == 0 and data["within_guard"] is False and data["order"] == 262144000000000


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--group", "8,2,5", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["params"]["primes"] == [2, 5] and data["params"]["exponents"] == [3, 1]
    assert data["assignment"][1]["multiplier"] == 4
    assert data["verification"]["status"] == "pass"
    code, out, _ = run(capsys, "embed", "--group", "5", "--json")
    assert json.loads(out)["params"]["primes"] == [2, 5]
    code, _, err = run(capsys, "embed", "--group", "6")
    assert code == 2 and "prime power" in err


def test_verify_control_z4(capsys):
    code, out, _ = run(capsys, "verify", "--control", "trivial:4", "--json")
    data = json.loads(out)
    assert code == 1
    assert data["facts"]["ideal_certificate"]["elements"] == [0, 2]
    statuses = {c["name"]: c["status"] for c in data["checks"]}
    assert statuses["simplicity"] == "fail"
    assert statuses["certificate is ideal"] == "pass"


def test_verify_prime_control_is_deterministic(capsys):
    first = run(capsys, "verify", "--control", "trivial:7", "--level", "quick", "--seed", "5", "--json")
    second = run(capsys, "verify", "--control", "trivial:7", "--level", "quick", "--seed", "5", "--json")
    assert first[0] == 0
    strip = lambda text: [{k: v for k, v in c.items() if k != "seconds"} for c in json.loads(text)["checks"]]  # noqa: E731
    assert strip(first[1]) == strip(second[1])
    assert json.loads(first[1])["mode"] == {"level": "quick", "seed": 5}


def test_verify_size_guard(capsys):
    code, _, err = run(capsys, "verify", "--primes", "2,3", "--multiplicities", "2,1", "--max-order", "1000")
    assert code == 3 and "guard" in err


def test_export(capsys, tmp_path):
    out = tmp_path / "flip.json"
    code, _, _ = run(capsys, "export-ybe", "--control", "trivial:5", "--out", str(out))
    assert code == 0
    assert SolutionMap.load(out).is_flip()
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for path in (first, second):
        assert run(capsys, "export-ybe", "--out", str(path))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    data = json.loads(first.read_text())
    assert data["size"] == 864 and data["provenance"]["checks"] == {"involutive": "pass", "non-degenerate": "pass"}
    code, _, _ = run(capsys, "export-ybe", "--primes", "2,3", "--multiplicities", "2,1", "--out", str(tmp_path / "x"))
    assert code == 3


def test_report(capsys, tmp_path):
    code, _, _ = run(capsys, "report", "--control", "product:trivial:3*trivial:2", "--out", str(tmp_path),
                     "--traces", "3")
    assert code == 1  # Z/3 x Z/2 is not simple
    rows = list(csv.DictReader((tmp_path / "checks.csv").open()))
    assert {"check", "status", "checked", "seed", "seconds", "witness"} <= set(rows[0])
    for name in ("report.json", "check_times.png", "closure_growth.png", "additive_orders.png"):
        assert (tmp_path / name).stat().st_size > 0


def test_missing_subcommand_is_input_error(capsys):
    assert main([]) == 2
