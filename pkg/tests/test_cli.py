import json
import subprocess
import sys

import pytest

from modpoly.classical import classical_phi
from modpoly.cli import EXIT_PRECONDITION, EXIT_TRIPWIRE, EXIT_USAGE, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_phi_mod_p_text(capsys):
    code, out, _ = run(["phi-mod-p", "--ell", "3", "--p", "41", "--seed", "7"], capsys)
    assert code == 0
    assert out == classical_phi(3).reduce(41).to_text()
    lines = [tuple(map(int, ln.split()[:2])) for ln in out.splitlines()]
    assert lines == sorted(lines, reverse=True)


def test_phi_mod_p_json_mirrors_text(capsys):
    _, text, _ = run(["phi-mod-p", "--ell", "3", "--p", "41"], capsys)
    _, js, _ = run(["phi-mod-p", "--ell", "3", "--p", "41", "--format", "json"], capsys)
    doc = json.loads(js)
    assert doc["modulus"] == 41 and doc["ell"] == 3
    assert [f"{k} {m} {c}" for k, m, c in doc["terms"]] == text.splitlines()


def test_precondition_exit(capsys):
    code, _, err = run(["phi-mod-p", "--ell", "5", "--p", "41"], capsys)
    assert code == EXIT_PRECONDITION
    assert "S(p) ≥ ℓ+1 violated" in err


@pytest.mark.parametrize("argv", [["phi-mod-p", "--ell", "3", "--p", "3"], ["ssj", "--p", "9"], ["hilbert", "--d", "-6"]])
def test_other_preconditions(argv, capsys):
    assert run(argv, capsys)[0] == EXIT_PRECONDITION


@pytest.mark.parametrize("argv", [[], ["nope"], ["phi-mod-p", "--ell", "3"], ["phi-mod-p", "--ell", "x", "--p", "41"]])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == EXIT_USAGE


def test_tripwire_exit(monkeypatch, capsys):
    import modpoly.cli as cli
    from modpoly.errors import DescentError

    def boom(*a, **k):
        raise DescentError("descent failure: coefficient not in F_p")

    monkeypatch.setattr(cli, "modular_poly_mod_p", boom)
    assert run(["phi-mod-p", "--ell", "3", "--p", "41"], capsys)[0] == EXIT_TRIPWIRE


def test_small_commands(capsys):
    assert run(["ssj", "--p", "13"], capsys)[1] == "5,0\n"
    assert run(["hilbert", "--d", "-8"], capsys)[1] == "-8000\n1\n"
    out = run(["oracle-phi", "--ell", "2"], capsys)[1]
    assert "2 2 -1\n" in out and "0 0 -157464000000000\n" in out
    out = run(["local", "--p", "13", "--ell", "3", "--j", "5"], capsys)[1]
    assert out.count("r 5,0") == 4
    out = run(["random-isogeny", "--p", "13", "--ell", "3", "--j", "5,0"], capsys)[1]
    assert out == "5,0\n"


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("MODPOLY_SEED", "12")
    a = run(["random-isogeny", "--p", "97", "--ell", "3", "--j", "45,28"], capsys)[1]
    b = run(["random-isogeny", "--p", "97", "--ell", "3", "--j", "45,28", "--seed", "12"], capsys)[1]
    assert a == b


def test_appendix_growth_outputs(tmp_path, capsys):
    csv_path = tmp_path / "growth.csv"
    code, out, _ = run(["appendix-growth", "--n", "40", "--k", "3", "--csv", str(csv_path)], capsys)
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "n,k,logcoeff,upper,ratio"
    assert len(lines) == 1 + 40 * 3
    assert (tmp_path / "growth.png").stat().st_size > 0
    assert "figure" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "phi.txt"
    assert run(["oracle-phi", "--ell", "3", "-o", str(target)], capsys)[0] == 0
    assert target.read_text() == classical_phi(3).to_text()


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "modpoly.cli", "hilbert", "--d", "-4"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "-1728\n1\n"
