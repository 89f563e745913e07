import json
import subprocess
import sys
from fractions import Fraction

from hbarperfect.cli import main, plain


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def result(argv, capsys, **kw):
    code, out, err = run(argv, capsys, **kw)
    assert code == 0, err
    doc = json.loads(out)
    assert set(doc) == {"tool_version", "config", "input_digest", "result"}
    return doc["result"]


def test_qubit_budget(capsys):
    assert result(["qubit-budget", "--n", "4", "--c", "1", "--eps", "1"], capsys) == {"l": 1, "m": 2, "L": 4}


def test_decide_antic7(capsys):
    res = result(["decide-hbar", "antiC7"], capsys)
    assert res["status"] == "Imperfect"


def test_decide_graph6_literal(capsys):
    res = result(["decide-hbar", "D?{"], capsys)
    assert res["status"] == "Perfect"


def test_census_file(capsys, tmp_path):
    from pathlib import Path

    src = Path(__file__).parent / "data" / "connected6.g6"
    res = result(["census", str(src)], capsys)
    assert res["rows"][0]["hbar_perfect"] == 112
    assert res["imperfect"] == []


def test_census_pretty(capsys):
    from pathlib import Path

    src = Path(__file__).parent / "data" / "connected5.g6"
    code, out, _ = run(["census", str(src), "--pretty"], capsys)
    assert code == 0 and "hbar_perfect" in out.splitlines()[0]


def test_stdin_graph(capsys, monkeypatch):
    res = result(["alpha", "-"], capsys, stdin="C5\n", monkeypatch=monkeypatch)
    assert res["alpha"] == 2


def test_alpha_weights(capsys, tmp_path):
    w = tmp_path / "w.json"
    w.write_text('[1, "1/2", 3, 1, 1]')
    res = result(["alpha", "C5", "--weights", str(w)], capsys)
    assert res["alpha"] == 4


def test_error_exit(capsys):
    code, out, err = run(["alpha", "C5", "--weights", "/nonexistent.json"], capsys)
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert set(doc) == {"code", "message", "context"}
    code, _, err = run(["qubit-budget", "--n", "1", "--c", "2", "--eps", "1"], capsys)
    assert code == 2 and json.loads(err)["code"] == "DomainError"
    code, _, err = run(["realize", "not-a-graph-!!"], capsys)
    assert code == 2


def test_deterministic_output(capsys):
    argv = ["beta", "C5", "--basis", "B", "--m", "4"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second
    res = json.loads(first)["result"]
    assert res["alpha"] == 2 and abs(res["upper"] - 2) < 1e-5


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("HBAR_SEED", "7")
    code, out, _ = run(["qubit-budget", "--n", "4", "--c", "1", "--eps", "1"], capsys)
    # the default is read when the parser is built
    assert json.loads(out)["config"]["seed"] == 7


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(["facets", "K3", "-o", str(path)], capsys)
    assert code == 0 and out == ""
    res = json.loads(path.read_text())["result"]
    assert res["vertices"] == 4 and len(res["facets"]) == 4


def test_check_commands(capsys):
    assert result(["check-perfect", "C5"], capsys) == {"perfect": False}
    res = result(["check-hperfect", "C5"], capsys)
    assert res["h_perfect"] and res["classes"]["odd_hole(2)"] == 1
    res = result(["realize", "K3"], capsys)
    assert res["length"] == 1 and len(res["strings"]) == 3


def test_witness_and_ghz(capsys, tmp_path):
    from hbarperfect.applications.states import bell_state, dm

    rho = dm(bell_state(1))
    state = tmp_path / "rho.json"
    state.write_text(json.dumps({"re": rho.real.tolist(), "im": rho.imag.tolist()}))
    s = tmp_path / "s.txt"
    s.write_text("X Y Z\n")
    res = result(["witness", "--state", str(state), "--strings-a", str(s), "--strings-b", str(s)], capsys)
    assert res["verdict"] == "entangled" and res["value"] == 3
    e = tmp_path / "e.json"
    e.write_text(json.dumps([1] * 7))
    res = result(["ghz-criterion", "--expectations", str(e)], capsys)
    assert res["biseparable_bound"] == 3 and res["evaluation"]["value"] == 7


def test_uncertainty_and_delta(capsys, tmp_path):
    caps = tmp_path / "c.json"
    caps.write_text('[null, "1/2", "1/2"]')
    res = result(["uncertainty", "K3", "--target", "0", "--caps", str(caps)], capsys)
    assert res["method"] == "lp" and res["min_variance"] == 1
    res = result(["uncertainty", "K3", "--target", "0", "--caps", str(caps), "--sdp"], capsys)
    assert abs(res["min_variance"] - 1) < 1e-6
    res = result(["delta", "C5"], capsys)
    assert res["lower"] == "2/5"


def test_ground_bound_cli(capsys, tmp_path):
    a = tmp_path / "a.json"
    a.write_text("[1, 1, 1, 1, 1]")
    s = tmp_path / "s.txt"
    s.write_text("XI ZI IY XX ZZ")
    res = result(["ground-bound", "--coeffs", str(a), "--strings", str(s)], capsys)
    assert abs(res["gap"] - 0.084594) < 1e-4


def test_plain_formatting():
    assert plain(Fraction(3, 7)) == "3/7"
    assert plain(Fraction(4, 2)) == 2
    assert plain(1 / 3) == 0.333333333


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "hbarperfect.cli", "qubit-budget", "--n", "4", "--c", "1",
                          "--eps", "1"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["L"] == 4
