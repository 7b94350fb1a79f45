"""End-to-end runs of the command-line interface."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from biratkit.cli import main

from test_script import CREMONA

CUSP = """\
field 70001
ring P1 = [s, t]
map c : P1 -> P1 = [s^3, t^3]
ring P2 = [y0, y1, y2]
map k : P1 -> P2 = [s^3, s^2*t, t^3]
"""


def run(tmp_path, capsys, text, *flags):
    path = tmp_path / "session.brt"
    path.write_text(text)
    code = main(["run", str(path), *flags])
    out, err = capsys.readouterr()
    return code, out, err


def test_cremona_session(tmp_path, capsys):
    text = CREMONA + "compute birational s\ncompute inverse s\ncompute degrees s_inv\ncompute image s\n"
    code, out, _ = run(tmp_path, capsys, text)
    assert code == 0
    assert out.splitlines() == [
        "degrees: [1, 2, 1]",
        "segre: + 3*H^2",
        "birational: true",
        "inverse: [x1*x2, x0*x2, x0*x1]",
        "degrees: [1, 2, 1]",
        "image: ideal (0)",
    ]


def test_json_output(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, CREMONA, "--json", "--seed", "7")
    assert code == 0
    first, second = (json.loads(line) for line in out.splitlines())
    assert list(first) == ["schema", "command", "args", "mode", "seed", "result"]
    assert first == {"schema": 1, "command": "degrees", "args": ["s"], "mode": "probabilistic",
                     "seed": 7, "result": [1, 2, 1]}
    assert second["result"] == {"ambient_dim": 2, "coeffs": ["3", "0", "0"]}


def test_deterministic_flag(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, CREMONA, "--deterministic", "--json")
    assert code == 0
    assert all(json.loads(line)["mode"] == "deterministic" for line in out.splitlines())


def test_output_is_reproducible(tmp_path, capsys):
    text = CREMONA + "compute approxinverse s\n"
    runs = [run(tmp_path, capsys, text, "--seed", "3")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_trials(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, CREMONA, "--trials", "5")
    assert code == 0
    assert out.splitlines()[0] == "degrees (5 trials): [1, 2, 1] x 5"
    code, out, _ = run(tmp_path, capsys, CREMONA, "--trials", "3", "--json")
    rec = json.loads(out.splitlines()[0])
    assert rec["trials"] == 3 and rec["result"] == [{"value": [1, 2, 1], "count": 3}]


def test_timings_go_to_stderr(tmp_path, capsys):
    code, out, err = run(tmp_path, capsys, CREMONA, "--timings")
    assert code == 0
    assert "s\n" in err and "degrees s:" in err
    assert " s\n" not in out


def test_check_subcommand(tmp_path, capsys):
    path = tmp_path / "session.brt"
    path.write_text(CREMONA)
    assert main(["check", str(path)]) == 0
    assert capsys.readouterr().out == "ok: 6 statements, 2 commands\n"


def test_parse_error_exit_code(tmp_path, capsys):
    code, out, err = run(tmp_path, capsys, "field 70001\nfield 31\n")
    assert code == 2
    assert "line 2, column 1" in err and out == ""


def test_math_error_exit_code(tmp_path, capsys):
    code, out, err = run(tmp_path, capsys, CUSP + "compute degrees c\ncompute inverse c\n")
    assert code == 3
    assert out == "degrees: [1, 3]\n"
    assert "NoLinearSyzygies" in err and ":7:" in err


def test_inconclusive_exit_code(tmp_path, capsys):
    # the image of k is a cuspidal cubic: no kernel element below degree 3
    code, out, err = run(tmp_path, capsys, CUSP + "compute dominant k\n", "--deterministic", "--max-degree", "2")
    assert code == 4 and "Inconclusive" in err
    code, out, _ = run(tmp_path, capsys, CUSP + "compute dominant k\ncompute kernel k 3\n", "--deterministic")
    assert code == 0
    assert out.splitlines() == ["dominant: false", "kernel: [70000*y1^3 + y0^2*y2]"]


def test_missing_file(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.brt")]) == 1


def test_segre_in_and_preimage(tmp_path, capsys):
    text = """field 70001
ring P3 = [a, b, c, d]
ideal Y in P3 = a*d - b*c
ideal C in P3 = a + b + c + d
ideal pt in P3 = b, c, d
map pr : P3 -> P3 = [a, b, c, d]
compute segre C in Y
compute preimage pr pt
compute dims Y
"""
    code, out, _ = run(tmp_path, capsys, text, "--deterministic")
    assert code == 0
    assert out.splitlines() == ["segre: - 2*H^3 + 2*H^2", "preimage: ideal (b, c, d)", "dims: [2, 2]"]


def test_module_entry_point(tmp_path):
    path = tmp_path / "session.brt"
    path.write_text(CREMONA)
    proc = subprocess.run([sys.executable, "-m", "biratkit", "run", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("degrees: [1, 2, 1]\n")


@pytest.mark.parametrize("script", sorted((Path(__file__).parent.parent / "sessions").glob("*.brt")), ids=lambda p: p.name)
def test_shipped_sessions_parse(script, capsys):
    assert main(["check", str(script)]) == 0
