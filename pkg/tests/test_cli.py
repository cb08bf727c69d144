import json
import os
import shutil
import subprocess
import sys

import jsonschema
import pytest

from laurel import cli, words
from laurel.algebra import Poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    env = json.loads(out)
    jsonschema.validate(env, cli.schema())
    assert env["exit_code"] == code
    return code, env


def test_expand_golden(capsys):
    code, env = run_json(capsys, "expand", "frobenius(3)", "--terms", "5")
    assert code == 0 and env["status"] == "ok"
    assert env["result"]["letters"] == ["0", "X", "X^3", "X^9", "X^27"]
    assert env["result"]["halt"] == "requested-count-reached"


def test_expand_bad_series(capsys):
    code, env = run_json(capsys, "expand", "baum-sweet", "--terms", "300")
    assert code == 0
    assert len(env["result"]["letters"]) == 300
    assert env["result"]["witness"]["max_quotient_degree"] <= 2


def test_cap_reached(capsys):
    code, env = run_json(capsys, "--precision-start", "64", "--precision-cap", "128",
                         "expand", "baum-sweet", "--terms", "300")
    assert code == 3 and env["status"] == "cap-reached"
    assert 1 < len(env["result"]["letters"]) < 300
    assert env["result"]["precision"] == 128


@pytest.mark.parametrize("argv", [
    ["expand", "no-such-series"],
    ["certify", "thm42"],
    ["certify", "thm3"],
    ["certify", "thm4", "--instance", "baum-sweet"],
    ["scan", "--pair", "sideways"],
    ["scan", "--pair", "random"],
    ["construct", "--phi-gauge", "cosine"],
    ["reproduce", "13"],
    ["--precision-start", "512", "--precision-cap", "256", "expand", "frobenius(2)"],
])
def test_unknown_ids_exit_2(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    if out:  # a malformed config is rejected before any envelope exists
        assert json.loads(out)["status"] == "unknown-id"


def test_refutation_exit_4(capsys, monkeypatch):
    real = words.thm5_blocks

    def corrupted(n):
        U, V = real(n)
        return words.Word(U.letters[:-1] + (Poly([1, 2], 3),), 3), V

    monkeypatch.setattr(words, "thm5_blocks", corrupted)
    code, env = run_json(capsys, "certify", "thm5", "--n-max", "2")
    assert code == 4 and env["status"] == "refuted"
    assert env["result"]["index"] == 8
    assert "letter 8" in env["error"]


def test_certify_thm5(capsys):
    code, env = run_json(capsys, "certify", "thm5", "--n-max", "4")
    r = env["result"]
    assert code == 0 and r["satisfied"]
    assert [(i["len_u"], i["len_v"]) for i in r["instances"]] == [
        (3 ** n, 3 ** (n + 1) - 2) for n in range(2, 5)]


def test_certify_thm2_and_thm9(capsys):
    code, env = run_json(capsys, "certify", "thm2")
    assert code == 0 and env["result"]["window"] == 168
    assert all(c["product2"] < 0 for c in env["result"]["checkpoints"])
    code, env = run_json(capsys, "certify", "thm9", "--D", "4")
    assert code == 0 and env["result"]["examined"] == 3 + 9 + 27 + 81


def test_scan_random(capsys):
    code, env = run_json(capsys, "scan", "--pair", "random", "--p", "2", "--D", "5", "--seed", "7")
    s = env["result"]["scan"]
    assert code == 0 and not s["upper_bound"] and len(s["per_degree"]) == 6


def test_scan_named_pair(capsys):
    code, env = run_json(capsys, "scan", "--pair", "baum-sweet,frobenius(2)", "--D", "4")
    assert code == 0 and env["result"]["pair"]["kind"] == "pair"


def test_files(capsys, tmp_path):
    rat = tmp_path / "r.json"
    rat.write_text(json.dumps({"p": 3, "num": [1, 1], "den": [1, 0, 1]}))
    code, env = run_json(capsys, "expand", str(rat))
    assert code == 0 and env["result"]["halt"] == "input-was-rational"
    # (X^2+1)/(X+1) = (X+2) + 2/(X+1), and (X+1)/2 = 2X+2 over F_3
    assert env["result"]["letters"] == ["0", "X+2", "2*X+2"]

    word = tmp_path / "w.json"
    word.write_text(json.dumps({"p": 2, "letters": [[0], [0, 1], [1, 1], [0, 0, 1], [0, 1]]}))
    code, env = run_json(capsys, "expand", str(word), "--terms", "3")
    assert code == 0 and env["result"]["letters"] == ["0", "X", "X+1"]

    ser = tmp_path / "s.json"
    ser.write_text(json.dumps({"p": 2, "top_degree": -1, "coeffs": [1, 0, 1, 0, 0, 0], "precision": 6}))
    code, env = run_json(capsys, "expand", str(ser), "--terms", "2")
    assert code == 0 and env["result"]["letters"] == ["0", "X"]

    junk = tmp_path / "j.json"
    junk.write_text(json.dumps({"p": 2}))
    assert run(capsys, "expand", str(junk))[0] == 2


def test_tsv(capsys):
    code, out = run(capsys, "--format", "tsv", "expand", "frobenius(2)", "--terms", "3")
    rows = dict(line.split("\t") for line in out.splitlines())
    assert code == 0
    assert [rows[f"result.letters.{i}"] for i in range(3)] == ["0", "X", "X^2"]
    assert rows["status"] == "ok"


def test_flatten_is_sorted_and_total():
    rows = cli.flatten({"b": [1, {"c": None}], "a": {}, "d": "x"})
    assert rows == [("a", "{}"), ("b.0", "1"), ("b.1.c", "null"), ("d", "x")]


def test_module_entry_point():
    env = dict(os.environ, LAUREL_THREADS="2")
    r = subprocess.run([sys.executable, "-m", "laurel", "expand", "frobenius(2)", "--terms", "3"],
                       capture_output=True, env=env, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["letters"] == ["0", "X", "X^2"]


def test_console_script_installed():
    assert shutil.which("laurel") is not None
