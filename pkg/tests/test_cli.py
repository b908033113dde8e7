import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from abcat.cli import main
from abcat.io import load_schema

SPECS = Path(__file__).resolve().parent.parent / "specs"
N1, N2 = str(SPECS / "family_n1.toml"), str(SPECS / "family_n2.toml")


def run_json(capsys, *argv):
    code = main([*argv, "--json", "-"])
    out = capsys.readouterr().out
    rep = json.loads(out)
    jsonschema.validate(rep, load_schema())
    return code, rep


def test_indec_lists_eleven_for_n2(capsys):
    code, rep = run_json(capsys, N2, "indec")
    assert code == 0 and rep["result"]["count"] == 11


def test_hom_and_ext(capsys):
    code, rep = run_json(capsys, N1, "hom", "[1]_3", "[1]_1")
    assert code == 0 and rep["result"]["dim"] == 1
    code, rep = run_json(capsys, N1, "ext", "[2]_1", "[1]_1", "--degree", "2")
    assert rep["result"]["ext"] == {"1": 1, "2": 0}


def test_cotilting_and_perp(capsys):
    code, rep = run_json(capsys, N2, "cotilting", "--T", "[1]_1,[1]_6")
    assert code == 0 and rep["verdict"] == "pass" and rep["result"]["id_bound"] == 1
    code, rep = run_json(capsys, N2, "perp", "--T", "[1]_1,[1]_6")
    assert rep["result"]["perp"] == [f"[1]_{l}" for l in range(1, 7)]
    code, rep = run_json(capsys, N1, "cotilting", "--T", "[2]_1")
    assert code == 1


def test_quotient_reports_gd(capsys):
    code, rep = run_json(capsys, N1, "quotient", "--by", "[1]_1,[1]_4")
    assert code == 0 and rep["result"]["gd"] == 3
    code, rep = run_json(capsys, N2, "quotient", "--by", "[1]_1,[1]_6", "--objects",
                         "[1]_1,[1]_2,[1]_3,[1]_4,[1]_5,[1]_6")
    assert rep["result"]["gd"] == "infinite" and rep["result"]["ig"] is False
    assert rep["result"]["witness"]["period"] == [3, 5]


def test_resolve_and_cutoff(capsys):
    args = [N2, "resolve", "--functor", "injective:[1]_3", "--objects", "[1]_1,[1]_2,[1]_3,[1]_4,[1]_5,[1]_6",
            "--modulo", "[1]_1,[1]_6"]
    code, rep = run_json(capsys, *args)
    assert code == 0 and rep["result"]["status"] == "periodic"
    code, rep = run_json(capsys, *args, "--cutoff", "2")
    assert code == 3 and rep["verdict"] == "inconclusive"


def test_check_ab(capsys):
    code, rep = run_json(capsys, N1, "check-ab", "--X", "[1]_1,[1]_2,[1]_3,[1]_4", "--omega", "[1]_1,[1]_4")
    assert code == 0 and rep["result"]["ok"] is True


def test_singeq_pass(capsys):
    code, rep = run_json(capsys, N2, "singeq", "--T", "[1]_1,[1]_6")
    assert code == 0 and rep["verdict"] == "pass"


def test_bounds_and_ar_duality(capsys):
    code, rep = run_json(capsys, str(SPECS / "a4_linear.toml"), "thm41", "--T", "[4]_4,[4]_3,[4]_2,[4]_1")
    assert code == 0, rep
    code, rep = run_json(capsys, N1, "ar-duality")
    assert code == 0 and rep["result"]["witnesses"]["pairs"] == 49


def test_ar_quiver_dot(tmp_path, capsys):
    dot = tmp_path / "q.dot"
    code = main([N1, "ar-quiver", "--dot", str(dot)])
    assert code == 0
    assert dot.read_text().count("->") == 13
    code = main([N2, "ar-quiver", "--by", "[1]_1,[1]_6", "--objects", "[1]_1,[1]_2,[1]_3,[1]_4,[1]_5,[1]_6",
                 "--dot", "-"])
    out = capsys.readouterr().out
    assert '"[1]_5";' in out and '"[1]_1";' not in out


def test_family_example_honest_mismatch(capsys):
    code, rep = run_json(capsys, N2, "paper-example")
    assert code == 1 and rep["verdict"] == "fail"
    disc = rep["result"]["witnesses"]["discrepancies"]
    assert disc


def test_family_example_n1_passes(capsys):
    code, rep = run_json(capsys, N1, "paper-example", "--n", "1")
    assert code == 0, rep["result"]["witnesses"].get("discrepancies")


def test_global_flags_either_side(capsys):
    a = main(["--cutoff", "2", N2, "resolve", "--functor", "injective:[1]_3", "--objects",
              "[1]_1,[1]_2,[1]_3,[1]_4,[1]_5,[1]_6", "--modulo", "[1]_1,[1]_6"])
    capsys.readouterr()
    assert a == 3
    code, rep = run_json(capsys, N1, "--field", "Fp:5", "hom", "[1]_3", "[1]_1")
    assert code == 0 and rep["params"]["field"] == "Fp:5"


@pytest.mark.parametrize("argv", [
    ["nope"],
    [N1, "frobnicate"],
    [N1, "indec", "--bogus"],
    [N1, "resolve"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv,msg", [
    (["/does/not/exist.toml", "indec"], "No such file"),
    ([N1, "hom", "[9]_9", "[1]_1"], "unknown module label"),
    ([N1, "paper-example", "--n", "2"], "n = 1"),
    ([N1, "resolve", "--functor", "simple"], "KIND:LABEL"),
    ([N1, "--cutoff", "0", "indec"], "positive"),
])
def test_input_errors_exit_2(argv, msg, capsys):
    assert main(argv) == 2
    assert msg in capsys.readouterr().err


def test_bad_spec_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.toml"
    p.write_text('kind = "nakayama"\nfield = "Q"\nshape = "cyclic"\nkupisch = [0]\n')
    assert main([str(p), "indec"]) == 2
    assert "kupisch entries >= 1" in capsys.readouterr().err


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "abcat.cli", N1, "indec"], capture_output=True, text=True)
    assert res.returncode == 0 and "count: 7" in res.stdout


def test_aliases_give_identical_reports(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main([N1, "paper-example", "--json", str(a)])
    main([N1, "family", "--json", str(b)])
    assert a.read_bytes() == b.read_bytes()
    main([N1, "thm41", "--T", "[1]_1,[1]_4", "--json", str(a)])
    main([N1, "dim-bounds", "--T", "[1]_1,[1]_4", "--json", str(b)])
    assert a.read_bytes() == b.read_bytes()
