import json

import pytest

from nmdscodes import cli
from nmdscodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_search_params_text(capsys):
    code, out, err = run(capsys, "search-params", "--p-max", "7")
    assert code == 0 and not err
    lines = out.splitlines()
    assert lines[0].split() == ["q", "p", "t", "code"]
    assert lines[1].split() == ["7", "3", "1", "[9,2k,9-2k]"]
    assert lines[2].split() == ["43", "7", "5", "[49,2k,49-2k]"]
    assert lines[-1] == "2 triple(s)"


def test_search_params_empty_window(capsys):
    code, out, err = run(capsys, "search-params", "--p-max", "2")
    assert code == 0
    assert out.splitlines()[-1] == "0 triple(s)"


def test_search_params_json(capsys):
    code, out, err = run(capsys, "search-params", "--p-max", "7", "--json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows == [
        {"q": 7, "p": 3, "t": 1, "code": "[9,2k,9-2k]"},
        {"q": 43, "p": 7, "t": 5, "code": "[49,2k,49-2k]"},
    ]


def test_search_params_all_traces(capsys):
    code, out, err = run(capsys, "search-params", "--p-max", "7", "--all-t", "--json")
    assert code == 0
    qs = [json.loads(line)["q"] for line in out.splitlines()]
    assert qs == [7, 13, 31, 43]


def test_find_curve_text(capsys):
    code, out, err = run(capsys, "find-curve", "--q", "7", "--p", "3")
    assert code == 0
    assert out.splitlines() == [
        "curve: q=7^1;a4=0;b=2",
        "group: 3x3",
        "points: 9",
        "p-torsion: verified",
    ]


def test_find_curve_json(capsys):
    code, out, err = run(capsys, "find-curve", "--q", "13", "--p", "3", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["curve"] == "q=13^1;a4=0;b=3"
    assert record["group"] == "3x3"
    assert record["points"] == 9
    assert record["p_torsion_verified"]


def test_find_curve_budget_refusal(capsys):
    code, out, err = run(capsys, "find-curve", "--q", "31", "--p", "5", "--budget", "10")
    assert code == 3
    assert "budget" in err


def test_build_text_matrix(capsys):
    code, out, err = run(capsys, "build", "--q", "7", "--p", "3", "--k", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "code: [9,6,3] over F_7"
    assert lines[3] == "extension modulus (constant first): 4,0,1"
    assert lines[5] == "classification: NMDS"
    assert lines[7] == "1 1 1 1 1 1 1 1 1"
    assert lines[8] == "0 6 6 4 4 2 2 3 3"
    assert len(lines) == 13


def test_build_json(capsys):
    code, out, err = run(capsys, "build", "--q", "7", "--p", "3", "--k", "3", "--json")
    assert code == 0
    record = json.loads(out)
    assert (record["n"], record["dim"], record["dmin"]) == (9, 6, 3)
    assert record["classification"] == "NMDS"
    assert record["generator_matrix"][0] == [1] * 9
    assert len(record["generator_matrix"]) == 6


def test_build_rejects_bad_k(capsys):
    code, out, err = run(capsys, "build", "--q", "7", "--p", "3", "--k", "2")
    assert code == 2
    assert "hypothesis" in err and "k" in err


def test_build_rejects_reducible_extension(capsys):
    code, out, err = run(
        capsys, "build", "--q", "13", "--p", "3", "--k", "3",
        "--ext-poly", "0,11,1",
    )
    assert code == 2
    assert "extension modulus" in err


def test_build_accepts_explicit_extension(capsys):
    code, out, err = run(
        capsys, "build", "--q", "13", "--p", "3", "--k", "3",
        "--ext-poly", "11,0,1",
    )
    assert code == 0
    assert "extension modulus (constant first): 11,0,1" in out


def test_build_with_explicit_coefficient(capsys):
    code, out, err = run(capsys, "build", "--q", "7", "--p", "3", "--k", "3", "--b", "2")
    assert code == 0
    default = run(capsys, "build", "--q", "7", "--p", "3", "--k", "3")
    assert out == default[1]


def test_weights_brute(capsys):
    code, out, err = run(capsys, "weights", "--q", "7", "--p", "3", "--k", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "method: brute"
    assert lines[3] == (
        "primal: 1 + 72z^3 + 324z^4 + 3348z^5 + 10656z^6 + 30024z^7"
        " + 43794z^8 + 29430z^9"
    )
    assert lines[4] == "dual:   1 + 72z^6 + 216z^8 + 54z^9"


def test_weights_formula_json(capsys):
    code, out, err = run(
        capsys, "weights", "--q", "31", "--p", "5", "--k", "10", "--json"
    )
    assert code == 0
    record = json.loads(out)
    assert record["method"] == "formula"
    assert record["a_min"] == 63900
    assert record["primal"][5] == 63900
    assert sum(record["dual"]) == 31**5


def test_weights_methods_agree(capsys):
    brute = run(capsys, "weights", "--q", "7", "--p", "3", "--k", "3",
                "--method", "brute", "--json")
    formula = run(capsys, "weights", "--q", "7", "--p", "3", "--k", "3",
                  "--method", "formula", "--json")
    a, b = json.loads(brute[1]), json.loads(formula[1])
    assert a["primal"] == b["primal"]
    assert a["dual"] == b["dual"]


def test_verify_design_primal(capsys):
    code, out, err = run(capsys, "verify-design", "--q", "7", "--p", "3", "--k", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "block family: minimum-weight supports, 12 blocks of size 3"
    assert lines[1] == "design: 2-(9,3,1)"
    assert lines[2] == "simple: yes"
    assert lines[-1] == "verdict: design, matches closed form"


def test_verify_design_dual(capsys):
    code, out, err = run(
        capsys, "verify-design", "--q", "7", "--p", "3", "--k", "3", "--dual"
    )
    assert code == 0
    assert "design: 2-(9,6,5)" in out


def test_verify_design_strength_one(capsys):
    code, out, err = run(
        capsys, "verify-design", "--q", "7", "--p", "3", "--k", "3", "--t", "1"
    )
    assert code == 0
    assert "design: 1-(9,3,4)" in out
    assert "lambda closed-form: 4" in out


def test_verify_design_threads_match(capsys):
    one = run(capsys, "verify-design", "--q", "7", "--p", "3", "--k", "3", "--json")
    two = run(capsys, "verify-design", "--q", "7", "--p", "3", "--k", "3", "--json",
              "--threads", "2")
    assert one[0] == two[0] == 0
    assert one[1] == two[1]


def test_verify_nmds(capsys):
    code, out, err = run(capsys, "verify-nmds", "--q", "7", "--p", "3", "--k", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "code: [9,6,3] over F_7"
    assert lines[1] == "classification: NMDS"
    assert lines[3] == "structural column check: pass"


def test_subset_count(capsys):
    code, out, err = run(
        capsys, "subset-count", "--group", "3x3", "--k", "6", "--x", "0,0"
    )
    assert code == 0
    assert out.splitlines() == ["count: 12"]


def test_subset_count_oracle(capsys):
    code, out, err = run(
        capsys, "subset-count", "--group", "3x3", "--k", "6", "--x", "0,0", "--oracle"
    )
    assert code == 0
    assert out.splitlines() == ["count: 12", "oracle: 12 (match)"]


def test_subset_count_nonzero(capsys):
    code, out, err = run(
        capsys, "subset-count", "--group", "5", "--k", "2", "--x", "1",
        "--nonzero", "--oracle", "--json",
    )
    assert code == 0
    record = json.loads(out)
    assert record["count"] == 1
    assert record["oracle"] == 1


def test_subset_count_whole_group_misses_nonzero_target(capsys):
    code, out, err = run(
        capsys, "subset-count", "--group", "3x3", "--k", "9", "--x", "1,0"
    )
    assert code == 0
    assert out.splitlines() == ["count: 0"]


def test_subset_count_bad_group(capsys):
    code, out, err = run(capsys, "subset-count", "--group", "3x5", "--k", "2", "--x", "0,0")
    assert code == 2
    assert "group" in err


def test_subset_count_bad_element(capsys):
    code, out, err = run(capsys, "subset-count", "--group", "3x3", "--k", "2", "--x", "1")
    assert code == 2


def test_certification_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "count_subsets", lambda group, k, x: 999)
    code, out, err = run(
        capsys, "subset-count", "--group", "3x3", "--k", "6", "--x", "0,0", "--oracle"
    )
    assert code == 4
    assert "certification mismatch" in err


def test_table3_selected_rows_deterministic(capsys):
    first = run(capsys, "table3", "--rows", "7,13")
    second = run(capsys, "table3", "--rows", "7,13")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    lines = first[1].splitlines()
    assert len(lines) == 3  # header + two rows
    assert "q=7^1;a4=0;b=2" in lines[1]
    assert "measured" in lines[1]
    assert "q=13^1;a4=0;b=3" in lines[2]


def test_table3_json_row(capsys):
    code, out, err = run(capsys, "table3", "--rows", "7", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["design"] == {
        "t": 2, "lambda": 1, "lambda_dual": 5, "b": 12, "mode": "measured"
    }
    assert record["xQ"] == "1"


def test_table4_window(capsys):
    code, out, err = run(capsys, "table4", "--p-max", "20")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "4 triple(s)"
    assert lines[1].split()[0] == "7"
    assert lines[4].split()[:3] == ["343", "19", "17"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "rows.txt"
    code, out, err = run(
        capsys, "search-params", "--p-max", "7", "--output", str(target)
    )
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").splitlines()[-1] == "2 triple(s)"


def test_unknown_command_exits_via_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
