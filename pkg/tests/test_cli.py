import json

import pytest

from algconn.cli import fmt_lambda, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_text(capsys):
    code, out, _ = run(capsys, "construct", "20", "22")
    assert code == 0
    assert out.startswith("4,4,4,2,2,2,2 | λ1=4 | LEGM")
    code, out, _ = run(capsys, "construct", "5", "0")
    assert out.startswith("1,1,1,1,1 | λ1=0")


def test_construct_verify_and_certify(capsys):
    code, out, _ = run(capsys, "construct", "9", "18", "--verify", "--certify")
    assert code == 0
    assert "two-component-equality" in out and "no neighbour does better" in out


def test_json_is_deterministic(capsys):
    first = run(capsys, "--json", "certify", "9", "10")[1]
    second = run(capsys, "certify", "9", "10", "--json")[1]
    assert first == second
    data = json.loads(first)
    assert data["status"] == "ok" and data["payload"]["tag"] == "LEGM"


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["construct", "5"])
    assert e.value.code == 2
    code, _, err = run(capsys, "construct", "4", "9")
    assert code == 2 and "outside" in err
    code, _, err = run(capsys, "problem2", "9", "3")
    assert code == 2 and "odd" in err
    code, _, _ = run(capsys, "table", "--bless")
    assert code == 2
    code, _, err = run(capsys, "verify-lelm")
    assert code == 2


def test_table_reports_reference_mismatches(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 1
    assert out.count("MISMATCH") == 2
    assert "(25, 66)" in out and "(30, 235)" in out
    assert " 10   16  5,4" in out


def test_examples_pass(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert out.count("PASS") == 4


def test_circulant_and_problem2(capsys):
    code, out, _ = run(capsys, "circulant", "--row", "0100001")
    assert code == 0 and "λ1=3.802" in out
    code, out, _ = run(capsys, "problem2", "9", "4")
    assert code == 0 and "peak=6" in out


def test_verify_lelm_inputs(capsys, tmp_path):
    path = tmp_path / "star.txt"
    path.write_text("4 3\n0 1\n0 2\n0 3\n")
    code, out, _ = run(capsys, "verify-lelm", str(path))
    assert code == 1 and "NOT LELM" in out
    code, out, _ = run(capsys, "verify-lelm", "--partition", "6,3")
    assert code == 0 and out.rstrip().endswith("LELM")
    code, out, _ = run(capsys, "verify-lelm", "--partition", "2,1", "--with-removals")
    assert code == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    code, _, err = run(capsys, "verify-lelm", str(bad))
    assert code == 2 and "announces" in err


def test_brute_and_goldens(capsys):
    code, out, _ = run(capsys, "--json", "brute", "5", "4")
    data = json.loads(out)
    assert code == 0 and data["payload"]["golden_match"] is True
    assert data["payload"]["min_lambda1"] == pytest.approx(3)


def test_complement_check(capsys):
    code, out, _ = run(capsys, "complement-check", "--random", "20", "--seed", "4")
    assert code == 0 and "20 graph(s)" in out
    code, out, _ = run(capsys, "complement-check", "--row", "001011010")
    assert code == 0


@pytest.mark.parametrize("x, text", [(4.0000000001, "4"), (6.8793852, "6.879"), (0.0, "0"),
                                     (16.9999999, "17"), (3.8019377, "3.802")])
def test_lambda_formatting(x, text):
    assert fmt_lambda(x) == text
