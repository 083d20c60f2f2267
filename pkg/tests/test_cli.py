"""CLI subcommands: outputs and exit codes."""

import pytest

from hopfgalois.cli import main

PAIR_FPF = """\
n=2
theta_f=0,1
phi_f=-,0
theta_g=1,2
phi_g=0,0
"""

PAIR_NOT_FPF = """\
n=2
theta_f=1,1
phi_f=0,0
theta_g=1,1
phi_g=0,0
"""


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_census_formula(capsys):
    rc, out, _ = run(capsys, "census", "formula", "--aut-order", "6", "--n", "2")
    assert rc == 0
    assert "F\t3744" in out
    assert "Einn\t52" in out


def test_census_weighted(capsys):
    rc, out, _ = run(capsys, "census", "weighted", "--aut-order", "6", "--n", "2")
    assert rc == 0
    assert "weighted_F\t3744" in out
    assert "trees_degree_1\t2" in out


def test_census_brute(capsys):
    rc, out, _ = run(capsys, "census", "brute", "--group", "s3", "--n", "1",
                     "--mode", "fpf")
    assert rc == 0
    assert "brute_F\t12" in out
    assert "match\ttrue" in out


def test_census_brute_budget_is_a_usage_error(capsys):
    rc, _, err = run(capsys, "census", "brute", "--group", "s3", "--n", "3",
                     "--mode", "fpf")
    assert rc == 1
    assert "budget" in err


def test_trees_count(capsys):
    rc, out, _ = run(capsys, "trees", "count", "--n", "3")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "3\t1\t9"
    assert lines[-1] == "3\t-\t16"
    rc, out, _ = run(capsys, "trees", "count", "--n", "3", "--degree", "2")
    assert out.strip() == "3\t2\t6"


def test_trees_enumerate(capsys):
    rc, out, _ = run(capsys, "trees", "enumerate", "--n", "2")
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert lines[0].split("\t")[0] == "0"


def test_fpf_check_positive(tmp_path, capsys):
    pair = tmp_path / "pair.txt"
    pair.write_text(PAIR_FPF)
    rc, out, _ = run(capsys, "fpf", "check", "--group", "s3", "--pair", str(pair))
    assert rc == 0
    assert out.splitlines()[0] == "fpf\ttree-criterion\t-"


def test_fpf_check_negative_with_graph(tmp_path, capsys):
    pair = tmp_path / "pair.txt"
    pair.write_text(PAIR_NOT_FPF)
    rc, out, _ = run(capsys, "fpf", "check", "--group", "s3", "--pair", str(pair),
                     "--dump-graph")
    assert rc == 0
    first = out.splitlines()[0].split("\t")
    assert first[0] == "not-fpf"
    assert first[2] != "-"
    assert any(line.startswith("e1\t") for line in out.splitlines()[1:])


def test_fpf_check_falls_back_to_bruteforce(tmp_path, capsys):
    pair = tmp_path / "pair.txt"
    pair.write_text("n=1\ntheta_f=1\nphi_f=0\ntheta_g=0\nphi_g=-\n")
    rc, out, _ = run(capsys, "fpf", "check", "--group", "c5", "--pair", str(pair))
    assert rc == 0
    assert out.splitlines()[0] == "fpf\tbruteforce\t-"


def test_fpf_check_rejects_bad_pair_file(tmp_path, capsys):
    pair = tmp_path / "pair.txt"
    pair.write_text("nonsense")
    rc, _, err = run(capsys, "fpf", "check", "--group", "s3", "--pair", str(pair))
    assert rc == 1
    assert "error" in err


def test_fpf_check_missing_file(capsys):
    rc, _, err = run(capsys, "fpf", "check", "--group", "s3", "--pair", "/no/such/file")
    assert rc == 1


def test_hol_regulars(capsys):
    rc, out, _ = run(capsys, "hol", "regulars", "--group", "s3")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "total\t2"
    assert lines[0] == "0\t6\ttrue\tinn"


def test_hol_regulars_cross_type(capsys):
    rc, out, _ = run(capsys, "hol", "regulars", "--group", "c6", "--iso", "s3")
    assert rc == 0
    assert out.strip().splitlines()[-1] == "total\t1"
    rc, _, err = run(capsys, "hol", "regulars", "--group", "a5", "--iso", "s3")
    assert rc == 1
    assert "too large" in err


def test_hol_lemma_suite(capsys):
    rc, out, _ = run(capsys, "hol", "verify-s3-lemmas")
    assert rc == 0
    total = out.strip().splitlines()[-1]
    assert total.startswith("total\t308")
    assert "fail=0" in total


def test_verify_quick(capsys):
    rc, out, _ = run(capsys, "verify", "--level", "quick")
    assert rc == 0
    assert out.strip().splitlines()[-1] == "result\tpass"


def test_unknown_group_is_exit_1(capsys):
    rc, _, err = run(capsys, "census", "brute", "--group", "zz", "--n", "1")
    assert rc == 1
    assert "not a catalog name" in err


def test_usage_error_is_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "formula", "--n", "2"])  # missing --aut-order
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
