"""Closed formulas against tree-weighted and brute-force pair counts."""

import pytest

from hopfgalois.census import (
    CensusReport,
    brute_F,
    formula_Einn,
    formula_F,
    run_verification,
    tree_degree_counts,
    tree_pair_census,
    tree_weighted_F,
)
from hopfgalois.groups import BudgetError, load_group

S3 = load_group("s3")


def test_formula_values():
    assert formula_F(6, 1) == 12
    assert formula_F(6, 2) == 3744
    assert formula_F(6, 3) == 3742848
    assert formula_F(120, 1) == 240
    assert formula_F(2520, 1) == 5040
    assert formula_Einn(6, 1) == 2
    assert formula_Einn(6, 2) == 52
    assert formula_Einn(120, 1) == 2
    assert formula_Einn(2520, 2) == 20164


def test_formula_validates_inputs():
    with pytest.raises(ValueError):
        formula_F(6, 0)
    with pytest.raises(ValueError):
        formula_F(0, 2)


def test_tree_weighted_equals_formula_for_free_aut_orders():
    for a in (1, 2, 3, 6, 7, 120, 2520):
        for n in (1, 2, 3, 4):
            assert tree_weighted_F(a, n) == formula_F(a, n)


def test_tree_weighted_methods_agree():
    assert tree_weighted_F(6, 3, method="enumerate") == tree_weighted_F(
        6, 3, method="formula"
    )
    with pytest.raises(ValueError, match="unknown method"):
        tree_weighted_F(6, 2, method="guess")


def test_degree_counts_enumerate_vs_formula():
    for n in range(1, 7):
        assert tree_degree_counts(n, "enumerate") == tree_degree_counts(n, "formula")
    with pytest.raises(ValueError):
        tree_degree_counts(0)


def test_tree_pair_census_values():
    assert tree_pair_census(6, 1) == 12
    assert tree_pair_census(6, 2) == 3744
    assert tree_pair_census(1, 2) == formula_F(1, 2)


def test_brute_modes_agree_with_the_formula():
    assert brute_F(S3, 1, mode="tree") == 12
    assert brute_F(S3, 1, mode="fpf") == 12
    assert brute_F(S3, 2, mode="tree") == 3744


def test_brute_budget_gates():
    with pytest.raises(BudgetError):
        brute_F(S3, 3, mode="fpf")
    with pytest.raises(BudgetError):
        brute_F(S3, 2, mode="tree", budget=10)
    with pytest.raises(ValueError, match="unknown mode"):
        brute_F(S3, 1, mode="magic")


def test_census_report_match_logic():
    good = CensusReport("x", 1, 6, 12, 12, brute_F=12, fpf_count=12, formula_Einn=2)
    assert good.match
    assert all(ok for _, ok in good.comparisons())
    bad = CensusReport("x", 1, 6, 12, 12, brute_F=13)
    assert not bad.match
    # absent routes contribute no comparisons
    sparse = CensusReport("x", 1, 6, 12, 12)
    assert [name for name, _ in sparse.comparisons()] == ["formula == tree-weighted"]
    hol = CensusReport("x", 1, 6, 12, 12, hol_inn=2, hol_out=1, hol_expected_inn=2)
    assert not hol.match  # an out-type structure is itself a mismatch


def test_run_verification_quick():
    reports = run_verification("quick")
    assert len(reports) == 10
    assert all(r.match for r in reports)
    s3_row = reports[0]
    assert (s3_row.T_name, s3_row.n) == ("s3", 1)
    assert (s3_row.hol_inn, s3_row.hol_out, s3_row.hol_expected_inn) == (2, 0, 2)
    with pytest.raises(ValueError, match="unknown level"):
        run_verification("exhaustive")
