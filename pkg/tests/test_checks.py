import pytest

from hmoduli.checks import assertion_classification, closed_form_check, closed_form_subspaces
from hmoduli.linalg import Subspace


@pytest.mark.parametrize("k", range(2, 13))
@pytest.mark.parametrize("m", [2, 4])
def test_closed_forms_agree(k, m):
    r = closed_form_check(k * m, m)
    assert r["agrees"], r
    assert r["spaces"]["mo"]["verdict"] == ("oracle-only" if k >= 4 else "match")


def test_ratio_two_all_equal():
    r = closed_form_check(4, 2)
    assert {e["verdict"] for e in r["spaces"].values()} == {"match"}
    assert all(e["computed"] == [["1"]] for e in r["spaces"].values())


def test_closed_form_pa_for_ratio_five():
    s = closed_form_subspaces(10, 2)
    assert s["pa"].dim == 3
    assert s["imhd"] == Subspace.span([[5, 10, 10, 5]], 4)


def test_case_one_at_ratio_four():
    r = assertion_classification(8, 2)
    assert r["claimed_case"] == r["computed_case"] == 1
    assert all(c["holds"] for c in r["claims"])
    assert r["sketch_discrepancies"] == ["S_sa < S_pa"]


def test_case_two_at_ratio_five():
    r = assertion_classification(10, 2)
    assert r["claimed_case"] == r["computed_case"] == 2
    assert all(c["holds"] for c in r["claims"])
    q = r["quotient_dims"]
    assert (q["inv"], q["pa"], q["pa&inv"], q["mo"]) == (2, 2, 1, 0)


@pytest.mark.parametrize("n,m", [(6, 2), (12, 4), (4, 2), (7, 2), (6, 3), (9, 3)])
def test_case_three(n, m):
    r = assertion_classification(n, m)
    assert r["claimed_case"] == 3 and r["agrees"]


@pytest.mark.parametrize("k", range(6, 13, 2))
def test_sketch_chain_holds_beyond_four(k):
    assert assertion_classification(2 * k, 2)["sketch_discrepancies"] == []
