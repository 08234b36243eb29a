import math

import numpy as np
import pytest

from florentine_qcss.bounds import (
    Branch,
    BranchNotApplicable,
    Classification,
    UnboundedRatio,
    asymptotic_rho,
    classify,
    liu_applies,
    liu_bound,
    optimality_factor,
    welch_bound,
)
from florentine_qcss.correlation import delta_max
from florentine_qcss.florentine import best_florentine
from florentine_qcss.seqgen import build_qcss


def test_welch_values():
    assert welch_bound(4, 2, 2) == pytest.approx(4 / math.sqrt(11))
    assert welch_bound(6, 3, 3) == pytest.approx(9 / math.sqrt(29))
    assert welch_bound(5, 5, 3) == 0


@pytest.mark.parametrize("args", [(1, 2, 2), (2, 0, 2), (3, 3, 0)])
def test_welch_domain(args):
    with pytest.raises(ValueError):
        welch_bound(*args)


def test_liu_values():
    assert liu_bound(36, 6, 6) == pytest.approx(6 * math.sqrt(1 - 2 * math.sqrt(1 / 18)))
    assert liu_bound(36, 6, 6) == pytest.approx(4.3623, abs=5e-5)
    assert 10 / liu_bound(100, 10, 10) == pytest.approx(1.2551, abs=5e-5)


def test_liu_not_applicable():
    with pytest.raises(BranchNotApplicable):
        liu_bound(4, 2, 2)


@pytest.mark.parametrize("K,M,N,expected", [(6, 2, 2, True), (5, 2, 2, False), (9, 1, 9, False), (12, 4, 1, False)])
def test_liu_predicate(K, M, N, expected):
    assert liu_applies(K, M, N) is expected


@pytest.mark.parametrize("K,M,N,delta,rho", [(144, 12, 12, 12, 1.2247), (56, 14, 14, 14, 1.5382), (36, 6, 6, 6, 1.3754)])
def test_optimality_factor_liu_rows(K, M, N, delta, rho):
    rep = optimality_factor(K, M, N, delta)
    assert rep.branch is Branch.LIU
    assert rep.rho == pytest.approx(rho, abs=5e-5)
    assert rep.classification is Classification.NEAR_OPTIMAL


def test_equal_to_three_m_uses_liu():
    assert optimality_factor(6, 2, 2, 2).branch is Branch.LIU


def test_welch_branch_small_cases():
    rep = optimality_factor(4, 2, 2, 2)
    assert rep.branch is Branch.WELCH and rep.liu is None
    assert rep.rho == pytest.approx(math.sqrt(11) / 2)
    assert optimality_factor(6, 3, 3, 3).rho == pytest.approx(math.sqrt(29) / 3)


def test_four_row_rho_is_independent_of_n():
    expected = 1 / math.sqrt(1 - 2 * math.sqrt(1 / 12))
    for n in (5, 14, 20, 99, 10**4):
        assert optimality_factor(4 * n, n, n, n).rho == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(1.5382, abs=5e-5)


def test_zero_bound():
    assert optimality_factor(5, 5, 5, 0).rho == 1.0
    with pytest.raises(UnboundedRatio):
        optimality_factor(5, 5, 5, 1)


def test_classification():
    assert classify(1.0) is Classification.OPTIMAL
    assert classify(1.5) is Classification.NEAR_OPTIMAL
    assert classify(2.0) is Classification.NEAR_OPTIMAL
    assert classify(2.01) is Classification.OTHER
    assert classify(0.9) is Classification.BELOW_BOUND


@pytest.mark.parametrize("F,rho", [(6, 1.3754), (10, 1.2551), (4, 1.5382), (12, 1.2247)])
def test_asymptotic_values(F, rho):
    assert asymptotic_rho(F) == pytest.approx(rho, abs=5e-5)


def test_asymptotic_domain():
    with pytest.raises(ValueError):
        asymptotic_rho(1)


def test_asymptotic_monotone_to_one():
    Fs = np.unique(np.logspace(np.log10(2), 8, 400).astype(int))
    vals = [asymptotic_rho(int(F)) for F in Fs]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(v > 1 for v in vals)
    assert asymptotic_rho(10**8) < 1.0001


@pytest.mark.parametrize("n", range(4, 13))
def test_scanned_rho_equals_asymptotic(n):
    _, family = best_florentine(n)
    q = build_qcss(family)
    K, M, N = q.params
    rep = optimality_factor(K, M, N, delta_max(q, mode="exact").delta_max)
    assert rep.branch is Branch.LIU
    assert rep.rho == pytest.approx(asymptotic_rho(family.f_value), abs=1e-9)


def test_report_dict():
    d = optimality_factor(36, 6, 6, 6).to_dict()
    assert d["branch"] == "liu" and d["classification"] == "near_optimal"
    assert set(d) == {"K", "M", "N", "delta_max", "welch", "liu", "rho", "branch", "classification"}
