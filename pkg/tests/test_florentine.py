import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from florentine_qcss import reference
from florentine_qcss.florentine import (
    Construction,
    FlorentineRect,
    ParameterError,
    PermutationFamily,
    RectangleFormatError,
    best_florentine,
    f_value,
    florentine_even_a,
    florentine_even_b,
    florentine_mult_table,
    florentine_odd,
    is_florentine,
    is_latin,
    is_tuscan_k,
    is_vatican,
    max_florentine_search,
    smallest_prime_factor,
    strip_and_shift,
    vatican_from_prime,
)
from reference_data import FLORENTINE_6x7, PERMS_10, VATICAN_4


def rows(rect):
    return [list(r) for r in rect.rows]


def test_vatican_from_prime_small():
    assert rows(vatican_from_prime(3)) == [[0, 1], [1, 0]]


def test_vatican_from_prime_11_gives_published_permutations():
    rect = vatican_from_prime(11)
    assert rows(rect) == PERMS_10
    assert is_vatican(rect)


@pytest.mark.parametrize("p", [4, 9, 2, 1, 15])
def test_vatican_rejects_non_odd_primes(p):
    with pytest.raises(ParameterError):
        vatican_from_prime(p)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 23])
def test_vatican_is_latin(p):
    rect = vatican_from_prime(p)
    assert is_latin(rect)
    assert oracles.is_tuscan(rows(rect), p - 2)


def test_mult_table_three():
    assert rows(florentine_mult_table(3)) == [[0, 1, 2], [0, 2, 1]]


@pytest.mark.parametrize("n,r", [(35, 4), (49, 6), (25, 4), (77, 6), (121, 10)])
def test_mult_table_rows_and_check(n, r):
    rect = florentine_mult_table(n)
    assert rect.r == r == smallest_prime_factor(n) - 1
    assert oracles.is_tuscan(rows(rect), n - 1)


def test_strip_and_shift_smallest():
    rect = FlorentineRect(3, [[0, 1, 2], [0, 2, 1]])
    assert rows(strip_and_shift(rect)) == [[0, 1], [1, 0]]


def test_strip_and_shift_49_to_48():
    rect = strip_and_shift(florentine_mult_table(49))
    assert (rect.n, rect.r) == (48, 6)
    assert oracles.is_tuscan(rows(rect), 47)


def test_strip_and_shift_needs_zero_column():
    with pytest.raises(ParameterError):
        strip_and_shift(FlorentineRect(2, [[0, 1], [1, 0]]))


@pytest.mark.parametrize("m", [5, 7, 11, 25, 35, 49, 55, 77, 91])
def test_strip_and_shift_preserves_property(m):
    rect = florentine_mult_table(m)
    assert is_florentine(strip_and_shift(rect))


def test_even_a_first_row_is_ramp():
    rect = florentine_even_a(6)
    assert list(rect.rows[0]) == [0, 1, 2, 3, 4, 5]
    assert oracles.is_tuscan(rows(rect), 5)


@pytest.mark.parametrize("n", [4, 6, 10, 12, 16, 18, 22, 24, 28, 30, 36, 48, 64])
def test_even_a_valid(n):
    assert oracles.is_tuscan(rows(florentine_even_a(n)), n - 1)


@pytest.mark.parametrize("n", [4, 8, 10, 14, 16, 20, 22, 26, 32, 38, 44, 50])
def test_even_b_valid(n):
    rect = florentine_even_b(n)
    assert rect.r == 4
    assert oracles.is_tuscan(rows(rect), n - 1)


@pytest.mark.parametrize(
    "builder,n", [(florentine_even_a, 14), (florentine_even_a, 7), (florentine_even_a, 2),
                  (florentine_even_b, 6), (florentine_even_b, 12), (florentine_even_b, 9)]
)
def test_even_preconditions(builder, n):
    with pytest.raises(ParameterError):
        builder(n)


@pytest.mark.parametrize("n", [5, 7, 9, 15, 21, 27, 33, 45, 63])
def test_odd_extension_valid(n):
    rect = florentine_odd(n)
    assert rect.r == 4
    assert all(row[-1] == n - 1 for row in rect.rows)
    assert oracles.is_tuscan(rows(rect), n - 1)


@pytest.mark.parametrize("n", [6, 3, 1])
def test_odd_extension_preconditions(n):
    with pytest.raises(ParameterError):
        florentine_odd(n)


def test_best_florentine_ten():
    rect, family = best_florentine(10)
    assert family.f_value == 10
    assert rect.construction is Construction.PRIME_VATICAN
    assert [list(p) for p in family.perms] == PERMS_10


def test_best_florentine_48_strips_49():
    rect, family = best_florentine(48)
    assert family.f_value == 6
    assert rect.source_modulus == 49
    assert rect.construction is Construction.MULT_TABLE


@pytest.mark.parametrize("n,F", [(2, 2), (3, 2), (4, 4), (5, 4), (7, 6), (8, 4), (9, 4), (14, 4),
                                 (15, 4), (24, 4), (36, 36), (76, 6), (90, 6), (105, 4)])
def test_f_values(n, F):
    assert best_florentine(n)[1].f_value == F
    assert f_value(n) == F


@pytest.mark.parametrize("n", range(2, 65))
def test_best_florentine_sweep(n):
    rect, family = best_florentine(n)
    assert oracles.is_tuscan(rows(rect), n - 1)
    perms = family.perms
    for k1 in range(family.f_value):
        for k2 in range(family.f_value):
            if k1 != k2:
                counts = family.shift_solution_counts(k1, k2)
                assert counts.max() <= 1
                if n <= 16:
                    assert [oracles.shift_solutions(perms[k1], perms[k2], t) for t in range(n)] == counts.tolist()
    if n in reference.FLORENTINE_LITERATURE:
        assert family.f_value <= reference.FLORENTINE_LITERATURE[n][1]


def test_tuscan_examples():
    assert is_tuscan_k(FlorentineRect(4, VATICAN_4), 3)
    assert is_tuscan_k(FlorentineRect(7, FLORENTINE_6x7), 6)
    assert is_vatican(FlorentineRect(4, VATICAN_4))
    assert not is_latin(FlorentineRect(7, FLORENTINE_6x7))


def test_tuscan_witness_duplicate_row():
    result = is_tuscan_k(FlorentineRect(3, [[0, 1, 2], [0, 1, 2]]), 1)
    assert not result
    w = result.witness
    assert (w.displacement, w.pair, w.locations) == (1, (0, 1), ((0, 0), (1, 0)))


def test_tuscan_rejects_non_permutation():
    result = is_tuscan_k(FlorentineRect(3, [[0, 1, 2], [0, 0, 2]]), 2)
    assert not result and result.witness.kind == "not_permutation" and result.witness.row == 1


def test_tuscan_k_range():
    with pytest.raises(ParameterError):
        is_tuscan_k(FlorentineRect(3, [[0, 1, 2]]), 3)


@st.composite
def random_rect(draw):
    n = draw(st.integers(2, 7))
    r = draw(st.integers(1, 5))
    rows_ = [draw(st.permutations(list(range(n)))) for _ in range(r)]
    k = draw(st.integers(1, n - 1))
    return n, rows_, k


@settings(max_examples=300, deadline=None)
@given(random_rect())
def test_checker_matches_brute_force(case):
    n, rows_, k = case
    result = is_tuscan_k(FlorentineRect(n, rows_), k)
    bad = oracles.tuscan_violations(rows_, k)
    assert result.ok == (not bad)
    if bad:
        w = result.witness
        assert w.displacement == min(d for d, _, _ in bad)
        locs = bad[(w.displacement, *w.pair)]
        assert set(w.locations) <= set(locs)
        (r1, c1), (r2, c2) = w.locations
        a, b = w.pair
        d = w.displacement
        assert rows_[r1][c1] == rows_[r2][c2] == a
        assert rows_[r1][c1 + d] == rows_[r2][c2 + d] == b


@pytest.mark.parametrize("n,F", [(2, 2), (3, 2), (4, 4), (5, 4)])
def test_search_matches_literature(n, F):
    res = max_florentine_search(n)
    assert res.rows_found == F == reference.FLORENTINE_LITERATURE[n][0]
    assert res.proven
    assert oracles.is_tuscan(rows(res.rect), n - 1)


def test_search_budget_signal():
    res = max_florentine_search(7, budget=10)
    assert not res.proven
    assert is_florentine(res.rect)


def test_search_row_limit_is_not_a_proof():
    res = max_florentine_search(5, row_limit=2)
    assert res.rows_found == 2 and not res.proven


def test_search_cap():
    with pytest.raises(ParameterError):
        max_florentine_search(9)


def test_json_round_trip(tmp_path):
    rect, _ = best_florentine(12)
    text = rect.to_json()
    data = json.loads(text)
    assert set(data) == {"n", "rows", "construction", "source_modulus"}
    assert FlorentineRect.from_json(text) == rect
    path = tmp_path / "r.json"
    path.write_text(text)
    assert FlorentineRect.load(path) == rect


def test_text_round_trip(tmp_path):
    rect = FlorentineRect(7, FLORENTINE_6x7)
    path = tmp_path / "r.txt"
    path.write_text(rect.to_text())
    assert FlorentineRect.load(path).rows == rect.rows


def test_text_parse_error_position():
    with pytest.raises(RectangleFormatError) as exc:
        FlorentineRect.from_text("0 1 2\n1 x 0\n")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_json_parse_error_position():
    with pytest.raises(RectangleFormatError) as exc:
        FlorentineRect.from_json('{"n": 3,\n "rows": [[0,1,2],}')
    assert exc.value.line == 2


def test_family_rejects_non_bijection():
    with pytest.raises(ParameterError):
        PermutationFamily(3, [[0, 1, 1]])


def test_family_pair_unique_detects_clash():
    assert not PermutationFamily(3, [[0, 1, 2], [0, 1, 2]]).pair_unique()
    assert PermutationFamily(4, VATICAN_4).pair_unique()


def test_constructions_are_deterministic():
    a = np.array(best_florentine(30)[0].rows)
    b = np.array(best_florentine(30)[0].rows)
    assert np.array_equal(a, b)
