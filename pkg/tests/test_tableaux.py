from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from gramtab.families import eulerian_a, k_order, second_order
from gramtab.normalorder import c, ckd_power_on_c
from gramtab.polyring import Poly, parse_poly
from gramtab.tableaux import (
    InvalidTableau,
    Tableau,
    box_index,
    box_product,
    col_profile,
    descent_stats,
    enumerate_syt,
    syt_expansion,
    syt_sum,
    weights,
)

P = parse_poly
x = Poly.var("x")
T = Tableau.parse
ALL = {n: list(enumerate_syt(n)) for n in range(1, 9)}


def test_enumeration_examples():
    assert [t.text for t in ALL[3]] == ["1,2,3", "1,2/3", "1,3/2", "1/2/3"]
    assert len(ALL[1]) == 1
    assert [t.shape for t in enumerate_syt(3, max_cols=2)] == [(2, 1), (2, 1), (1, 1, 1)]


def test_counts_are_involution_numbers():
    inv = [1, 1]
    for n in range(2, 9):
        inv.append(inv[-1] + (n - 1) * inv[-2])
    assert [len(ALL[n]) for n in range(1, 9)] == inv[1:] == [1, 2, 4, 10, 26, 76, 232, 764]


def test_col_profile():
    assert col_profile(T("1/2/3"), 2) == [2]
    assert col_profile(T("1,3/2"), 3) == [2, 1]
    assert col_profile(T("1,2,3"), 3) == [1, 1, 1]


def test_sigma_and_delta_indices():
    assert [box_index(T("1,3/2"), i) for i in (1, 2, 3)] == [1, 1, 2]
    assert [box_index(T("1/2/3"), i) for i in (1, 2, 3)] == [1, 1, 1]
    assert [box_index(T("1,2/3"), i, 2) for i in (1, 2, 3)] == [1, 1, 4]
    assert box_product(T("1/2/3"), 2) == 1 * 2 * 3


def test_weights_and_descents():
    assert weights(T("1,2,3")) == ({3: 1}, 1)
    assert weights(T("1,3/2")) == ({1: 1, 2: 1}, 2)
    assert weights(T("1/2/3")) == ({1: 3}, 3)
    assert descent_stats(T("1,2,3")) == (set(), 0)
    assert descent_stats(T("1/2/3/4")) == ({1, 2, 3}, 3)


def test_robinson_schensted_descent_identity():
    counts = {}
    for t in ALL[3]:
        counts[t.shape] = counts.get(t.shape, 0) + 1
    total = sum((counts[t.shape] * x ** (descent_stats(t)[1] + 1) for t in ALL[3]), Poly())
    assert total == P("x + 4*x^2 + x^3")


def test_syt_expansion_examples():
    cjet = lambda i: Poly.var(c(i))  # noqa: E731
    assert syt_expansion(3, 1, Poly.var(c(0)), cjet) == ckd_power_on_c(1, 3)
    assert syt_expansion(3, 1, Poly.const(1), lambda i: x) == P("x + 4*x^2 + x^3")
    assert syt_expansion(3, 2, Poly.const(1), lambda i: x) == P("x + 8*x^2 + 6*x^3")


def test_invalid_tableaux():
    for bad in ("2,1", "1/2,3", "1,2/2", "1,3/4", "2/1", "1,x"):
        with pytest.raises(InvalidTableau):
            T(bad)


def test_sigma_products_sum_to_factorial():
    for n in range(1, 9):
        assert sum(box_product(t) for t in ALL[n]) == factorial(n)


def test_delta_products_sum_to_double_factorial():
    for n in range(1, 8):
        assert sum(box_product(t, 2) for t in ALL[n]) == prod(range(1, 2 * n, 2))


def test_order_m_reading():
    for m in (1, 2, 3):
        for n in range(1, 6):
            assert sum(box_product(t, m) for t in ALL[n]) == prod(m * (i - 1) + 1 for i in range(1, n + 1))
            assert syt_sum(n, lambda t: x**t.length, m) == k_order(m, n)
    for n in range(1, 6):
        assert syt_sum(n, lambda t: x**t.length, 2) == second_order(n)
        assert syt_sum(n, lambda t: x**t.length) == eulerian_a(n)


@given(st.integers(1, 8).flatmap(lambda n: st.sampled_from(ALL[n])), st.sampled_from([1, 2, 3]))
def test_enumerated_tableaux_are_valid(t, m):
    assert Tableau.parse(t.text) == t
    assert sorted(e for r in t.rows for e in r) == list(range(1, t.n + 1))
    assert all(a < b for r in t.rows for a, b in zip(r, r[1:]))
    assert all(a < b for col in t.columns for a, b in zip(col, col[1:]))
    assert all(box_index(t, i, m) >= 1 for i in range(1, t.n + 1))
