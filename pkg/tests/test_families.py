from itertools import permutations, product
from math import comb, factorial, prod

import pytest
from hypothesis import given, strategies as st

from gramtab.families import (
    BadParams,
    FamilyId,
    UnknownFamily,
    eulerian_a,
    eulerian_b,
    family,
    flag_ap,
    interior_peak,
    k_inv_eulerian,
    k_order,
    left_peak,
    narayana_a,
    number_table,
    second_order,
    second_order_tri,
)
from gramtab.grammar import op_power
from gramtab.normalorder import OutOfRange
from gramtab.polyring import X, Y, Z, Poly, parse_poly, substitute, swap
from gramtab.suite import G_PRIME, _explicit_1k

P = parse_poly
x, y, z = Poly.var(X), Poly.var(Y), Poly.var(Z)


@pytest.mark.parametrize(
    "fid, n, expected",
    [
        ("secondOrder", 3, "x + 8*x^2 + 6*x^3"),
        ("flagAP", 3, "x + 3*x^2 + 7*x^3 + 3*x^4 + x^5"),
        ("kInvEulerian(2)", 4, "1 + 36*x + 60*x^2 + 8*x^3"),
        ("eulerianB", 3, "1 + 23*x + 23*x^2 + x^3"),
        ("lsDescent", 2, "4*x + 24*x^2 + 12*x^3"),
        ("narayanaB", 3, "1 + 9*x + 9*x^2 + x^3"),
        ("andre", 4, "x*y^3 + 4*x^2*y"),
        ("eulerianA", 0, "1"),
        ("ramanujan", 4, "6 + 18*x + 25*x^2 + 15*x^3"),
        ("interiorPeak", 4, "8 + 16*x"),
        ("hermite", 3, "-12*x + 8*x^3"),
        ("multisetDescent2", 2, "1 + 4*x + x^2"),
        ("narayanaA", 3, "1 + 6*x + 6*x^2 + x^3"),
    ],
)
def test_family_values(fid, n, expected):
    assert family(fid, n) == P(expected)


def test_number_tables():
    assert number_table("stirling2", 4, 2) == 7
    assert all(number_table("lah", n, n) == 1 for n in range(8))
    assert number_table("ramanujanImproper", 4, 1) == 18
    assert number_table("legendreStirling", 3, 2) == 8
    with pytest.raises(OutOfRange):
        number_table("stirling1", 3, 4)
    with pytest.raises(UnknownFamily):
        number_table("bell", 3, 1)


def test_stirling2_by_set_partitions():
    # count surjections onto k labelled blocks, divide by k!
    n = 4
    for k in range(1, n + 1):
        onto = sum(1 for f in product(range(k), repeat=n) if len(set(f)) == k)
        assert number_table("stirling2", n, k) == onto // factorial(k)


def test_bad_ids():
    with pytest.raises(UnknownFamily):
        family("nope", 2)
    with pytest.raises(BadParams):
        family("kOrder", 2)
    with pytest.raises(BadParams):
        family("kOrder(0)", 2)
    with pytest.raises(BadParams):
        family("ramanujan", 0)
    with pytest.raises(BadParams):
        family("eulerianA", 41)
    assert str(FamilyId.parse("kInvEulerian(2)")) == "kInvEulerian(2)"


def test_frobenius_formula():
    for n in range(0, 9):
        frob = sum(
            (factorial(k) * number_table("stirling2", n, k) * x**k * (1 - x) ** (n - k) for k in range(n + 1)), Poly()
        )
        assert frob == eulerian_a(n)


def test_explicit_inverse_eulerian_formula():
    for k in (1, 2, 3):
        for n in range(1, 8):
            assert _explicit_1k(k, n) == k_inv_eulerian(k, n)
    for n in range(1, 8):
        assert x**n * substitute(k_inv_eulerian(1, n), {X: x**-1}) == eulerian_a(n)


def test_peak_convolution():
    for n in range(0, 8):
        conv = sum((comb(n, k) * left_peak(k) * left_peak(n - k) for k in range(n + 1)), Poly())
        assert conv == interior_peak(n + 1)


def test_flag_convolution():
    for n in range(0, 7):
        conv = x * sum(
            (comb(n, k) * flag_ap(k) * substitute(eulerian_b(n - k), {X: x**2}) for k in range(n + 1)), Poly()
        )
        assert conv == flag_ap(n + 1)


def test_second_order_tri_symmetry():
    for n in range(1, 7):
        p = second_order_tri(n)
        assert swap(p, X, Y) == p and swap(p, Y, Z) == p and swap(p, X, Z) == p
        assert substitute(p, {Y: 1, Z: 1}) == second_order(n)


def test_k_order_specializations():
    for n in range(0, 8):
        assert k_order(1, n) == eulerian_a(n)
        assert k_order(2, n) == second_order(n)


def test_narayana_palindromic():
    for n in range(0, 11):
        cs = narayana_a(n).coeffs(X)
        assert cs == cs[::-1]
        assert sum(cs) == comb(2 * n + 2, n + 1) // (n + 2)


def test_rising_factorial_from_normal_ordering():
    for n in range(1, 8):
        op = op_power(G_PRIME, x, n)
        assembled = sum((op[k] * z**k for k in op.orders()), Poly())
        assert substitute(assembled, {X: 1, Y: 1}) == prod((z + i for i in range(n)), start=Poly.const(1))


def test_eulerian_by_brute_force():
    for n in range(1, 6):
        des = Poly()
        for p in permutations(range(n)):
            des = des + x ** (1 + sum(a > b for a, b in zip(p, p[1:])))
        assert des == eulerian_a(n)


@given(st.integers(1, 30), st.integers(0, 12))
def test_inverse_eulerian_value_at_one(k, n):
    # A_n^(k)(1) counts the placements 1 (1+k) (1+2k) ...
    assert substitute(k_inv_eulerian(k, n), {X: 1}) == prod(1 + j * k for j in range(n))
