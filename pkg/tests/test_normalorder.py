from math import prod

import pytest

from gramtab.families import number_table
from gramtab.grammar import Grammar, derive, derive_n
from gramtab.normalorder import (
    JetContext,
    OutOfRange,
    a_table,
    c,
    cd_power_on_f,
    ckd_power_on_c,
    extract_F,
    extract_a,
    f,
    jet_sum_rule,
    partitions,
    project,
)
from gramtab.polyring import Poly, parse_poly, substitute

P = parse_poly

# (cD)^n f written as {k: coefficient of f_k}
TABLE = {
    1: {1: "c[0]"},
    2: {1: "c[0]*c[1]", 2: "c[0]^2"},
    3: {1: "c[0]*c[1]^2 + c[0]^2*c[2]", 2: "3*c[0]^2*c[1]", 3: "c[0]^3"},
    4: {
        1: "c[0]*c[1]^3 + 4*c[0]^2*c[1]*c[2] + c[0]^3*c[3]",
        2: "7*c[0]^2*c[1]^2 + 4*c[0]^3*c[2]",
        3: "6*c[0]^3*c[1]",
        4: "c[0]^4",
    },
}


def test_small_powers_on_f():
    for n, row in TABLE.items():
        expected = sum((P(coeff) * Poly.var(f(k)) for k, coeff in row.items()), Poly())
        assert cd_power_on_f(n) == expected


def test_powers_on_c():
    assert ckd_power_on_c(2, 3) == P("c[0]^6*c[3] + 8*c[0]^5*c[2]*c[1] + 6*c[0]^4*c[1]^3")
    assert ckd_power_on_c(1, 2) == P("c[0]*c[1]^2 + c[0]^2*c[2]")
    assert ckd_power_on_c(2, 1) == P("c[0]^2*c[1]")


def test_extract_F_and_a():
    assert extract_F(2, 2) == P("c[0]^2")
    for n in range(1, 7):
        assert extract_F(n, n) == Poly.var(c(0), exp=n)
        assert extract_a(n, ()) == 1
    assert extract_F(4, 2) == P("7*c[0]^2*c[1]^2 + 4*c[0]^3*c[2]")
    assert extract_a(4, (1, 1)) == 7
    assert extract_a(4, (2, 1)) == 4
    assert a_table(3) == {(): 1, (1,): 3, (1, 1): 1, (2,): 1}


def test_projection_examples():
    assert project("stirling2", 4, 2) == 7
    assert project("eulerian", 4, 2) == 11
    for n in range(1, 7):
        assert project("stirling1", n, n) == 1


def test_out_of_range():
    with pytest.raises(OutOfRange):
        extract_F(3, 4)
    with pytest.raises(OutOfRange):
        extract_a(3, (3,))
    with pytest.raises(OutOfRange):
        cd_power_on_f(0)
    with pytest.raises(OutOfRange):
        project("stirling2", 3, 0)


def test_partitions_order():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(0)) == [()]


def test_F_recurrences():
    ctx = JetContext(10)
    cc = Poly.var(c(0))
    for n in range(1, 8):
        now, nxt = cd_power_on_f(n, ctx), cd_power_on_f(n + 1, ctx)
        F = {k: extract_F(n, k, now) for k in range(1, n + 1)}
        assert extract_F(n + 1, 1, nxt) == cc * derive(ctx.grammar, F[1])
        for k in range(2, n + 2):
            expected = cc * F[k - 1] + (cc * derive(ctx.grammar, F[k]) if k <= n else 0)
            assert extract_F(n + 1, k, nxt) == expected


def test_projections_match_triangles():
    for n in range(1, 9):
        expansion = cd_power_on_f(n)
        for k in range(1, n + 1):
            assert project("stirling1", n, k, expansion) == number_table("stirling1", n, k)
            assert project("stirling2", n, k, expansion) == number_table("stirling2", n, k)
            assert project("eulerian", n, k, expansion) == number_table("eulerianNum", n, k)


def test_first_column_from_shifted_grammar():
    g = Grammar.parse("x[i] -> x[0]*x[i+1]")
    for n in range(1, 8):
        F1 = extract_F(n, 1)
        renamed = substitute(F1, {c(i): Poly.var("x", i) for i in range(n + 1)})
        assert derive_n(g, Poly.var("x", 0), n - 1) == renamed


def test_sum_rule():
    for k in (1, 2, 3):
        for n in range(1, 7 - k + 1 + 2):
            p = ckd_power_on_c(k, n)
            ones = substitute(p, {v: 1 for v in p.variables()})
            assert ones == jet_sum_rule(k, n) == prod(k * (i - 1) + 1 for i in range(1, n + 1))
    assert jet_sum_rule(2, 5) == 9 * 7 * 5 * 3
