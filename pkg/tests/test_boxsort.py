from math import prod

import pytest
from hypothesis import given, strategies as st

from gramtab.boxsort import (
    InvalidOwp,
    Owp,
    enumerate_owp,
    fiber_count,
    fiber_counts,
    owp_weight,
    owp_weight_sum,
    phi,
    tableau_weight,
)
from gramtab.normalorder import ckd_power_on_c
from gramtab.polyring import parse_poly
from gramtab.tableaux import Tableau, box_product, enumerate_syt

P = parse_poly
T = Tableau.parse
O = Owp.parse
OWPS = {(n, m): list(enumerate_owp(n, m)) for m, top in ((1, 6), (2, 4)) for n in range(1, top + 1)}


def test_enumeration_examples():
    assert [p.text for p in enumerate_owp(1)] == ["1|-"]
    assert len(OWPS[3, 1]) == 6
    assert [fiber_counts(3)[t] for t in enumerate_syt(3)] == [1, 2, 2, 1]
    assert len(OWPS[3, 2]) == 15
    assert owp_weight_sum(3, 2) == P("c[0]^6*c[3] + 8*c[0]^5*c[2]*c[1] + 6*c[0]^4*c[1]^3")


def test_weights():
    assert owp_weight(O("1|-")) == P("c[0]*c[1]")
    assert owp_weight(O("1,2|-|-")) == P("c[0]^2*c[2]")
    assert owp_weight(O("1|2|3|-")) == P("c[0]*c[1]^3")


def test_phi_examples():
    assert phi(O("1,3|2|-|-")) == T("1,3/2")
    assert phi(O("1,2,3|-|-|-")) == T("1,2,3")
    assert phi(O("1|2,3|-|-")) == T("1,3/2")


def test_fiber_examples():
    assert fiber_count(T("1,2,3")) == 1
    assert fiber_count(T("1,3/2")) == 2
    assert fiber_count(T("1,2/3")) == 2


def test_invalid_owps():
    for text, m in (("1|-|-", 1), ("2|1", 1), ("1|2|-", 2), ("1,2|-", 1), ("1|1|-", 1)):
        with pytest.raises(InvalidOwp):
            O(text, m)


def test_weight_sum_identity():
    for m, top in ((1, 7), (2, 6), (3, 5)):
        for n in range(1, top + 1):
            assert owp_weight_sum(n, m) == ckd_power_on_c(m, n)


def test_fiber_formula():
    for m in (1, 2):
        for n in range(1, 7):
            counts = fiber_counts(n, m)
            for t in enumerate_syt(n):
                assert counts[t] == box_product(t, m)


def test_cardinalities():
    for (n, m), ps in OWPS.items():
        assert len(ps) == prod(m * (i - 1) + 1 for i in range(1, n + 1))


@given(st.sampled_from(sorted(OWPS)).flatmap(lambda key: st.sampled_from(OWPS[key])))
def test_weight_is_preserved(p):
    assert owp_weight(p) == tableau_weight(phi(p), p.order)


@given(st.sampled_from(sorted(OWPS)).flatmap(lambda key: st.sampled_from(OWPS[key])), st.randoms())
def test_phi_ignores_order_of_equal_blocks(p, rnd):
    blocks = [b for b in p.blocks if b]
    by_len = {}
    for b in blocks:
        by_len.setdefault(len(b), []).append(b)
    for group in by_len.values():
        rnd.shuffle(group)
    shuffled = [b for length in sorted(by_len, reverse=True) for b in by_len[length]]
    rows = [list(b) for b in shuffled]
    for j in range(len(rows[0])):
        col = sorted(r[j] for r in rows if len(r) > j)
        k = 0
        for r in rows:
            if len(r) > j:
                r[j] = col[k]
                k += 1
    assert Tableau(tuple(tuple(r) for r in rows)) == phi(p)
