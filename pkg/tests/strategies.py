from hypothesis import strategies as st

from gramtab.polyring import Poly, Var, make_monomial

VARS = [Var("x"), Var("y"), Var("z"), Var("c", 1)]


def monomials(exp_min=-3, exp_max=3, variables=VARS):
    return st.dictionaries(st.sampled_from(variables), st.integers(exp_min, exp_max), max_size=len(variables)).map(
        make_monomial
    )


def polys(exp_min=-3, exp_max=3, variables=VARS, max_terms=4):
    """Small Laurent polynomials: up to four variables, exponents and coefficients bounded."""
    return st.dictionaries(
        monomials(exp_min, exp_max, variables), st.integers(-9, 9), max_size=max_terms
    ).map(Poly)


def plain_polys(variables=VARS, max_terms=4, exp_max=3):
    return polys(0, exp_max, variables, max_terms)
