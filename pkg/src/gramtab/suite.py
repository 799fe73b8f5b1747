"""Identity catalog and the verification harness.

Each identity computes the same object by independent routes (operator
expansion, tableau sums, brute-force enumeration, recurrences) and compares
the results exactly.  Routes are organised in groups; every route in a group
must agree.  Side checks cover properties that are not equalities of two
polynomials, such as positivity or a closed-form count.
"""

from __future__ import annotations

import json
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from math import comb, factorial, prod

from .boxsort import owp_weight_sum
from .families import (
    FIRST_STEP,
    LS_STEP,
    MULTISET_STEP,
    NARAYANA_STEP,
    eulerian_a,
    eulerian_a_biv,
    eulerian_b,
    family,
    flag_ap,
    hermite,
    interior_peak,
    k_inv_eulerian,
    k_order,
    lah_closed,
    left_peak,
    narayana_a,
    narayana_b,
    number_table,
    second_order,
    second_order_tri,
)
from .grammar import Grammar, derive_alternating, derive_n, op_power
from .normalorder import c as cvar
from .normalorder import ckd_power_on_c, project
from .oracle import ObjectClass, euler_number, stat_poly
from .polyring import (
    X,
    Y,
    Z,
    Poly,
    Var,
    e_expand,
    format_text,
    gamma_expand,
    make_monomial,
    partial_derivative,
    series_quotient,
    substitute,
    truncate,
)
from .tableaux import Tableau, box_product, descent_stats, enumerate_syt, syt_expansion, syt_sum, weights


class UnknownIdentity(KeyError):
    pass


x = Poly.var(X)
y = Poly.var(Y)
z = Poly.var(Z)
a = Poly.var("a")
b = Poly.var("b")
u = Poly.var("u")
v = Poly.var("v")
U, V = Var("u"), Var("v")


@dataclass(frozen=True)
class Route:
    name: str
    compute: Callable[[int], Poly]
    max_n: int | None = None  # brute-force routes may stop early


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[int], str | None]  # message on failure
    max_n: int | None = None


@dataclass(frozen=True)
class Identity:
    token: str
    title: str
    n_range: tuple[int, int]
    groups: tuple[tuple[Route, ...], ...]
    checks: tuple[Check, ...] = ()

    @property
    def route_names(self) -> list[str]:
        return [r.name for g in self.groups for r in g] + [f"check: {c.name}" for c in self.checks]


@dataclass
class Mismatch:
    left_route: str
    right_route: str
    left: str
    right: str
    monomial: str


@dataclass
class CaseResult:
    identity: str
    n: int
    status: str
    millis: float
    value: str | None = None
    clearing: str | None = None
    mismatch: Mismatch | None = None
    message: str | None = None

    def to_dict(self) -> dict:
        d = {"identity": self.identity, "n": self.n, "status": self.status, "millis": round(self.millis, 3)}
        if self.value is not None:
            d["value"] = self.value
        if self.clearing is not None:
            d["clearing"] = self.clearing
        if self.mismatch is not None:
            d["mismatch"] = self.mismatch.__dict__
        if self.message is not None:
            d["message"] = self.message
        return d


@dataclass
class Report:
    identity: str
    title: str
    routes: list[str]
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def to_text(self) -> str:
        lines = [f"{self.identity}: {self.title}", "  routes: " + " | ".join(self.routes)]
        for cr in self.cases:
            line = f"  n={cr.n:<3} {cr.status:<4} {cr.millis:9.1f} ms"
            if cr.value is not None:
                line += f"  {cr.value}"
            if cr.clearing is not None:
                line += f"  [cleared by {cr.clearing}]"
            lines.append(line)
            if cr.mismatch:
                m = cr.mismatch
                lines.append(f"      {m.left_route}: {m.left}")
                lines.append(f"      {m.right_route}: {m.right}")
                lines.append(f"      first differing monomial: {m.monomial}")
            if cr.message:
                lines.append(f"      {cr.message}")
        return "\n".join(lines)


# ---- comparison ----------------------------------------------------------


def _clearing_monomial(values: Iterable[Poly]) -> tuple[dict[Var, int], Poly]:
    """Smallest monomial that makes every value a polynomial."""
    need: dict[Var, int] = {}
    for p in values:
        for m in p.terms:
            for var, e in m:
                if e < 0:
                    need[var] = max(need.get(var, 0), -e)
    return need, Poly.monomial(need)


def _least_difference(p: Poly, q: Poly) -> str:
    diff = p - q
    m, coeff = next(diff.items())
    return format_text(Poly({m: coeff}))


def run_case(ident: Identity, n: int) -> CaseResult:
    start = time.perf_counter()
    value_text = None
    clearing_text = None
    for group in ident.groups:
        routes = [r for r in group if r.max_n is None or n <= r.max_n]
        values = [r.compute(n) for r in routes]
        need, factor = _clearing_monomial(values)
        if need:
            values = [p * factor for p in values]
            clearing_text = format_text(factor)
        if value_text is None and values:
            value_text = format_text(values[0])
        for r, val in zip(routes[1:], values[1:]):
            if val != values[0]:
                return CaseResult(
                    ident.token,
                    n,
                    "fail",
                    (time.perf_counter() - start) * 1000,
                    value_text,
                    clearing_text,
                    Mismatch(routes[0].name, r.name, format_text(values[0]), format_text(val),
                             _least_difference(values[0], val)),
                )
    for chk in ident.checks:
        if chk.max_n is not None and n > chk.max_n:
            continue
        msg = chk.run(n)
        if msg:
            return CaseResult(ident.token, n, "fail", (time.perf_counter() - start) * 1000, value_text,
                              clearing_text, message=f"{chk.name}: {msg}")
    return CaseResult(ident.token, n, "pass", (time.perf_counter() - start) * 1000, value_text, clearing_text)


def verify(token: str, n_range: tuple[int, int] | None = None) -> Report:
    ident = CATALOG.get(token)
    if ident is None:
        raise UnknownIdentity(f"unknown identity {token!r}; known: {', '.join(CATALOG)}")
    lo, hi = n_range or ident.n_range
    report = Report(ident.token, ident.title, ident.route_names)
    for n in range(lo, hi + 1):
        report.cases.append(run_case(ident, n))
    return report


def verify_all(n_max: int | None = None) -> list[Report]:
    out = []
    for ident in CATALOG.values():
        lo, hi = ident.n_range
        out.append(verify(ident.token, (lo, min(hi, n_max) if n_max is not None else hi)))
    return out


def reports_to_json(reports: Sequence[Report]) -> str:
    return json.dumps([c.to_dict() for r in reports for c in r.cases], indent=2)


# ---- small helpers -------------------------------------------------------


def _homogenize(p: Poly, degree: int, lo: Poly = x, hi: Poly = y) -> Poly:
    """``hi^degree p(lo/hi)`` for ``p`` a polynomial in ``x``."""
    out = Poly()
    for e, coeff in enumerate(p.coeffs(X)):
        if coeff:
            out = out + coeff * lo**e * hi ** (degree - e)
    return out


def _at_x(p: Poly, var: str, other: str) -> Poly:
    """Set ``var -> x`` and ``other -> 1``."""
    return substitute(p, {var: x, other: 1})


def _sq(p: Poly) -> Poly:
    return substitute(p, {X: x**2})


def _weigh(p: Poly, var: Var, weight: Callable[[int], int]) -> Poly:
    """Replace ``var^e`` by the integer ``weight(e)``."""
    out: dict = {}
    for m, coeff in p.terms.items():
        e = dict(m).get(var, 0)
        rest = make_monomial((w, f) for w, f in m if w != var)
        out[rest] = out.get(rest, 0) + coeff * weight(e)
    return Poly(out)


def _dx(p: Poly) -> Poly:
    return partial_derivative(p, X)


def _op_as_poly(op, marker: Poly = z) -> Poly:
    return sum((p * marker**k for k, p in op.by_order.items()), Poly())


def _cjet(i: int) -> Poly:
    return Poly.var(cvar(i))


def _sum_sigma_x(n: int, exponent: Callable[[Tableau], int], m: int = 1, max_cols: int | None = None) -> Poly:
    return syt_sum(n, lambda T: x ** exponent(T), m, max_cols)


# ---- T5.1 ----------------------------------------------------------------


def _t51() -> Identity:
    return Identity(
        "T5.1",
        "(cD)^n c by jet derivation, box placements, and box sorting indices",
        (1, 7),
        ((
            Route("jet derivation", lambda n: ckd_power_on_c(1, n)),
            Route("OWP weight sum", lambda n: owp_weight_sum(n, 1)),
            Route("SYT sigma formula", lambda n: syt_expansion(n, 1, _cjet(0), _cjet)),
        ),),
        (Check("sum of sigma products is n!",
               lambda n: None if sum(box_product(T) for T in enumerate_syt(n)) == factorial(n) else "wrong total"),),
    )


# ---- T6.1 Ramanujan -------------------------------------------------------

RAMANUJAN_GRAMMAR = Grammar.of({"x": "x^3*y", "y": "x*y^2"})


def _alpha(i: int) -> Poly:
    return Poly.from_coeffs([comb(i, j) * factorial(j) for j in range(i + 1)])


def _t61() -> Identity:
    return Identity(
        "T6.1",
        "Ramanujan polynomials R_n: recurrence, grammar, tableaux, improper edges",
        (2, 6),
        ((
            Route("recurrence", lambda n: family("ramanujan", n)),
            Route("grammar x->x^3y, y->xy^2", lambda n: substitute(
                derive_n(RAMANUJAN_GRAMMAR, x * y, n - 1).exact_div((x * y) ** n), {Y: 1})),
            Route("SYT sigma formula with binomial jets", lambda n: syt_expansion(n - 1, 1, Poly.const(1), _alpha)),
            Route("rooted tree improper edges", lambda n: stat_poly("rootedLabeledTree", n, ["improper"]), max_n=6),
        ),),
    )


# ---- T6.2 Andre -----------------------------------------------------------


def _t62() -> Identity:
    def syt_route(n: int) -> Poly:
        def term(T: Tableau) -> Poly:
            w, _ = weights(T)
            return x ** (n + 1 - w.get(1, 0) - w.get(2, 0)) * y ** w.get(1, 0)

        return syt_sum(n, term, max_cols=2)

    def euler_check(n: int) -> str | None:
        val = substitute(family("andre", n + 1), {X: 1, Y: 1})
        want = euler_number(n + 1)
        return None if val == want else f"E_{n + 1}(1,1) = {val}, expected {want}"

    return Identity(
        "T6.2",
        "Andre polynomials E_{n+1}(x,y) over tableaux with at most two columns",
        (1, 8),
        ((
            Route("grammar x->xy, y->x", lambda n: family("andre", n + 1)),
            Route("SYT(n;2) sigma formula", syt_route),
            Route("0-1-2 increasing trees", lambda n: stat_poly("incTree012", n + 1, ["leaves", "deg1"]), max_n=8),
        ),),
        (Check("E_n(1,1) is the Euler number", euler_check, max_n=7),),
    )


# ---- T6.3 peaks -----------------------------------------------------------


def _t63a() -> Identity:
    def syt_route(n: int) -> Poly:
        def term(T: Tableau) -> Poly:
            w, _ = weights(T)
            odd = sum(k for i, k in w.items() if i % 2)
            return x ** ((n - odd) // 2)

        return syt_sum(n, term)

    return Identity(
        "T6.3a",
        "left peak polynomials L_n",
        (1, 7),
        ((
            Route("recurrence", left_peak),
            Route("SYT sigma formula", syt_route),
            Route("lpk over permutations", lambda n: stat_poly("permutation", n, ["lpk"])),
        ),),
    )


def _t63b() -> Identity:
    def syt_route(n: int) -> Poly:
        return syt_sum(n, lambda T: 2**T.length * x ** (n - T.length), max_cols=2)

    return Identity(
        "T6.3b",
        "interior peak polynomials W_{n+1}",
        (1, 7),
        ((
            Route("recurrence", lambda n: interior_peak(n + 1)),
            Route("SYT(n;2) sigma formula", syt_route),
            Route("ipk over permutations", lambda n: stat_poly("permutation", n + 1, ["ipk"])),
            Route("convolution of left peak polynomials",
                  lambda n: sum((comb(n, k) * left_peak(k) * left_peak(n - k) for k in range(n + 1)), Poly())),
        ),),
    )


# ---- T6.4 Eulerian --------------------------------------------------------


def _t64() -> Identity:
    def biv_syt(n: int) -> Poly:
        def term(T: Tableau) -> Poly:
            w, _ = weights(T)
            w1, w2 = w.get(1, 0), w.get(2, 0)
            return 2**w2 * (x * y) ** (n + 1 - w1 - w2) * (x + y) ** w1

        return syt_sum(n, term, max_cols=2)

    def reversed_1k(n: int) -> Poly:
        return x**n * substitute(k_inv_eulerian(1, n), {X: x ** -1})

    return Identity(
        "T6.4",
        "Eulerian polynomials A_n(x) and bivariate A_{n+1}(x,y) over tableaux",
        (1, 7),
        (
            (
                Route("recurrence", eulerian_a),
                Route("SYT x^(n+1-l)", lambda n: _sum_sigma_x(n, lambda T: n + 1 - T.length)),
                Route("SYT x^l", lambda n: _sum_sigma_x(n, lambda T: T.length)),
                Route("x^n A_n^(1)(1/x)", reversed_1k),
                Route("descents over permutations", lambda n: x * stat_poly("permutation", n, ["des"])),
            ),
            (
                Route("bivariate recurrence", lambda n: eulerian_a_biv(n + 1)),
                Route("SYT(n;2) bivariate formula", biv_syt),
                Route("x^(des+1) y^(n-des) over permutations",
                      lambda n: x * y ** (n + 1) * substitute(stat_poly("permutation", n + 1, ["des"]), {X: x * y ** -1})),
            ),
        ),
    )


# ---- T6.5 1/2-Eulerian ------------------------------------------------------


def _explicit_1k(k: int, n: int) -> Poly:
    return sum(
        (number_table("stirling2", n, i) * k ** (n - i) * prod(1 + j * k for j in range(i)) * (x - 1) ** (n - i)
         for i in range(1, n + 1)),
        Poly(),
    )


def _exc_cyc(k: int, n: int) -> Poly:
    return _weigh(stat_poly("permutation", n, {"exc": "x", "cyc": "y"}), Y, lambda e: k ** (n - e))


def _t65() -> Identity:
    def w_jet(i: int) -> Poly:
        return x ** (i - 1) * substitute(interior_peak(i), {X: x ** -1})

    return Identity(
        "T6.5",
        "1/2-Eulerian polynomials A_n^(2) via interior peak jets",
        (1, 6),
        ((
            Route("recurrence", lambda n: k_inv_eulerian(2, n)),
            Route("SYT sigma formula with jets x^(i-1) W_i(1/x)", lambda n: syt_expansion(n, 1, Poly.const(1), w_jet)),
            Route("explicit Stirling formula", lambda n: _explicit_1k(2, n)),
            Route("x^exc 2^(n-cyc) over permutations", lambda n: _exc_cyc(2, n), max_n=8),
            Route("ascent-plateaux over Stirling permutations",
                  lambda n: stat_poly(ObjectClass("stirlingPermutation", (2,)), n, ["ap"]), max_n=6),
        ),),
    )


# ---- T6.6 type B ------------------------------------------------------------

TYPE_B_GRAMMAR = Grammar.of({"a": "a*b^2", "b": "a^2*b"})


def _b_jet(i: int) -> Poly:
    if i % 2:
        return 4 ** ((i - 1) // 2) * (1 + x**2)
    return 4 ** (i // 2) * x


def _t66() -> Identity:
    return Identity(
        "T6.6",
        "type B Eulerian polynomials in the form x B_n(x^2)",
        (1, 6),
        ((
            Route("recurrence", lambda n: x * _sq(eulerian_b(n))),
            Route("SYT sigma formula", lambda n: syt_expansion(n, 1, x, _b_jet)),
            Route("grammar a->ab^2, b->a^2b on ab", lambda n: _at_x(derive_n(TYPE_B_GRAMMAR, a * b, n), "a", "b")),
            Route("type B descents", lambda n: x * _sq(stat_poly("signedPermutation", n, ["desB"])), max_n=6),
        ),),
    )


# ---- T6.7 second-order ------------------------------------------------------

STIRLING2 = ObjectClass("stirlingPermutation", (2,))


def _t67a() -> Identity:
    return Identity(
        "T6.7a",
        "bivariate second-order Eulerian C_n(x,y) with jets A_i(x,y)",
        (1, 6),
        ((
            Route("homogenized recurrence", lambda n: _homogenize(second_order(n), 2 * n + 1)),
            Route("SYT sigma formula with jets A_i(x,y)", lambda n: syt_expansion(n, 1, y, eulerian_a_biv)),
            Route("x^des y^(2n+1-des) over Stirling permutations",
                  lambda n: _homogenize(stat_poly(STIRLING2, n, ["des"]), 2 * n + 1), max_n=6),
        ),),
    )


def _t67b() -> Identity:
    return Identity(
        "T6.7b",
        "second-order Eulerian C_n(x) with jets i!",
        (1, 7),
        ((
            Route("recurrence", second_order),
            Route("SYT sigma formula with jets i!", lambda n: syt_expansion(n, 1, x, lambda i: Poly.const(factorial(i)))),
        ),),
    )


def _t67c() -> Identity:
    jets = {1: x * y + y * z + z * x, 2: 2 * (x + y + z), 3: Poly.const(6)}
    return Identity(
        "T6.7c",
        "trivariate second-order Eulerian C_{n+1}(x,y,z) over tableaux with at most three columns",
        (1, 5),
        ((
            Route("Dumont recurrence", lambda n: second_order_tri(n + 1)),
            Route("SYT(n;3) sigma formula", lambda n: syt_expansion(n, 1, x * y * z, jets, max_cols=3)),
            Route("asc/des/plat over Stirling permutations",
                  lambda n: stat_poly(STIRLING2, n + 1, ["asc", "des", "plat"]), max_n=5),
        ),),
    )


def _t67d() -> Identity:
    return Identity(
        "T6.7d",
        "second-order Eulerian C_n(x) from second-order box sorting indices",
        (1, 6),
        ((
            Route("recurrence", second_order),
            Route("SYT delta formula", lambda n: _sum_sigma_x(n, lambda T: T.length, m=2)),
            Route("descents over Stirling permutations", lambda n: stat_poly(STIRLING2, n, ["des"]), max_n=6),
        ),),
    )


def _t67e() -> Identity:
    groups = tuple(
        (
            Route(f"k-order recurrence, m={m}", lambda n, m=m: k_order(m, n)),
            Route(f"SYT order-{m} index formula", lambda n, m=m: _sum_sigma_x(n, lambda T: T.length, m=m)),
            Route(f"descents over {m}-Stirling permutations",
                  lambda n, m=m: stat_poly(ObjectClass("stirlingPermutation", (m,)), n, ["des"])),
        )
        for m in (1, 2, 3)
    )

    def count_check(n: int) -> str | None:
        for m in (1, 2, 3):
            total = sum(box_product(T, m) for T in enumerate_syt(n))
            want = prod(m * (i - 1) + 1 for i in range(1, n + 1))
            if total != want:
                return f"m={m}: index products sum to {total}, expected {want}"
        return None

    return Identity(
        "T6.7e",
        "k-order Eulerian C_n(x;m) from order-m box sorting indices",
        (1, 5),
        groups,
        (Check("index products count the box placements", count_check),),
    )


# ---- T6.8 Narayana ----------------------------------------------------------

NARAYANA_A_GRAMMAR = Grammar.of({"x": "x^2*y^3", "y": "x^3*y^2"})
NARAYANA_A_JET_GRAMMAR = Grammar.of({"x": "y^3", "y": "x*y^2"})


def _binary_word_jet(i: int) -> Poly:
    out = Poly()
    for j in range(i + 1):
        e = 2 * j - i
        if 0 <= e <= i + 1:
            out = out + factorial(i) * comb(i + 1, e) * x**e
    return out


def _t68a() -> Identity:
    def jet_check(n: int) -> str | None:
        got = substitute(derive_n(NARAYANA_A_JET_GRAMMAR, x**2, n), {Y: 1})
        return None if got == _binary_word_jet(n) else f"jet {n} is {got}"

    return Identity(
        "T6.8a",
        "(n+1)! x^(n+2) N(A_{n-1}, x^2) from binary-word jets",
        (1, 6),
        ((
            Route("closed form", lambda n: factorial(n + 1) * x ** (n + 2) * _sq(narayana_a(n - 1))),
            Route("SYT sigma formula", lambda n: syt_expansion(n, 1, x**2, _binary_word_jet)),
            Route("grammar x->x^2y^3, y->x^3y^2 on x^2",
                  lambda n: substitute(derive_n(NARAYANA_A_GRAMMAR, x**2, n), {Y: 1})),
        ),),
        (Check("jets match the grammar x->y^3, y->xy^2", jet_check),),
    )


def _t68b() -> Identity:
    return Identity(
        "T6.8b",
        "type B Narayana n! N(B_n, x) via type B Eulerian jets, and x-squared delta form",
        (1, 5),
        (
            (
                Route("closed form n! N(B_n,x)", lambda n: factorial(n) * narayana_b(n)),
                Route("SYT sigma formula with jets B_i(x)", lambda n: syt_expansion(n, 1, Poly.const(1), eulerian_b)),
            ),
            (
                Route("closed form n! x^(n+1) N(B_n,x^2)", lambda n: factorial(n) * x ** (n + 1) * _sq(narayana_b(n))),
                Route("SYT delta formula", lambda n: syt_expansion(n, 2, x, _b_jet)),
                Route("grammar x->x^2y^3, y->x^3y^2 on xy",
                      lambda n: substitute(derive_n(NARAYANA_A_GRAMMAR, x * y, n), {Y: 1})),
            ),
        ),
    )


# ---- alternating grammars ------------------------------------------------


def _t31() -> Identity:
    def closed(n: int) -> Poly:
        return factorial(n) * factorial(n + 1) * a ** (n + 1) * _homogenize(narayana_a(n - 1), n, a, b)

    def palindrome(n: int) -> str | None:
        cs = narayana_a(n - 1).coeffs(X)
        return None if cs == cs[::-1] else f"coefficients {cs} are not palindromic"

    return Identity(
        "T3.1",
        "alternating grammars for the Narayana polynomials",
        (1, 8),
        ((
            Route("closed form", closed),
            Route("alternating grammars on a", lambda n: derive_alternating([FIRST_STEP, NARAYANA_STEP], a, n)),
            Route("alternating grammars on b", lambda n: derive_alternating([FIRST_STEP, NARAYANA_STEP], b, n)),
        ),),
        (Check("N(A_{n-1}, x) is palindromic", palindrome),),
    )


def _t32() -> Identity:
    def oracle(n: int) -> Poly:
        p = stat_poly(ObjectClass("multisetPermutation", (2,)), n, ["mdes"])
        return 2**n * a * _homogenize(p, 2 * n, a, b)

    return Identity(
        "T3.2",
        "alternating grammars for descents of permutations of {1,1,...,n,n}",
        (1, 5),
        ((
            Route("alternating grammars on a", lambda n: derive_alternating([FIRST_STEP, MULTISET_STEP], a, n)),
            Route("alternating grammars on b", lambda n: derive_alternating([FIRST_STEP, MULTISET_STEP], b, n)),
            Route("multiset descents", oracle, max_n=5),
            Route("family multisetDescent2",
                  lambda n: 2**n * a * _homogenize(family("multisetDescent2", n), 2 * n, a, b)),
        ),),
    )


def _ls_series(n: int, order: int) -> Poly:
    return Poly.from_coeffs([number_table("legendreStirling", m + n, m) for m in range(order + 1)])


def _t33() -> Identity:
    def from_series(n: int) -> Poly:
        top = 3 * n
        return truncate((1 - x) ** (3 * n + 1) * _ls_series(n, top), X, top)

    def quotient_check(n: int) -> str | None:
        got = series_quotient(family("lsDescent", n), X, 3 * n + 1, 6)
        want = _ls_series(n, 6)
        return None if got == want else f"series {got} differs from {want}"

    return Identity(
        "T3.3",
        "Legendre-Stirling descent polynomials L_n",
        (1, 5),
        (
            (
                Route("alternating grammars on a", lambda n: _at_x(derive_alternating([FIRST_STEP, LS_STEP], a, n), "a", "b")),
                Route("alternating grammars on b", lambda n: _at_x(derive_alternating([FIRST_STEP, LS_STEP], b, n), "a", "b")),
                Route("(1-x)^(3n+1) times the LS(m+n, m) series", from_series),
            ),
        ),
        (Check("series quotient reproduces LS(m+n, m) to order 6", quotient_check),),
    )


# ---- normal ordered grammars -------------------------------------------

G_PRIME = Grammar.of({"x": "y", "y": "y"})
G_DOUBLE = Grammar.of({"x": 1, "y": 1})
G_TRIPLE = Grammar.of({"u": "v", "v": 2})


def forest_triangle(n: int, full: bool) -> dict[tuple[int, int], int]:
    """``A_{n,k,l}`` (binary forests) or ``a_{n,k,l}`` (full binary forests) by recurrence."""
    t = {(1, 1): 1}
    for m in range(1, n):
        nxt: dict[tuple[int, int], int] = {}
        for k in range(1, m + 2):
            for ell in range(k, m + 2):
                shift = k if full else 0
                val = (ell * t.get((k, ell), 0) + (m + shift - ell + 1) * t.get((k, ell - 1), 0)
                       + t.get((k - 1, ell - 1), 0))
                if val:
                    nxt[(k, ell)] = val
        t = nxt
    return t


def gamma_triangle(n: int) -> dict[tuple[int, int], int]:
    t = {(1, 1): 1}
    for m in range(1, n):
        nxt: dict[tuple[int, int], int] = {}
        for k in range(1, m + 2):
            for ell in range(k, (m + 1 + k) // 2 + 1):
                val = (ell * t.get((k, ell), 0) + 2 * (m + k - 2 * ell + 2) * t.get((k, ell - 1), 0)
                       + t.get((k - 1, ell - 1), 0))
                if val:
                    nxt[(k, ell)] = val
        t = nxt
    return t


def binary_forest_poly(n: int) -> Poly:
    """``A_n(x,y,z) = sum A_{n,k,l} x^l y^(n-l) z^k``."""
    return sum((c * x**ell * y ** (n - ell) * z**k for (k, ell), c in forest_triangle(n, False).items()), Poly())


def full_forest_poly(n: int) -> Poly:
    """``a_n(x,y,z) = sum a_{n,k,l} x^l y^(n+k-l) z^k``."""
    return sum((c * x**ell * y ** (n + k - ell) * z**k for (k, ell), c in forest_triangle(n, True).items()), Poly())


def gamma_poly(n: int) -> Poly:
    """``sum gamma(n,k,l) u^l v^(n+k-2l) z^k``."""
    return sum((c * u**ell * v ** (n + k - 2 * ell) * z**k for (k, ell), c in gamma_triangle(n).items()), Poly())


def gamma_from_expansion(n: int) -> Poly:
    """Gamma coefficients read off each ``D^k`` coefficient of ``(xy D)^n``."""
    out = Poly()
    for k, p in op_power(G_DOUBLE, x * y, n).by_order.items():
        for i, coeff in gamma_expand(p, X, Y):
            out = out + coeff * u**i * v ** (n + k - 2 * i) * z**k
    return out


def gamma_from_lists(n: int) -> Poly:
    raw = stat_poly("listPartition", n, {"lists": "z", "val": "t", "dd": "d"})
    out = Poly()
    for m, coeff in raw.terms.items():
        e = dict((var.name, f) for var, f in m)
        if e.get("d", 0):
            continue
        k, i = e.get("z", 0), e.get("t", 0)
        out = out + coeff * u ** (k + i) * v ** (n - k - 2 * i) * z**k
    return out


def _t41() -> Identity:
    def rising(n: int) -> str | None:
        got = substitute(binary_forest_poly(n), {X: 1, Y: 1})
        want = prod((z + i for i in range(n)), start=Poly.const(1))
        return None if got == want else f"A_n(1,1,z) = {got}"

    def stirling_diagonal(n: int) -> str | None:
        t = forest_triangle(n, False)
        bad = [k for k in range(1, n + 1) if t.get((k, k), 0) != number_table("stirling2", n, k)]
        return f"diagonal differs at k={bad}" if bad else None

    def eulerian_column(n: int) -> str | None:
        t = forest_triangle(n + 1, False)
        bad = [ell for ell in range(1, n + 1) if t.get((1, ell), 0) != number_table("eulerianNum", n, ell)]
        return f"first column differs at l={bad}" if bad else None

    def genfun(n: int) -> Poly:
        p = Poly.const(1)
        for m in range(n):
            p = x * (m + z) * p + x * (y - x) * _dx(p)
        return p

    return Identity(
        "T4.1",
        "normal ordered (x D)^n for x->y, y->y and the binary forest triangle",
        (1, 8),
        ((
            Route("normal ordering", lambda n: _op_as_poly(op_power(G_PRIME, x, n))),
            Route("forest recurrence", binary_forest_poly),
            Route("generating function recurrence", genfun),
        ),),
        (
            Check("A_n(1,1,z) is the rising factorial", rising),
            Check("A_{n,k,k} are Stirling numbers of the second kind", stirling_diagonal),
            Check("A_{n+1,1,l} are Eulerian numbers", eulerian_column),
        ),
    )


def _t42() -> Identity:
    def lah(n: int) -> str | None:
        got = substitute(full_forest_poly(n), {X: 1, Y: 1})
        want = sum((lah_closed(n, k) * z**k for k in range(1, n + 1)), Poly())
        return None if got == want else f"a_n(1,1,z) = {got}"

    def nonneg(n: int) -> str | None:
        neg = {kl: c for kl, c in gamma_triangle(n).items() if c < 0}
        return f"negative gamma coefficients {neg}" if neg else None

    return Identity(
        "T4.2",
        "normal ordered (xy D)^n for x->1, y->1: full binary forests and partial gamma-positivity",
        (1, 8),
        (
            (
                Route("normal ordering", lambda n: _op_as_poly(op_power(G_DOUBLE, x * y, n))),
                Route("full forest recurrence", full_forest_poly),
                Route("lists: x^asc y^des z^lists", lambda n: stat_poly("listPartition", n, {"asc": "x", "des": "y", "lists": "z"}), max_n=6),
            ),
            (
                Route("gamma recurrence", gamma_poly),
                Route("normal ordering of (uD)^n for u->v, v->2", lambda n: _op_as_poly(op_power(G_TRIPLE, u, n))),
                Route("gamma expansion of each D^k coefficient", gamma_from_expansion),
                Route("lists with valleys and no double descents", gamma_from_lists, max_n=6),
            ),
        ),
        (Check("a_n(1,1,z) gives Lah numbers", lah), Check("gamma coefficients are nonnegative", nonneg)),
    )


# ---- P1.x -----------------------------------------------------------------

STIRLING2_GRAMMAR = Grammar.of({"a": "a*b", "b": "b"})
STIRLING1_GRAMMAR = Grammar.of({"a": "a*b", "b": "b*c", "c": "c^2"})
X_TO_ONE = Grammar.of({"x": 1})


def _p1x() -> Identity:
    cc = Poly.var("c")

    def projections(n: int) -> str | None:
        for kind, table in (("stirling1", "stirling1"), ("stirling2", "stirling2"), ("eulerian", "eulerianNum")):
            for k in range(1, n + 1):
                got, want = project(kind, n, k), number_table(table, n, k)
                if got != want:
                    return f"{kind}({n},{k}) = {got}, expected {want}"
        return None

    return Identity(
        "P1.x",
        "Stirling grammars, normal ordering of x d/dx, and projections of (cD)^n f",
        (1, 8),
        (
            (
                Route("grammar a->ab, b->b", lambda n: derive_n(STIRLING2_GRAMMAR, a, n)),
                Route("a sum S(n,k) b^k", lambda n: a * sum((number_table("stirling2", n, k) * b**k for k in range(n + 1)), Poly())),
            ),
            (
                Route("grammar a->ab, b->bc, c->c^2", lambda n: derive_n(STIRLING1_GRAMMAR, a, n)),
                Route("a sum c(n,k) b^k c^(n-k)",
                      lambda n: a * sum((number_table("stirling1", n, k) * b**k * cc ** (n - k) for k in range(n + 1)), Poly())),
            ),
            (
                Route("normal ordering of (x D)^n, x->1", lambda n: _op_as_poly(op_power(X_TO_ONE, x, n))),
                Route("sum S(n,k) x^k D^k", lambda n: sum((number_table("stirling2", n, k) * x**k * z**k for k in range(n + 1)), Poly())),
            ),
        ),
        (Check("a(n, lambda) projections give Stirling and Eulerian numbers", projections, max_n=7),),
    )


# ---- E3.x -----------------------------------------------------------------

SECOND_ORDER_GRAMMAR = Grammar.of({"a": "a*b^2", "b": "a*b^2"})
FLAG_GRAMMAR = Grammar.of({"c": "a*b*c", "a": "a*b^2", "b": "a^2*b"})
HERMITE_GRAMMAR = Grammar.of({"a": "2*a*b", "b": -1})


def _inv_grammar(k: int) -> Grammar:
    return Grammar.of({"a": f"a*b^{k}", "b": f"a^{k}*b"})


def _e3x() -> Identity:
    cc = Poly.var("c")

    def frobenius(n: int) -> Poly:
        return sum((factorial(k) * number_table("stirling2", n, k) * x**k * (1 - x) ** (n - k) for k in range(n + 1)), Poly())

    def inv_closed(k: int, n: int) -> Poly:
        out = Poly()
        for j, coeff in enumerate(k_inv_eulerian(k, n).coeffs(X)):
            out = out + coeff * a ** (1 + k * j) * b ** (k * n - k * j)
        return out

    groups: list[tuple[Route, ...]] = [
        (Route("Eulerian recurrence", eulerian_a), Route("Frobenius formula", frobenius)),
    ]
    for k in (1, 2, 3):
        groups.append((
            Route(f"1/{k}-Eulerian recurrence in a, b", lambda n, k=k: inv_closed(k, n)),
            Route(f"grammar a->ab^{k}, b->a^{k}b", lambda n, k=k: derive_n(_inv_grammar(k), a, n)),
        ))
        groups.append((
            Route(f"1/{k}-Eulerian recurrence", lambda n, k=k: k_inv_eulerian(k, n)),
            Route("explicit Stirling formula", lambda n, k=k: _explicit_1k(k, n)),
            Route(f"x^exc {k}^(n-cyc) over permutations", lambda n, k=k: _exc_cyc(k, n), max_n=7),
        ))
    groups += [
        (
            Route("type B recurrence a b^(2n+1) B_n(a^2/b^2)",
                  lambda n: a * b ** (2 * n + 1) * substitute(eulerian_b(n), {X: a**2 * b**-2})),
            Route("grammar a->ab^2, b->a^2b on ab", lambda n: derive_n(TYPE_B_GRAMMAR, a * b, n)),
        ),
        (
            Route("second-order recurrence b^(2n+1) C_n(a/b)", lambda n: _homogenize(second_order(n), 2 * n + 1, a, b)),
            Route("grammar a->ab^2, b->ab^2", lambda n: derive_n(SECOND_ORDER_GRAMMAR, a, n)),
        ),
        (
            Route("flag recurrence c b^(2n) T_n(a/b)", lambda n: cc * _homogenize(flag_ap(n), 2 * n, a, b)),
            Route("grammar c->abc, a->ab^2, b->a^2b", lambda n: derive_n(FLAG_GRAMMAR, cc, n)),
        ),
        (
            Route("flag recurrence T_{n+1}", lambda n: flag_ap(n + 1)),
            Route("convolution with type B", lambda n: x * sum(
                (comb(n, k) * flag_ap(k) * _sq(eulerian_b(n - k)) for k in range(n + 1)), Poly())),
        ),
        (
            Route("Hermite recurrence a H_n(b)", lambda n: a * substitute(hermite(n), {X: b})),
            Route("grammar a->2ab, b->-1", lambda n: derive_n(HERMITE_GRAMMAR, a, n)),
        ),
    ]
    return Identity("E3.x", "grammars from the differential operator method", (1, 8), tuple(groups))


# ---- C6.x -----------------------------------------------------------------


def _c6x() -> Identity:
    def e_positive(n: int) -> str | None:
        p = second_order_tri(n)
        exp = e_expand(p, X, Y, Z)
        bad = [(ijk, c) for ijk, c in exp if c < 0 or ijk[0] + 2 * ijk[1] + 3 * ijk[2] != 2 * n + 1]
        if bad:
            return f"bad e-coefficients {bad}"
        e1, e2, e3 = x + y + z, x * y + y * z + z * x, x * y * z
        back = sum((c * e1**i * e2**j * e3**k for (i, j, k), c in exp), Poly())
        return None if back == p else "e-expansion does not reproduce the polynomial"

    def rsk(n: int) -> Poly:
        # number of SYT of each shape, times descents of every tableau of that shape
        counts: dict[tuple[int, ...], int] = {}
        by_shape: dict[tuple[int, ...], Poly] = {}
        for T in enumerate_syt(n):
            counts[T.shape] = counts.get(T.shape, 0) + 1
            by_shape[T.shape] = by_shape.get(T.shape, Poly()) + x ** (descent_stats(T)[1] + 1)
        return sum((counts[s] * by_shape[s] for s in counts), Poly())

    return Identity(
        "C6.x",
        "e-positivity of C_n(x,y,z) and the tableau descent identity for A_n(x)",
        (1, 6),
        ((Route("Eulerian recurrence", eulerian_a), Route("SYT descents weighted by shape counts", rsk)),),
        (Check("e-expansion of C_n(x,y,z) is nonnegative", e_positive),),
    )


CATALOG: dict[str, Identity] = {
    ident.token: ident
    for ident in (
        _t51(), _t61(), _t62(), _t63a(), _t63b(), _t64(), _t65(), _t66(),
        _t67a(), _t67b(), _t67c(), _t67d(), _t67e(), _t68a(), _t68b(),
        _t31(), _t32(), _t33(), _t41(), _t42(), _p1x(), _e3x(), _c6x(),
    )
}
