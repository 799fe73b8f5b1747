"""Named polynomial families and number triangles.

Most families come from a first-order differential recurrence in ``x``;
a few are defined only through a grammar and are produced by running the
grammar and normalizing the result.
"""

from __future__ import annotations

import re
from collections.abc import Callable
from dataclasses import dataclass
from math import comb, factorial

from .grammar import Grammar, derive_alternating, derive_n
from .normalorder import OutOfRange
from .polyring import X, Y, Z, Poly, partial_derivative, substitute


class UnknownFamily(KeyError):
    pass


class BadParams(ValueError):
    pass


x = Poly.var(X)
y = Poly.var(Y)
z = Poly.var(Z)


@dataclass(frozen=True)
class FamilyId:
    name: str
    params: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> FamilyId:
        """``secondOrder`` or ``kInvEulerian(2)``."""
        mt = re.fullmatch(r"\s*([A-Za-z0-9_]+)\s*(?:\(\s*([-\d,\s]*)\s*\))?\s*", text)
        if not mt:
            raise UnknownFamily(text)
        params = tuple(int(p) for p in mt.group(2).split(",") if p.strip()) if mt.group(2) else ()
        return cls(mt.group(1), params)

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(map(str, self.params))})"


def _recur(start: Poly, step: Callable[[int, Poly], Poly], n: int, first: int = 0) -> Poly:
    """Iterate ``P_{i+1} = step(i, P_i)`` from ``P_first = start`` up to ``P_n``."""
    p = start
    for i in range(first, n):
        p = step(i, p)
    return p


def _dx(p: Poly) -> Poly:
    return partial_derivative(p, X)


def eulerian_a(n: int) -> Poly:
    # A_i = i x A_{i-1} + x(1-x) A'_{i-1}
    return _recur(Poly.const(1), lambda i, p: (i + 1) * x * p + x * (1 - x) * _dx(p), n)


def eulerian_a_biv(n: int) -> Poly:
    """``sum_pi x^(des+1) y^(n-des)``, homogenized from ``A_n``."""
    if n == 0:
        return Poly.const(1)
    return _homogenize(eulerian_a(n), n + 1)


def _homogenize(p: Poly, degree: int) -> Poly:
    """``y^degree p(x/y)`` for ``p`` a polynomial in ``x``."""
    out = Poly()
    for e, c in enumerate(p.coeffs(X)):
        if c:
            out = out + Poly.monomial({X: e, Y: degree - e}, c)
    return out


def k_inv_eulerian(k: int, n: int) -> Poly:
    # A_{i+1} = (1 + i k x) A_i + k x (1-x) A_i'
    return _recur(Poly.const(1), lambda i, p: (1 + i * k * x) * p + k * x * (1 - x) * _dx(p), n)


def eulerian_b(n: int) -> Poly:
    # B_i = (1 + (2i-1) x) B_{i-1} + 2x(1-x) B'_{i-1}
    return _recur(Poly.const(1), lambda i, p: (1 + (2 * i + 1) * x) * p + 2 * x * (1 - x) * _dx(p), n)


def second_order(n: int) -> Poly:
    # C_i = (2i-1) x C_{i-1} + x(1-x) C'_{i-1}
    return _recur(Poly.const(1), lambda i, p: (2 * i + 1) * x * p + x * (1 - x) * _dx(p), n)


def second_order_tri(n: int) -> Poly:
    """``C_n(x,y,z)``: ``C_{i+1} = xyz (d/dx + d/dy + d/dz) C_i`` started from ``x``."""
    xyz = x * y * z

    def step(_: int, p: Poly) -> Poly:
        return xyz * (partial_derivative(p, X) + partial_derivative(p, Y) + partial_derivative(p, Z))

    return _recur(x, step, n)


def k_order(k: int, n: int) -> Poly:
    # C_{i+1} = (1 + k i) x C_i + x(1-x) C_i'
    return _recur(Poly.const(1), lambda i, p: (1 + k * i) * x * p + x * (1 - x) * _dx(p), n)


def flag_ap(n: int) -> Poly:
    # T_{i+1} = (x + 2 i x^2) T_i + x(1-x^2) T_i'
    return _recur(Poly.const(1), lambda i, p: (x + 2 * i * x**2) * p + x * (1 - x**2) * _dx(p), n)


def interior_peak(n: int) -> Poly:
    # W_{i+1} = (i x - x + 2) W_i + 2x(1-x) W_i', valid from i = 1
    if n <= 1:
        return Poly.const(1)
    return _recur(Poly.const(1), lambda i, p: (i * x - x + 2) * p + 2 * x * (1 - x) * _dx(p), n, first=1)


def left_peak(n: int) -> Poly:
    # L_{i+1} = (i x + 1) L_i + 2x(1-x) L_i'
    return _recur(Poly.const(1), lambda i, p: (i * x + 1) * p + 2 * x * (1 - x) * _dx(p), n)


def narayana_a(n: int) -> Poly:
    """``N(A_n, x) = sum_k C(n+1,k+1) C(n+1,k) / (n+1) x^k``."""
    coeffs = []
    for k in range(n + 1):
        num = comb(n + 1, k + 1) * comb(n + 1, k)
        if num % (n + 1):
            raise ArithmeticError(f"Narayana coefficient not integral at n={n}, k={k}")
        coeffs.append(num // (n + 1))
    return Poly.from_coeffs(coeffs)


def narayana_b(n: int) -> Poly:
    return Poly.from_coeffs([comb(n, k) ** 2 for k in range(n + 1)])


def ramanujan(n: int) -> Poly:
    # R_{i+1} = i(1+x) R_i + x^2 R_i', R_1 = 1
    if n < 1:
        raise BadParams("ramanujan starts at n = 1")
    return _recur(Poly.const(1), lambda i, p: i * (1 + x) * p + x**2 * _dx(p), n, first=1)


ANDRE_GRAMMAR = Grammar.of({"x": "x*y", "y": "x"})


def andre(n: int) -> Poly:
    """``E_n(x, y) = D^n(y)`` for the grammar ``x -> xy, y -> x``."""
    return derive_n(ANDRE_GRAMMAR, y, n)


def hermite(n: int) -> Poly:
    # H_{i+1} = 2x H_i - H_i'
    return _recur(Poly.const(1), lambda i, p: 2 * x * p - _dx(p), n)


_A = Poly.var("a")
_B = Poly.var("b")
FIRST_STEP = Grammar.of({"a": "a^2", "b": "a^2"})
LS_STEP = Grammar.of({"a": "b^3", "b": "b^3"})
MULTISET_STEP = Grammar.of({"a": "b^2", "b": "b^2"})
NARAYANA_STEP = Grammar.of({"a": "a*b", "b": "a*b"})


def _a_to_x(p: Poly) -> Poly:
    return substitute(p, {"a": x, "b": 1})


def ls_descent(n: int) -> Poly:
    """``L_n(x)``: alternate the two grammars n times on ``a``, then set ``b = 1``."""
    if n == 0:
        return Poly.const(1)
    return _a_to_x(derive_alternating([FIRST_STEP, LS_STEP], _A, n))


def multiset_descent2(n: int) -> Poly:
    """Descent polynomial of permutations of ``{1,1,2,2,...,n,n}`` (no trailing descent)."""
    if n == 0:
        return Poly.const(1)
    p = _a_to_x(derive_alternating([FIRST_STEP, MULTISET_STEP], _A, n))
    return p.exact_div(2**n).exact_div(x)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    build: Callable[..., Poly]
    bound: int
    n_params: int = 0
    min_n: int = 0


CATALOG: dict[str, FamilySpec] = {
    s.name: s
    for s in [
        FamilySpec("eulerianA", eulerian_a, 40),
        FamilySpec("eulerianA_biv", eulerian_a_biv, 40),
        FamilySpec("eulerianB", eulerian_b, 40),
        FamilySpec("kInvEulerian", k_inv_eulerian, 30, n_params=1),
        FamilySpec("secondOrder", second_order, 40),
        FamilySpec("secondOrderTri", second_order_tri, 10),
        FamilySpec("kOrder", k_order, 30, n_params=1),
        FamilySpec("flagAP", flag_ap, 30),
        FamilySpec("interiorPeak", interior_peak, 40),
        FamilySpec("leftPeak", left_peak, 40),
        FamilySpec("narayanaA", narayana_a, 200),
        FamilySpec("narayanaB", narayana_b, 200),
        FamilySpec("ramanujan", ramanujan, 30, min_n=1),
        FamilySpec("andre", andre, 16),
        FamilySpec("hermite", hermite, 60),
        FamilySpec("lsDescent", ls_descent, 10),
        FamilySpec("multisetDescent2", multiset_descent2, 10),
    ]
}


def family(fid: FamilyId | str, n: int) -> Poly:
    if isinstance(fid, str):
        fid = FamilyId.parse(fid)
    spec = CATALOG.get(fid.name)
    if spec is None:
        raise UnknownFamily(f"unknown family {fid.name!r}; known: {', '.join(CATALOG)}")
    if len(fid.params) != spec.n_params:
        raise BadParams(f"{fid.name} takes {spec.n_params} parameter(s), got {len(fid.params)}")
    if any(k < 1 for k in fid.params):
        raise BadParams(f"{fid}: parameters must be positive")
    if not spec.min_n <= n <= spec.bound:
        raise BadParams(f"{fid.name} is available for {spec.min_n} <= n <= {spec.bound}, got {n}")
    return spec.build(*fid.params, n)


TABLES = ("stirling1", "stirling2", "eulerianNum", "lah", "legendreStirling", "ramanujanImproper")


def _triangle(n: int, step: Callable[[int, int, list[int]], int]) -> list[int]:
    """Row n of a triangle with T(0,0) = 1 and T(i,k) = step(i, k, row_{i-1})."""
    row = [1]
    for i in range(1, n + 1):
        prev = row + [0]
        row = [step(i, k, prev) for k in range(i + 1)]
    return row


def _at(row: list[int], k: int) -> int:
    return row[k] if 0 <= k < len(row) else 0


def number_table(kind: str, n: int, k: int) -> int:
    if kind not in TABLES:
        raise UnknownFamily(f"unknown number table {kind!r}; known: {', '.join(TABLES)}")
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    if kind == "ramanujanImproper":
        if n < 1:
            raise OutOfRange("ramanujanImproper needs n >= 1")
        return _at(ramanujan(n).coeffs(X), k)
    steps: dict[str, Callable[[int, int, list[int]], int]] = {
        "stirling1": lambda i, j, r: _at(r, j - 1) + (i - 1) * _at(r, j),
        "stirling2": lambda i, j, r: _at(r, j - 1) + j * _at(r, j),
        "eulerianNum": lambda i, j, r: j * _at(r, j) + (i - j + 1) * _at(r, j - 1),
        "lah": lambda i, j, r: _at(r, j - 1) + (i - 1 + j) * _at(r, j),
        "legendreStirling": lambda i, j, r: _at(r, j - 1) + j * (j + 1) * _at(r, j),
    }
    return _triangle(n, steps[kind])[k]


def stirling2_row(n: int) -> list[int]:
    return [number_table("stirling2", n, k) for k in range(n + 1)]


def lah_closed(n: int, k: int) -> int:
    """``C(n-1, k-1) n! / k!`` for ``n >= 1``."""
    return comb(n - 1, k - 1) * factorial(n) // factorial(k)
