"""Exact multivariate Laurent polynomials with integer coefficients.

A :class:`Poly` is an immutable mapping from monomials to nonzero Python
integers.  Monomials are tuples of ``(Var, exponent)`` pairs sorted by the
variable order, so two equal polynomials always have equal internal state.

>>> x, y = Poly.var("x"), Poly.var("y")
>>> (1 + x) * (1 - x)
Poly('1 - x^2')
>>> str(x * y**2 + 4 * x**2 * y)
'x*y^2 + 4*x^2*y'
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from math import comb
from typing import NamedTuple, Union


class PolyError(ValueError):
    """Base class for polynomial errors."""


class NonInvertibleSubstitution(PolyError):
    pass


class NotSymmetric(PolyError):
    pass


class NotHomogeneous(PolyError):
    pass


class NotDivisible(PolyError):
    pass


class ParseError(PolyError):
    pass


class Var(NamedTuple):
    """A variable such as ``x`` or ``c[3]``."""

    name: str
    index: int | None = None

    @property
    def key(self) -> tuple[str, int]:
        return (self.name, -1 if self.index is None else self.index)

    def __str__(self) -> str:
        return self.name if self.index is None else f"{self.name}[{self.index}]"


Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var.key


def _vkey(item: tuple[Var, int]) -> tuple[str, int]:
    return item[0].key


def make_monomial(exps: Mapping[Var, int] | Iterable[tuple[Var, int]]) -> Monomial:
    items = exps.items() if isinstance(exps, Mapping) else exps
    return tuple(sorted(((v, e) for v, e in items if e), key=_vkey))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return make_monomial(d)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _term_key(m: Monomial):
    # graded order; ties broken by the sparse exponent list in variable order
    return (mono_degree(m), [(v.key, e) for v, e in m])


Coercible = Union["Poly", int]


class Poly:
    """Immutable exact Laurent polynomial."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash: int | None = None

    # construction --------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> Poly:
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str | Var, index: int | None = None, exp: int = 1) -> Poly:
        v = name if isinstance(name, Var) else Var(name, index)
        return cls._raw({((v, exp),): 1} if exp else {(): 1})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff: int = 1) -> Poly:
        return cls._raw({make_monomial(exps): coeff} if coeff else {})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], v: Var | str = "x") -> Poly:
        """Univariate polynomial sum(coeffs[i] * v^i)."""
        v = v if isinstance(v, Var) else Var(v)
        return cls._raw({make_monomial({v: i}): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def parse(cls, text: str) -> Poly:
        return parse_poly(text)

    @staticmethod
    def coerce(p: Coercible) -> Poly:
        if isinstance(p, Poly):
            return p
        if isinstance(p, int):
            return Poly.const(p)
        raise TypeError(f"cannot coerce {type(p).__name__} to Poly")

    # inspection ----------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in canonical (graded) order."""
        for m in sorted(self._terms, key=_term_key):
            yield m, self._terms[m]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PolyError(f"{self} is not constant")
        return self._terms.get((), 0)

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def degree(self, v: Var | str | None = None) -> int:
        """Maximal total degree, or maximal exponent of ``v``."""
        if not self._terms:
            raise PolyError("degree of zero polynomial")
        if v is None:
            return max(mono_degree(m) for m in self._terms)
        v = _as_var(v)
        return max(dict(m).get(v, 0) for m in self._terms)

    def min_degree(self, v: Var | str) -> int:
        if not self._terms:
            raise PolyError("degree of zero polynomial")
        v = _as_var(v)
        return min(dict(m).get(v, 0) for m in self._terms)

    def coeffs(self, v: Var | str = "x") -> list[int]:
        """Coefficient list of a univariate polynomial in ``v`` (nonnegative exponents)."""
        v = _as_var(v)
        if not self._terms:
            return []
        out = [0] * (self.degree(v) + 1)
        for m, c in self._terms.items():
            d = dict(m)
            if set(d) - {v} or d.get(v, 0) < 0:
                raise PolyError(f"{self} is not a polynomial in {v} alone")
            out[d.get(v, 0)] += c
        return out

    # arithmetic ----------------------------------------------------------

    def __add__(self, other: Coercible) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> Poly:
        if isinstance(other, int):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> Poly:
        return Poly.coerce(other) - self

    def __mul__(self, other: Coercible) -> Poly:
        if isinstance(other, int):
            if not other:
                return Poly()
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            return self.inverse() ** (-n)
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> Poly:
        """Inverse of a unit, i.e. a single monomial with coefficient +1 or -1."""
        if len(self._terms) != 1:
            raise NonInvertibleSubstitution(f"{self} is not a unit")
        ((m, c),) = self._terms.items()
        if c not in (1, -1):
            raise NonInvertibleSubstitution(f"{self} is not a unit")
        return Poly._raw({tuple((v, -e) for v, e in m): c})

    def exact_div(self, other: Coercible) -> Poly:
        """Divide by an integer or a monomial; raise NotDivisible on a remainder."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            out = {}
            for m, c in self._terms.items():
                q, r = divmod(c, other)
                if r:
                    raise NotDivisible(f"{self} is not divisible by {other}")
                out[m] = q
            return Poly._raw(out)
        if len(other._terms) != 1:
            raise NotDivisible("exact division only by a single term")
        ((mo, co),) = other._terms.items()
        inv = tuple((v, -e) for v, e in mo)
        return Poly._raw({mono_mul(m, inv): c for m, c in self._terms.items()}).exact_div(co)

    # comparison ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # formatting ----------------------------------------------------------

    def __str__(self) -> str:
        return format_text(self)

    def __repr__(self) -> str:
        return f"Poly({format_text(self)!r})"

    def latex(self) -> str:
        return format_latex(self)


def _as_var(v: Var | str) -> Var:
    return v if isinstance(v, Var) else Var(v)


X = Var("x")
Y = Var("y")
Z = Var("z")


# ---------------------------------------------------------------------------
# module-level operations


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def partial_derivative(p: Poly, v: Var | str) -> Poly:
    v = _as_var(v)
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        d = dict(m)
        e = d.get(v, 0)
        if e:
            d[v] = e - 1
            nm = make_monomial(d)
            out[nm] = out.get(nm, 0) + c * e
    return Poly(out)


def substitute(p: Poly, bindings: Mapping[Var | str, Coercible]) -> Poly:
    """Simultaneous substitution of polynomials for variables.

    A variable occurring with a negative exponent may only be replaced by a
    unit (one monomial with coefficient +1 or -1).
    """
    binds = {_as_var(v): Poly.coerce(q) for v, q in bindings.items()}
    powers: dict[tuple[Var, int], Poly] = {}

    def power(v: Var, e: int) -> Poly:
        key = (v, e)
        if key not in powers:
            if e < 0:
                try:
                    inv = binds[v].inverse()
                except NonInvertibleSubstitution:
                    raise NonInvertibleSubstitution(
                        f"{v} occurs with exponent {e} but its image {binds[v]} is not a unit"
                    ) from None
                powers[key] = inv ** (-e)
            else:
                powers[key] = binds[v] ** e
        return powers[key]

    out = Poly()
    for m, c in p.terms.items():
        rest = []
        term = Poly.const(c)
        for v, e in m:
            if v in binds:
                term = term * power(v, e)
            else:
                rest.append((v, e))
        if rest:
            term = term * Poly._raw({tuple(rest): 1})
        out = out + term
    return out


def coefficient_of(p: Poly, v: Var | str, e: int) -> Poly:
    """The polynomial multiplying ``v^e`` in ``p``, with ``v`` removed."""
    v = _as_var(v)
    out = {}
    for m, c in p.terms.items():
        d = dict(m)
        if d.get(v, 0) == e:
            d.pop(v, None)
            out[make_monomial(d)] = c
    return Poly(out)


def truncate(p: Poly, v: Var | str, order: int) -> Poly:
    """Drop every term whose exponent of ``v`` exceeds ``order``."""
    v = _as_var(v)
    return Poly({m: c for m, c in p.terms.items() if dict(m).get(v, 0) <= order})


def series_quotient(p: Poly, denom_var: Var | str, m: int, truncation: int) -> Poly:
    """Power series of ``p / (1 - v)^m`` in ``v`` up to and including ``v^truncation``."""
    v = _as_var(denom_var)
    if m < 1:
        raise ValueError("m must be positive")
    if p and p.min_degree(v) < 0:
        raise PolyError(f"series_quotient needs nonnegative exponents of {v}")
    parts: dict[int, Poly] = {}
    if p:
        for i in range(p.degree(v) + 1):
            ci = coefficient_of(p, v, i)
            if ci:
                parts[i] = ci
    out = Poly()
    for j in range(truncation + 1):
        acc = Poly()
        for i, ci in parts.items():
            if i <= j:
                acc = acc + ci * comb(j - i + m - 1, m - 1)
        if acc:
            out = out + acc * Poly.var(v, exp=j)
    return out


def swap(p: Poly, a: Var | str, b: Var | str) -> Poly:
    a, b = _as_var(a), _as_var(b)
    out = {}
    for m, c in p.terms.items():
        out[make_monomial((b if v == a else a if v == b else v, e) for v, e in m)] = c
    return Poly._raw(out)


def _split(p: Poly, vs: tuple[Var, ...]) -> dict[tuple[int, ...], Poly]:
    """Group ``p`` by the exponent vector of ``vs``; values are polys in the rest."""
    groups: dict[tuple[int, ...], dict[Monomial, int]] = {}
    for m, c in p.terms.items():
        d = dict(m)
        key = tuple(d.pop(v, 0) for v in vs)
        groups.setdefault(key, {})[make_monomial(d)] = c
    return {k: Poly._raw(t) for k, t in groups.items()}


def _homogeneous_degree(groups: Mapping[tuple[int, ...], Poly], vs) -> int:
    degs = {sum(k) for k in groups}
    if len(degs) > 1:
        raise NotHomogeneous(f"not homogeneous in {', '.join(map(str, vs))}: degrees {sorted(degs)}")
    return degs.pop()


def gamma_expand(p: Poly, x: Var | str, y: Var | str) -> list[tuple[int, Poly]]:
    """Coefficients g_i with p = sum_i g_i (xy)^i (x+y)^(d-2i).

    ``p`` must be homogeneous of degree d and symmetric in ``x`` and ``y``;
    the g_i are polynomials in the remaining variables.
    """
    x, y = _as_var(x), _as_var(y)
    if not p:
        return []
    if swap(p, x, y) != p:
        raise NotSymmetric(f"{p} is not symmetric in {x}, {y}")
    d = _homogeneous_degree(_split(p, (x, y)), (x, y))
    if d < 0:
        raise NotHomogeneous("gamma expansion needs a nonnegative degree")
    X_, Y_ = Poly.var(x), Poly.var(y)
    out = []
    rest = p
    while rest:
        groups = _split(rest, (x, y))
        i = min(k[0] for k in groups)
        g = groups[(i, d - i)]
        out.append((i, g))
        rest = rest - g * (X_ * Y_) ** i * (X_ + Y_) ** (d - 2 * i)
    return out


def e_expand(p: Poly, x: Var | str, y: Var | str, z: Var | str) -> list[tuple[tuple[int, int, int], int]]:
    """Expansion of a symmetric polynomial in e1, e2, e3.

    Returns ``[((i, j, k), coeff), ...]`` meaning ``coeff * e1^i e2^j e3^k``.
    """
    vs = (_as_var(x), _as_var(y), _as_var(z))
    if not p:
        return []
    if p.variables() - set(vs):
        raise PolyError("e_expand needs a polynomial in exactly the three given variables")
    a, b, c = vs
    if swap(p, a, b) != p or swap(p, b, c) != p:
        raise NotSymmetric(f"{p} is not symmetric in {a}, {b}, {c}")
    groups = _split(p, vs)
    _homogeneous_degree(groups, vs)
    if min(min(k) for k in groups) < 0:
        raise PolyError("e_expand needs nonnegative exponents")
    A, B, C = (Poly.var(v) for v in vs)
    e1, e2, e3 = A + B + C, A * B + B * C + C * A, A * B * C
    out = []
    rest = p
    while rest:
        groups = _split(rest, vs)
        lead = max(groups)  # lex order with x > y > z
        coeff = groups[lead].constant_value()
        i, j, k = lead[0] - lead[1], lead[1] - lead[2], lead[2]
        out.append(((i, j, k), coeff))
        rest = rest - coeff * e1**i * e2**j * e3**k
    out.sort()
    return out


# ---------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)(?:\[(?P<idx>\d+)\])?"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, object]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = mt.end()
        if mt.group("int") is not None:
            toks.append(("int", int(mt.group("int"))))
        elif mt.group("name") is not None:
            idx = mt.group("idx")
            toks.append(("var", Var(mt.group("name"), int(idx) if idx is not None else None)))
        else:
            toks.append(("op", mt.group("op")))
    return toks


def parse_poly(text: str) -> Poly:
    """Parse ``x*y^2 + 4*x^2*y - c[1]^3``.

    Parentheses and negative exponents (``x^-1``) are also accepted.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr() -> Poly:
        total = Poly()
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        total = total + sign * term()
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term() -> Poly:
        result = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                result = result * factor()
            elif kind in ("var", "int") or (kind == "op" and val == "("):
                result = result * factor()  # implicit product
            else:
                return result

    def exponent() -> int:
        kind, val = take()
        sign = 1
        if kind == "op" and val == "(":
            e = exponent()
            if take() != ("op", ")"):
                raise ParseError("expected ')' in exponent")
            return e
        if kind == "op" and val == "-":
            sign = -1
            kind, val = take()
        if kind != "int":
            raise ParseError("expected integer exponent")
        return sign * val

    def factor() -> Poly:
        kind, val = take()
        if kind == "int":
            base = Poly.const(val)
        elif kind == "var":
            base = Poly.var(val)
        elif kind == "op" and val == "(":
            base = expr()
            if take() != ("op", ")"):
                raise ParseError("expected ')'")
        elif val is None:
            raise ParseError(f"unexpected end of input in {text!r}")
        else:
            raise ParseError(f"unexpected token {val!r} in {text!r}")
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            base = base ** exponent()
        return base

    if not toks:
        raise ParseError("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input near token {pos}")
    return result


def _format(p: Poly, var_fmt, pow_fmt, times: str, sep_spaces: bool) -> str:
    if not p:
        return "0"
    parts = []
    for m, c in p.items():
        factors = [pow_fmt(var_fmt(v), e) for v, e in m]
        body = times.join(factors)
        mag = abs(c)
        if not body:
            s = str(mag)
        elif mag == 1:
            s = body
        else:
            s = f"{mag}{times}{body}"
        parts.append((c < 0, s))
    neg, first = parts[0]
    out = ("-" if neg else "") + first
    for neg, s in parts[1:]:
        if sep_spaces:
            out += (" - " if neg else " + ") + s
        else:
            out += ("-" if neg else "+") + s
    return out


def format_text(p: Poly) -> str:
    return _format(
        p,
        str,
        lambda b, e: b if e == 1 else f"{b}^{e}" if e > 0 else f"{b}^({e})",
        "*",
        True,
    )


def _latex_var(v: Var) -> str:
    if v.index is None:
        return v.name
    if v.index == 0 and v.name in ("c", "f"):
        return v.name
    sub = str(v.index) if v.index < 10 else "{" + str(v.index) + "}"
    return f"{v.name}_{sub}"


def format_latex(p: Poly) -> str:
    return _format(p, _latex_var, lambda b, e: b if e == 1 else f"{b}^{{{e}}}", "", False)


def to_json(p: Poly) -> dict:
    return {
        "terms": [
            {"coeff": str(c), "monomial": {str(v): e for v, e in m}} for m, c in p.items()
        ]
    }


_VAR_TEXT = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\[(\d+)\])?$")


def from_json(doc: Mapping) -> Poly:
    out: dict[Monomial, int] = {}
    for t in doc["terms"]:
        exps = {}
        for name, e in t["monomial"].items():
            mt = _VAR_TEXT.match(name)
            if not mt:
                raise ParseError(f"bad variable name {name!r}")
            exps[Var(mt.group(1), int(mt.group(2)) if mt.group(2) else None)] = int(e)
        m = make_monomial(exps)
        out[m] = out.get(m, 0) + int(t["coeff"])
    return Poly(out)
