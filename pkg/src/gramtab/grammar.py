"""Context-free grammars as formal derivations.

A grammar maps each letter to a (Laurent) polynomial.  Its formal
derivative ``D_G`` is the unique derivation extending those rules, so it is
linear and obeys the product rule on every monomial.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

from .polyring import Coercible, Monomial, Poly, PolyError, Var, make_monomial, parse_poly


class GrammarError(PolyError):
    pass


class UnknownVariable(GrammarError):
    pass


class IndexLimitExceeded(GrammarError):
    pass


@dataclass(frozen=True)
class IndexedRule:
    """Rule family ``name[i] -> image(i)`` for ``0 <= i <= max_index``."""

    name: str
    image: Callable[[int], Poly]
    max_index: int

    @classmethod
    def from_template(cls, name: str, template: str, max_index: int) -> IndexedRule:
        """Build from text such as ``c[i+1]`` or ``x[0]*x[i+1]``."""
        def image(i: int) -> Poly:
            def sub(mt: re.Match) -> str:
                off = mt.group(1)
                k = i + (int(off.replace(" ", "")) if off else 0)
                if k < 0:
                    raise GrammarError(f"negative index in {template!r} at i={i}")
                return f"[{k}]"

            return parse_poly(re.sub(r"\[\s*i\s*([+-]\s*\d+)?\s*\]", sub, template))

        return cls(name, image, max_index)


@dataclass(frozen=True)
class Grammar:
    """Substitution rules defining a formal derivative.

    ``rules`` maps plain variables to images.  ``indexed`` holds rule
    families for indexed letters, each valid up to its ``max_index``.
    ``inert`` variables are constants for the derivation (image 0).
    """

    rules: Mapping[Var, Poly] = field(default_factory=dict)
    indexed: Mapping[str, IndexedRule] = field(default_factory=dict)
    inert: frozenset[Var] = frozenset()

    def __post_init__(self):
        rules = {(v if isinstance(v, Var) else Var(v)): Poly.coerce(p) for v, p in self.rules.items()}
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "inert", frozenset(self.inert))
        object.__setattr__(self, "_cache", {})
        for v, img in rules.items():
            for u in img.variables():
                if not self.covers(u):
                    raise UnknownVariable(f"rule for {v} mentions {u}, which the grammar does not cover")

    @classmethod
    def of(cls, rules: Mapping[str, Coercible | str] | None = None, **kw) -> Grammar:
        """Convenience constructor: ``Grammar.of({"x": "x*y", "y": "x"})``."""
        conv = {}
        for v, p in (rules or {}).items():
            var = v if isinstance(v, Var) else _parse_var(v)
            conv[var] = parse_poly(p) if isinstance(p, str) else Poly.coerce(p)
        return cls(conv, **kw)

    @classmethod
    def parse(cls, text: str, max_index: int = 16, inert: Iterable[Var | str] = ()) -> Grammar:
        """Parse ``a -> a*b; b -> b`` or ``c[i] -> c[i+1]``."""
        rules: dict[Var, Poly] = {}
        indexed: dict[str, IndexedRule] = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "->" not in chunk:
                raise GrammarError(f"rule without '->': {chunk!r}")
            lhs, rhs = (s.strip() for s in chunk.split("->", 1))
            mt = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\[\s*i\s*\]", lhs)
            if mt:
                indexed[mt.group(1)] = IndexedRule.from_template(mt.group(1), rhs, max_index)
            else:
                rules[_parse_var(lhs)] = parse_poly(rhs)
        return cls(rules, indexed, frozenset(_parse_var(v) if isinstance(v, str) else v for v in inert))

    def covers(self, v: Var) -> bool:
        if v in self.rules or v in self.inert:
            return True
        # indices beyond the family bound are caught when their rule is requested
        return v.name in self.indexed and v.index is not None

    def image(self, v: Var) -> Poly:
        cache = self._cache  # type: ignore[attr-defined]
        if v in cache:
            return cache[v]
        if v in self.rules:
            img = self.rules[v]
        elif v in self.inert:
            img = Poly()
        else:
            fam = self.indexed.get(v.name)
            if fam is None or v.index is None:
                raise UnknownVariable(f"no rule for {v}")
            if v.index > fam.max_index:
                raise IndexLimitExceeded(f"{v} exceeds the index bound {fam.max_index} of family {fam.name}")
            img = fam.image(v.index)
        cache[v] = img
        return img

    def __str__(self) -> str:
        parts = [f"{v} -> {p}" for v, p in self.rules.items()]
        parts += [f"{name}[i] -> ..." for name in self.indexed]
        return "; ".join(parts)


def _parse_var(text: str) -> Var:
    mt = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)(?:\[(\d+)\])?\s*", text)
    if not mt:
        raise GrammarError(f"bad variable {text!r}")
    return Var(mt.group(1), int(mt.group(2)) if mt.group(2) else None)


def derive(G: Grammar, p: Poly) -> Poly:
    """Apply the formal derivative ``D_G`` once."""
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        for v, e in m:
            img = G.image(v)
            if not img:
                continue
            rest = dict(m)
            rest[v] = e - 1
            base = make_monomial(rest)
            for mi, ci in img.terms.items():
                if base:
                    d = dict(base)
                    for u, f in mi:
                        d[u] = d.get(u, 0) + f
                    nm = make_monomial(d)
                else:
                    nm = mi
                out[nm] = out.get(nm, 0) + c * e * ci
    return Poly({m: c for m, c in out.items() if c})


def derive_n(G: Grammar, p: Poly, n: int) -> Poly:
    if n < 0:
        raise ValueError("n must be nonnegative")
    for _ in range(n):
        p = derive(G, p)
    return p


def derive_alternating(grammars: Iterable[Grammar], p: Poly, n: int) -> Poly:
    """``(D_{G_k} ... D_{G_1})^n p``: each round applies the grammars in the given order."""
    gs = list(grammars)
    for _ in range(n):
        for G in gs:
            p = derive(G, p)
    return p


def weighted_iterate(G: Grammar, w: Poly, p: Poly, n: int) -> Poly:
    """``(w D_G)^n p`` by direct iteration."""
    for _ in range(n):
        p = w * derive(G, p)
    return p


@dataclass(frozen=True)
class NormalOp:
    """A normal-ordered operator ``sum_k P_k D_G^k``.

    ``by_order[k]`` is the full coefficient of ``D_G^k`` (weights already
    multiplied in).
    """

    by_order: Mapping[int, Poly]

    def __post_init__(self):
        object.__setattr__(self, "by_order", {k: p for k, p in sorted(self.by_order.items()) if p})

    def __getitem__(self, k: int) -> Poly:
        return self.by_order.get(k, Poly())

    def orders(self) -> list[int]:
        return list(self.by_order)

    def xi(self, w: Poly) -> dict[int, Poly]:
        """Coefficients with ``w^k`` divided out (``w`` a single term)."""
        return {k: p.exact_div(w**k) for k, p in self.by_order.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalOp):
            return NotImplemented
        return dict(self.by_order) == dict(other.by_order)

    def __str__(self) -> str:
        if not self.by_order:
            return "0"
        return " + ".join(f"({p})*D^{k}" for k, p in self.by_order.items())


IDENTITY = NormalOp({0: Poly.const(1)})


def op_power(G: Grammar, w: Poly, n: int) -> NormalOp:
    """Normal-ordered form of ``(w D_G)^n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for v in w.variables():
        G.image(v)  # raises on uncovered letters
    cur: dict[int, Poly] = {0: Poly.const(1)}
    for _ in range(n):
        nxt: dict[int, Poly] = {}
        for k, P in cur.items():
            dP = derive(G, P)
            if dP:
                nxt[k] = nxt.get(k, Poly()) + w * dP
            nxt[k + 1] = nxt.get(k + 1, Poly()) + w * P
        cur = {k: p for k, p in nxt.items() if p}
    return NormalOp(cur)


def op_apply(G: Grammar, op: NormalOp, target: Poly) -> Poly:
    out = Poly()
    if not op.by_order:
        return out
    d = target
    for k in range(max(op.by_order) + 1):
        if k:
            d = derive(G, d)
        if k in op.by_order:
            out = out + op.by_order[k] * d
    return out
