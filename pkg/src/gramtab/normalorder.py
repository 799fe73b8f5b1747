"""Powers of ``cD`` and ``c^k D`` acting on jet variables.

The jet variables ``c[i]`` and ``f[i]`` stand for the i-th derivatives of two
smooth functions; ``c[0]`` is ``c`` itself.  Derivation in the jet grammar
``c[i] -> c[i+1], f[i] -> f[i+1]`` is ordinary differentiation.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from math import prod

from .grammar import Grammar, IndexedRule, weighted_iterate
from .polyring import Poly, Var, coefficient_of, make_monomial

Partition = tuple[int, ...]


class OutOfRange(ValueError):
    pass


def c(i: int) -> Var:
    return Var("c", i)


def f(i: int) -> Var:
    return Var("f", i)


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse lexicographic order, e.g. (3,), (2, 1), (1, 1, 1)."""
    if n < 0:
        return
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def multiplicities(lam: Partition) -> dict[int, int]:
    m: dict[int, int] = {}
    for part in lam:
        m[part] = m.get(part, 0) + 1
    return m


@dataclass(frozen=True)
class JetContext:
    """Jet grammar over ``c[0..max_index]`` and ``f[0..max_index]``."""

    max_index: int

    def __post_init__(self):
        if self.max_index < 1:
            raise ValueError("max_index must be positive")

    @property
    def grammar(self) -> Grammar:
        g = self.__dict__.get("_grammar")
        if g is None:
            g = Grammar(
                indexed={
                    name: IndexedRule(name, (lambda i, name=name: Poly.var(name, i + 1)), self.max_index)
                    for name in ("c", "f")
                }
            )
            object.__setattr__(self, "_grammar", g)
        return g


def cd_power_on_f(n: int, ctx: JetContext | None = None) -> Poly:
    """``(cD)^n f`` in the jet variables."""
    if n < 1:
        raise OutOfRange("n must be at least 1")
    ctx = ctx or JetContext(n + 1)
    return weighted_iterate(ctx.grammar, Poly.var(c(0)), Poly.var(f(0)), n)


def ckd_power_on_c(k: int, n: int, ctx: JetContext | None = None) -> Poly:
    """``(c^k D)^n c`` in the jet variables."""
    if k < 1 or n < 1:
        raise OutOfRange("k and n must be at least 1")
    ctx = ctx or JetContext(n + 1)
    return weighted_iterate(ctx.grammar, Poly.var(c(0), exp=k), Poly.var(c(0)), n)


def extract_F(n: int, k: int, expansion: Poly | None = None) -> Poly:
    """Coefficient of ``f_k`` in ``(cD)^n f``."""
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    if expansion is None:
        expansion = cd_power_on_f(n)
    return coefficient_of(expansion, f(k), 1)


def jet_monomial(n: int, lam: Partition) -> tuple:
    """Monomial ``c^(n - len(lam)) * prod c_{lam_i}``."""
    exps: dict[Var, int] = {c(0): n - len(lam)}
    for part in lam:
        exps[c(part)] = exps.get(c(part), 0) + 1
    return make_monomial(exps)


def extract_a(n: int, lam: Partition, expansion: Poly | None = None) -> int:
    """The integer ``a(n, lam)``: coefficient of ``c^(n-l(lam)) c_lam`` in ``F_{n, n-|lam|}``."""
    lam = tuple(sorted(lam, reverse=True))
    if any(p < 1 for p in lam):
        raise OutOfRange("partition parts must be positive")
    size = sum(lam)
    if n < 1 or size > n - 1:
        raise OutOfRange(f"need |lambda| <= n - 1, got n={n}, |lambda|={size}")
    F = extract_F(n, n - size, expansion)
    return F.terms.get(jet_monomial(n, lam), 0)


PROJECTIONS = ("stirling1", "stirling2", "eulerian")


def project(kind: str, n: int, k: int, expansion: Poly | None = None) -> int:
    """Stirling and Eulerian numbers as sums of ``a(n, lam)``."""
    if kind not in PROJECTIONS:
        raise ValueError(f"unknown projection {kind!r}")
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    if expansion is None:
        expansion = cd_power_on_f(n)
    if kind == "stirling1":
        return sum(extract_a(n, lam, expansion) for lam in partitions(n - k))
    if kind == "stirling2":
        return extract_a(n, (1,) * (n - k), expansion)
    return sum(
        extract_a(n, lam, expansion)
        for size in range(n)
        for lam in partitions(size)
        if len(lam) == n - k
    )


def a_table(n: int) -> dict[Partition, int]:
    """All nonzero ``a(n, lam)``, keyed by partition."""
    expansion = cd_power_on_f(n)
    out = {}
    for size in range(n):
        for lam in partitions(size):
            v = extract_a(n, lam, expansion)
            if v:
                out[lam] = v
    return out


def jet_sum_rule(k: int, n: int) -> int:
    """Value of ``(c^k D)^n c`` at all ``c_i = 1``: the number of box placements."""
    return prod(k * (i - 1) + 1 for i in range(1, n + 1))
