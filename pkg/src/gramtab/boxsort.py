"""The box sorting algorithm and the map from weak set partitions to tableaux.

Each term of ``(c^m D)^n c`` corresponds to an ordered weak set partition
built by inserting 1, 2, ..., n one at a time: element i goes into one of
the ``m(i-1) + 1`` boxes opened so far, after which m new empty boxes open.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass

from .normalorder import c
from .polyring import Poly, make_monomial
from .tableaux import Tableau


class InvalidOwp(ValueError):
    pass


@dataclass(frozen=True)
class Owp:
    """Ordered weak set partition with ``order * n + 1`` blocks (block 0 first)."""

    order: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        m = self.order
        if m < 1:
            raise InvalidOwp("order must be positive")
        n = self.n
        if len(blocks) != m * n + 1:
            raise InvalidOwp(f"expected {m * n + 1} blocks, got {len(blocks)}")
        entries = sorted(e for b in blocks for e in b)
        if entries != list(range(1, n + 1)):
            raise InvalidOwp("blocks must partition 1..n")
        if n and 1 not in blocks[0]:
            raise InvalidOwp("1 must lie in block 0")
        for slot, b in enumerate(blocks[1:], start=1):
            opened_after = (slot - 1) // m + 1  # boxes m(i-1)+1 .. mi open after inserting i
            if b and b[0] <= opened_after:
                raise InvalidOwp(f"block {slot} must only hold entries > {opened_after}")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def parse(cls, text: str, order: int = 1) -> Owp:
        blocks = []
        for part in text.strip().split("|"):
            part = part.strip()
            blocks.append(() if part in ("-", "") else tuple(int(e) for e in part.split(",")))
        return cls(order, tuple(blocks))

    @property
    def text(self) -> str:
        return "|".join(",".join(map(str, b)) if b else "-" for b in self.blocks)

    def __str__(self) -> str:
        return self.text


def enumerate_owp(n: int, m: int = 1) -> Iterator[Owp]:
    """Every element of OWP_n^(m), generated by the insertion process."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    boxes: list[list[int]] = [[]]

    def insert(i: int) -> Iterator[Owp]:
        if i > n:
            yield Owp(m, tuple(tuple(b) for b in boxes))
            return
        for b in list(boxes):
            b.append(i)
            boxes.extend([] for _ in range(m))
            yield from insert(i + 1)
            del boxes[-m:]
            b.pop()

    yield from insert(1)


def owp_weight(p: Owp) -> Poly:
    """``prod_B c_{|B|}`` over all blocks, ``c_0 = c``."""
    exps = Counter(c(len(b)) for b in p.blocks)
    return Poly.monomial(exps)


def phi(p: Owp) -> Tableau:
    """Sort nonempty blocks by decreasing length (stable), then sort each column upwards."""
    rows = sorted((list(b) for b in p.blocks if b), key=len, reverse=True)
    width = len(rows[0])
    for j in range(width):
        col = sorted(r[j] for r in rows if len(r) > j)
        k = 0
        for r in rows:
            if len(r) > j:
                r[j] = col[k]
                k += 1
    return Tableau(tuple(tuple(r) for r in rows))


def tableau_weight(T: Tableau, m: int = 1) -> Poly:
    """``c^(mn + 1 - l(T)) prod_i c_i^{w_i(T)}``."""
    exps = Counter(c(len(r)) for r in T.rows)
    exps[c(0)] += m * T.n + 1 - T.length
    return Poly._raw({make_monomial(exps): 1})


def fiber_counts(n: int, m: int = 1) -> Counter[Tableau]:
    """``#phi^{-1}(T)`` for every tableau hit by OWP_n^(m)."""
    return Counter(phi(p) for p in enumerate_owp(n, m))


def fiber_count(T: Tableau, m: int = 1) -> int:
    return sum(1 for p in enumerate_owp(T.n, m) if phi(p) == T)


def owp_weight_sum(n: int, m: int = 1) -> Poly:
    counts: Counter = Counter(make_monomial(Counter(c(len(b)) for b in p.blocks)) for p in enumerate_owp(n, m))
    return Poly(dict(counts))
