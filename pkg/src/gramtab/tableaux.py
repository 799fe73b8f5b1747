"""Standard Young tableaux and their box sorting indices.

Tableaux use the French convention: ``rows[0]`` is the bottom (longest)
row and columns increase upwards.  Text form lists rows bottom-to-top,
``1,3/2`` being the tableau with bottom row 1 3 and top row 2.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from math import prod

from .normalorder import Partition, partitions
from .polyring import Poly


class InvalidTableau(ValueError):
    pass


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or any(not r for r in rows):
            raise InvalidTableau("tableau rows must be nonempty")
        if any(len(a) < len(b) for a, b in zip(rows, rows[1:])):
            raise InvalidTableau(f"row lengths must weakly decrease upwards: {self.text}")
        entries = sorted(e for r in rows for e in r)
        if entries != list(range(1, len(entries) + 1)):
            raise InvalidTableau(f"entries must be 1..n exactly once: {self.text}")
        for r in rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise InvalidTableau(f"rows must increase: {self.text}")
        for lower, upper in zip(rows, rows[1:]):
            if any(a >= b for a, b in zip(lower, upper)):
                raise InvalidTableau(f"columns must increase upwards: {self.text}")

    @classmethod
    def parse(cls, text: str) -> Tableau:
        try:
            return cls(tuple(tuple(int(e) for e in row.split(",")) for row in text.strip().split("/")))
        except ValueError as exc:
            if isinstance(exc, InvalidTableau):
                raise
            raise InvalidTableau(f"cannot parse tableau {text!r}") from None

    @property
    def text(self) -> str:
        return "/".join(",".join(map(str, r)) for r in self.rows)

    def __str__(self) -> str:
        return self.text

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def length(self) -> int:
        """Number of rows."""
        return len(self.rows)

    @cached_property
    def position(self) -> dict[int, tuple[int, int]]:
        """entry -> (row, column), both 1-based, rows counted from the bottom."""
        return {e: (r + 1, j + 1) for r, row in enumerate(self.rows) for j, e in enumerate(row)}

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row[j] for row in self.rows if len(row) > j) for j in range(len(self.rows[0]))
        )


def enumerate_syt(n: int, max_cols: int | None = None) -> Iterator[Tableau]:
    """All SYT with ``n`` boxes (at most ``max_cols`` columns).

    Shapes come in reverse lexicographic order; within a shape, fillings
    follow the backtracking order that places 1, 2, ... in the lowest
    available row first.
    """
    if n < 1:
        raise ValueError("n must be positive")
    for shape in partitions(n):
        if max_cols is not None and shape[0] > max_cols:
            continue
        yield from syt_of_shape(shape)


def syt_of_shape(shape: Partition) -> Iterator[Tableau]:
    n = sum(shape)
    rows: list[list[int]] = [[] for _ in shape]

    def place(i: int) -> Iterator[Tableau]:
        if i > n:
            yield Tableau(tuple(tuple(r) for r in rows))
            return
        for r, row in enumerate(rows):
            if len(row) < shape[r] and (r == 0 or len(rows[r - 1]) > len(row)):
                row.append(i)
                yield from place(i + 1)
                row.pop()

    yield from place(1)


def col_profile(T: Tableau, i: int) -> list[int]:
    """Column sizes of ``T_i``, the subtableau of entries ``<= i``."""
    if not 1 <= i <= T.n:
        raise ValueError(f"entry {i} out of range for a tableau of size {T.n}")
    out = []
    for col in T.columns:
        size = sum(1 for e in col if e <= i)
        if not size:
            break
        out.append(size)
    return out


def box_index(T: Tableau, i: int, m: int = 1) -> int:
    """Order-``m`` box sorting index of the entry ``i``.

    ``m = 1`` gives sigma_i, ``m = 2`` gives delta_i.
    """
    if m < 1:
        raise ValueError("order must be positive")
    cols = col_profile(T, i)
    j = T.position[i][1]
    if j == 1:
        return m * i - cols[0] - (m - 2)
    right = cols[j - 1] if j - 1 < len(cols) else 0
    return cols[j - 2] - right + 1


def box_product(T: Tableau, m: int = 1) -> int:
    return prod(box_index(T, i, m) for i in range(1, T.n + 1))


def weights(T: Tableau) -> tuple[dict[int, int], int]:
    """``({i: number of rows of length i}, number of rows)``."""
    w: dict[int, int] = {}
    for r in T.rows:
        w[len(r)] = w.get(len(r), 0) + 1
    return w, T.length


def descent_stats(T: Tableau) -> tuple[set[int], int]:
    """Entries i with i+1 in a strictly higher row, and their number."""
    pos = T.position
    des = {i for i in range(1, T.n) if pos[i + 1][0] > pos[i][0]}
    return des, len(des)


Jets = Mapping[int, Poly] | Callable[[int], Poly]


def _jet(jets: Jets, i: int) -> Poly:
    return Poly.coerce(jets(i) if callable(jets) else jets[i])


def syt_sum(
    n: int,
    term: Callable[[Tableau], Poly | int],
    m: int = 1,
    max_cols: int | None = None,
) -> Poly:
    """``sum_T (prod_i box_index(T, i, m)) * term(T)`` over SYT(n)."""
    total = Poly()
    for T in enumerate_syt(n, max_cols):
        t = Poly.coerce(term(T))
        if t:
            total = total + t * box_product(T, m)
    return total


def syt_expansion(n: int, m: int, base: Poly, jets: Jets, max_cols: int | None = None) -> Poly:
    """``sum_T prod_i box_index * prod_i jets(i)^{w_i(T)} * base^(mn + 1 - l(T))``.

    With ``base = c`` and ``jets(i) = c_i`` this is ``(c^m D)^n c``.
    Passing ``max_cols`` skips tableaux whose long rows have vanishing jets.
    """
    cache: dict[int, Poly] = {}

    def jet(i: int) -> Poly:
        if i not in cache:
            cache[i] = _jet(jets, i)
        return cache[i]

    def term(T: Tableau) -> Poly:
        w, ell = weights(T)
        out = base ** (m * n + 1 - ell)
        for i, k in w.items():
            out = out * jet(i) ** k
        return out

    return syt_sum(n, term, m, max_cols)
