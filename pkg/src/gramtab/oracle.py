"""Brute-force statistic generating polynomials over small combinatorial classes.

``stat_poly(cls, n, stats)`` enumerates every object of size ``n`` and sums
``prod_s var_s^{stat_s(object)}``.  Variables default to x, y, z, u, v, w in
the order the statistics are listed.

Boundary conventions, per class:

* permutations: ``des``/``asc`` over ``i in [n-1]``; ``exc`` counts
  ``pi(i) > i``; ``ipk`` over ``i in [2, n-1]``; ``lpk`` pads ``pi(0) = 0``;
  ``val`` and ``dd`` pad both ends with 0.
* signed permutations: ``desB`` over ``i in [0, n-1]`` with ``sigma(0) = 0``.
* k-Stirling permutations (length kn): ``des`` over ``i in [kn]`` with a
  trailing 0; ``asc`` over ``i in [0, kn-1]`` with a leading 0; ``plat`` over
  ``i in [kn-1]``; ``ap`` over ``i in [2, kn-1]``; ``lap`` over ``i in [kn-1]``
  with a leading 0; ``fap = ap + lap``.
* multiset permutations: ``mdes`` over ``i in [len-1]``, no padding.
* list partitions: each list is read as ``0 s_1 ... s_i 0``; ``asc``/``des``
  count rises/falls of that word, ``val``/``dd`` inspect interior entries.
* rooted labeled trees: ``improper`` counts edges (u, v), v a child of u,
  whose subtree at v holds a label smaller than u.
* 0-1-2 increasing trees on ``{0, ..., n-1}``: ``leaves`` and ``deg1``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial, prod

from .polyring import Poly, Var, make_monomial

LIMIT = 10**6


class OracleError(ValueError):
    pass


class TooLarge(OracleError):
    pass


class UnknownStatistic(OracleError):
    pass


@dataclass(frozen=True)
class ObjectClass:
    name: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.params))})" if self.params else self.name


# ---- permutations --------------------------------------------------------


def _des(w: Sequence[int]) -> int:
    return sum(1 for a, b in zip(w, w[1:]) if a > b)


def _asc(w: Sequence[int]) -> int:
    return sum(1 for a, b in zip(w, w[1:]) if a < b)


def _cycles(p: Sequence[int]) -> int:
    seen = [False] * (len(p) + 1)
    count = 0
    for start in range(1, len(p) + 1):
        if not seen[start]:
            count += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = p[j - 1]
    return count


def _peaks(w: Sequence[int]) -> int:
    return sum(1 for a, b, c in zip(w, w[1:], w[2:]) if a < b > c)


def _val(padded: Sequence[int]) -> int:
    return sum(1 for a, b, c in zip(padded, padded[1:], padded[2:]) if a > b < c)


def _dd(padded: Sequence[int]) -> int:
    return sum(1 for a, b, c in zip(padded, padded[1:], padded[2:]) if a > b > c)


PERMUTATION_STATS: dict[str, Callable[[tuple[int, ...]], int]] = {
    "des": _des,
    "asc": _asc,
    "exc": lambda p: sum(1 for i, v in enumerate(p, 1) if v > i),
    "cyc": _cycles,
    "fix": lambda p: sum(1 for i, v in enumerate(p, 1) if v == i),
    "ipk": _peaks,
    "lpk": lambda p: _peaks((0,) + p),
    "val": lambda p: _val((0,) + p + (0,)),
    "dd": lambda p: _dd((0,) + p + (0,)),
}


def signed_permutations(n: int) -> Iterator[tuple[int, ...]]:
    for p in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield tuple(s * v for s, v in zip(signs, p))


SIGNED_STATS = {"desB": lambda s: _des((0,) + s)}


# ---- Stirling and multiset permutations ----------------------------------


def stirling_permutations(n: int, k: int = 2) -> Iterator[tuple[int, ...]]:
    """k-Stirling permutations of order n: insert the block ``i^k`` into any gap."""

    def grow(word: tuple[int, ...], i: int) -> Iterator[tuple[int, ...]]:
        if i > n:
            yield word
            return
        block = (i,) * k
        for g in range(len(word) + 1):
            yield from grow(word[:g] + block + word[g:], i + 1)

    yield from grow((), 1)


def _ap(w: Sequence[int]) -> int:
    return sum(1 for a, b, c in zip(w, w[1:], w[2:]) if a < b == c)


STIRLING_STATS: dict[str, Callable[[tuple[int, ...]], int]] = {
    "des": lambda w: _des(w + (0,)),
    "asc": lambda w: _asc((0,) + w),
    "plat": lambda w: sum(1 for a, b in zip(w, w[1:]) if a == b),
    "ap": _ap,
    "lap": lambda w: _ap((0,) + w),
    "fap": lambda w: _ap(w) + _ap((0,) + w),
}


def multiset_permutations(mult: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct words using value ``i + 1`` exactly ``mult[i]`` times."""
    left = list(mult)
    total = sum(left)
    word: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(word) == total:
            yield tuple(word)
            return
        for v, cnt in enumerate(left):
            if cnt:
                left[v] -= 1
                word.append(v + 1)
                yield from rec()
                word.pop()
                left[v] += 1

    yield from rec()


MULTISET_STATS = {"mdes": _des}


# ---- list partitions -----------------------------------------------------


def list_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of [n] into linearly ordered lists (lists sorted by first-inserted element)."""
    lists: list[list[int]] = []

    def rec(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i > n:
            yield tuple(tuple(L) for L in lists)
            return
        for L in lists:
            for pos in range(len(L) + 1):
                L.insert(pos, i)
                yield from rec(i + 1)
                del L[pos]
        lists.append([i])
        yield from rec(i + 1)
        lists.pop()

    yield from rec(1)


def _padded(L: tuple[int, ...]) -> tuple[int, ...]:
    return (0,) + L + (0,)


LIST_STATS: dict[str, Callable[[tuple[tuple[int, ...], ...]], int]] = {
    "lists": len,
    "asc": lambda P: sum(_asc(_padded(L)) for L in P),
    "des": lambda P: sum(_des(_padded(L)) for L in P),
    "val": lambda P: sum(_val(_padded(L)) for L in P),
    "dd": lambda P: sum(_dd(_padded(L)) for L in P),
}


# ---- trees ---------------------------------------------------------------


def _prufer_edges(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(1, n + 1) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (u for u in range(1, n + 1) if degree[u] == 1)
    edges.append((u, w))
    return edges


def rooted_trees(n: int) -> Iterator[tuple[int, ...]]:
    """Rooted labeled trees on [n] as parent arrays (index 0 unused, root has parent 0)."""
    if n == 1:
        yield (0, 0)
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        for a, b in _prufer_edges(seq, n):
            adj[a].append(b)
            adj[b].append(a)
        for root in range(1, n + 1):
            parent = [0] * (n + 1)
            stack, seen = [root], {root}
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        parent[v] = u
                        stack.append(v)
            yield tuple(parent)


def _improper(parent: tuple[int, ...]) -> int:
    n = len(parent) - 1
    children: dict[int, list[int]] = {v: [] for v in range(n + 1)}
    for v in range(1, n + 1):
        children[parent[v]].append(v)
    submin = list(range(n + 1))

    def fill(v: int) -> int:
        m = v
        for c in children[v]:
            m = min(m, fill(c))
        submin[v] = m
        return m

    for r in children[0]:
        fill(r)
    return sum(1 for v in range(1, n + 1) if parent[v] and submin[v] < parent[v])


TREE_STATS = {"improper": _improper}


def inc_trees_012(n: int) -> Iterator[tuple[int, ...]]:
    """Unordered increasing trees on {0..n-1} where every vertex has at most two children.

    Yields child counts per vertex.
    """
    kids = [0] * n

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(kids)
            return
        for p in range(i):
            if kids[p] < 2:
                kids[p] += 1
                yield from rec(i + 1)
                kids[p] -= 1

    yield from rec(1)


INC012_STATS = {
    "leaves": lambda k: sum(1 for c in k if c == 0),
    "deg1": lambda k: sum(1 for c in k if c == 1),
}


# ---- dispatch ------------------------------------------------------------


@dataclass(frozen=True)
class _ClassInfo:
    objects: Callable[[int, tuple[int, ...]], Iterable]
    stats: Mapping[str, Callable]
    count: Callable[[int, tuple[int, ...]], int]


def _multiset_mult(n: int, params: tuple[int, ...]) -> tuple[int, ...]:
    if len(params) == 1:
        return params * n
    if len(params) != n:
        raise OracleError("multisetPermutation needs one multiplicity, or one per value 1..n")
    return params


def _lah_total(n: int) -> int:
    return sum(factorial(n) * factorial(n - 1) // (factorial(k) * factorial(k - 1) * factorial(n - k)) for k in range(1, n + 1))


CLASSES: dict[str, _ClassInfo] = {
    "permutation": _ClassInfo(
        lambda n, _: permutations(range(1, n + 1)), PERMUTATION_STATS, lambda n, _: factorial(n)
    ),
    "signedPermutation": _ClassInfo(
        lambda n, _: signed_permutations(n), SIGNED_STATS, lambda n, _: 2**n * factorial(n)
    ),
    "stirlingPermutation": _ClassInfo(
        lambda n, p: stirling_permutations(n, p[0] if p else 2),
        STIRLING_STATS,
        lambda n, p: prod((p[0] if p else 2) * (i - 1) + 1 for i in range(1, n + 1)),
    ),
    "multisetPermutation": _ClassInfo(
        lambda n, p: multiset_permutations(_multiset_mult(n, p or (2,))),
        MULTISET_STATS,
        lambda n, p: factorial(sum(m := _multiset_mult(n, p or (2,)))) // prod(factorial(k) for k in m),
    ),
    "listPartition": _ClassInfo(lambda n, _: list_partitions(n), LIST_STATS, lambda n, _: _lah_total(n)),
    "rootedLabeledTree": _ClassInfo(lambda n, _: rooted_trees(n), TREE_STATS, lambda n, _: n ** (n - 1)),
    "incTree012": _ClassInfo(lambda n, _: inc_trees_012(n), INC012_STATS, lambda n, _: factorial(max(n - 1, 0))),
}

DEFAULT_VARS = ("x", "y", "z", "u", "v", "w")


def stat_poly(
    cls: ObjectClass | str,
    n: int,
    stats: Sequence[str] | Mapping[str, str],
) -> Poly:
    """Generating polynomial of the named statistics over all objects of size ``n``.

    ``stats`` is either a list (variables assigned x, y, z, ... in order) or a
    mapping statistic -> variable name.  The same statistic may not repeat.
    """
    if isinstance(cls, str):
        cls = ObjectClass(cls)
    info = CLASSES.get(cls.name)
    if info is None:
        raise OracleError(f"unknown object class {cls.name!r}")
    if n < 1:
        raise OracleError("n must be positive")
    if isinstance(stats, Mapping):
        pairs = list(stats.items())
    else:
        if len(stats) > len(DEFAULT_VARS):
            raise OracleError("too many statistics for the default variables")
        pairs = list(zip(stats, DEFAULT_VARS))
    for s, _ in pairs:
        if s not in info.stats:
            raise UnknownStatistic(f"{cls.name} has no statistic {s!r}; known: {', '.join(info.stats)}")
    if cls.name == "stirlingPermutation" and cls.params and cls.params[0] < 1:
        raise OracleError("Stirling order must be positive")
    size = info.count(n, cls.params)
    if size > LIMIT:
        raise TooLarge(f"{cls} of size {n} has {size} objects, limit is {LIMIT}")
    fns = [info.stats[s] for s, _ in pairs]
    tally: Counter[tuple[int, ...]] = Counter(tuple(f(obj) for f in fns) for obj in info.objects(n, cls.params))
    vars_ = [Var(v) for _, v in pairs]
    return Poly({make_monomial(zip(vars_, exps)): c for exps, c in tally.items()})


def euler_number(n: int) -> int:
    """Number of alternating permutations ``pi(1) > pi(2) < pi(3) > ...`` of [n]."""
    if n <= 1:
        return 1
    if factorial(n) > LIMIT:
        raise TooLarge(f"{n}! permutations exceed the limit")
    return sum(
        1
        for p in permutations(range(1, n + 1))
        if all((p[i] > p[i + 1]) == (i % 2 == 0) for i in range(n - 1))
    )
