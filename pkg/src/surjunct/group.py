"""Groups with finite-subset arithmetic.

Two kinds are supported: finite groups given by a Cayley table whose
elements are dense indices with identity 0, and the integers.  Finite
subsets are plain sorted tuples of element ids.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GroupError

FINITE = "finite"
INTEGERS = "integers"

Subset = tuple  # sorted, deduplicated tuple of element ids


def subset(elements: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(e) for e in elements)))


class Group:
    """A finite group (Cayley table) or the integers.

    Use the builders (:func:`integers`, :func:`cyclic`, ...) rather than the
    constructor.  Finite tables are checked against the group axioms.
    """

    def __init__(self, kind: str, table: np.ndarray | None = None, name: str = ""):
        if kind not in (FINITE, INTEGERS):
            raise GroupError(f"unknown group kind {kind!r}")
        self.kind = kind
        self.name = name
        self.descriptor: dict | None = None
        if kind == FINITE:
            table = np.asarray(table, dtype=np.int64)
            _check_table(table)
            self.table = table
            self.table.setflags(write=False)
            self.order = table.shape[0]
            inv = np.empty(self.order, dtype=np.int64)
            rows, cols = np.nonzero(table == 0)
            inv[rows] = cols
            self.inverse_table = inv
            self.inverse_table.setflags(write=False)
        else:
            self.table = None
            self.inverse_table = None
            self.order = None

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    identity = 0

    def __repr__(self) -> str:
        if self.kind == INTEGERS:
            return "Group(Z)"
        return f"Group({self.name or 'finite'}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Group) or other.kind != self.kind:
            return False
        if self.kind == INTEGERS:
            return True
        return self.order == other.order and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        if self.kind == INTEGERS:
            return hash(INTEGERS)
        return hash((FINITE, self.order, self.table.tobytes()))

    # --- elements ---------------------------------------------------------

    def check(self, g: int) -> int:
        g = int(g)
        if self.kind == FINITE and not 0 <= g < self.order:
            raise GroupError(f"element {g} out of range for group of order {self.order}")
        return g

    def elements(self) -> range:
        if self.kind != FINITE:
            raise GroupError("the integers have no finite element list")
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        if self.kind == INTEGERS:
            return int(g) + int(h)
        return int(self.table[self.check(g), self.check(h)])

    def inv(self, g: int) -> int:
        if self.kind == INTEGERS:
            return -int(g)
        return int(self.inverse_table[self.check(g)])

    def product(self, *gs: int) -> int:
        out = 0
        for g in gs:
            out = self.mul(out, g)
        return out

    # --- subsets ----------------------------------------------------------

    def set_product(self, s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
        if not s or not t:
            return ()
        if self.kind == INTEGERS:
            return subset(a + b for a in s for b in t)
        return subset(self.table[np.ix_(list(s), list(t))].ravel().tolist())

    def set_power(self, s: Sequence[int], n: int) -> tuple[int, ...]:
        out: tuple[int, ...] = (0,)
        for _ in range(n):
            out = self.set_product(out, s)
        return out

    def set_inverse(self, s: Sequence[int]) -> tuple[int, ...]:
        return subset(self.inv(g) for g in s)

    def symmetrize(self, s: Sequence[int]) -> tuple[int, ...]:
        return subset(list(s) + list(self.set_inverse(s)))

    def translate(self, g: int, s: Sequence[int]) -> tuple[int, ...]:
        return self.set_product((g,), s)

    def ball(self, r: int, generators: Sequence[int] = ()) -> tuple[int, ...]:
        """Products of at most ``r`` generators; for the integers ``[-r, r]``."""
        if r < 0:
            raise GroupError("radius must be nonnegative")
        if self.kind == INTEGERS:
            return tuple(range(-r, r + 1))
        gens = subset(list(generators) + [0])
        out: tuple[int, ...] = (0,)
        for _ in range(r):
            nxt = self.set_product(out, gens)
            if nxt == out:
                break
            out = nxt
        return out

    def radius(self, s: Sequence[int]) -> int:
        """Size measure used in reports: max |n| on Z, cardinality on finite groups."""
        if not s:
            return 0
        if self.kind == INTEGERS:
            return max(abs(g) for g in s)
        return len(s)

    def candidate_sets(self, max_radius: int) -> Iterator[tuple[int, ...]]:
        """Nonempty finite subsets in canonical search order.

        Integers: by radius, then cardinality, then lexicographic order;
        each set is produced once, at the least radius containing it.
        Finite groups: every nonempty subset by (cardinality, lex); the
        radius bound does not apply.
        """
        if self.kind == INTEGERS:
            for r in range(max_radius + 1):
                pool = range(-r, r + 1)
                for size in range(1, 2 * r + 2):
                    for combo in itertools.combinations(pool, size):
                        if r == 0 or combo[0] == -r or combo[-1] == r:
                            yield combo
        else:
            for size in range(1, self.order + 1):
                yield from itertools.combinations(range(self.order), size)


def _check_table(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupError("multiplication table must be a nonempty square array")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise GroupError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise GroupError("element 0 must be the identity")
    for row in table:
        if len(np.unique(row)) != n:
            raise GroupError("table rows must be permutations (Latin square)")
    left = table[table]  # left[g, h, k] = (gh)k
    right = table[:, table]  # right[g, h, k] = g(hk)
    if not np.array_equal(left, right):
        raise GroupError("table is not associative")


# --- builders ---------------------------------------------------------------


def integers() -> Group:
    g = Group(INTEGERS, name="Z")
    g.descriptor = {"type": "Z"}
    return g


def from_table(table) -> Group:
    return Group(FINITE, np.asarray(table), name="finite")


def cyclic(n: int) -> Group:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    ar = np.arange(n)
    g = Group(FINITE, (ar[:, None] + ar[None, :]) % n, name=f"C{n}")
    g.descriptor = {"type": "builder", "name": "cyclic", "args": [n]}
    return g


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n; element ``r^i s^j`` has index ``j*n + i``."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    order = 2 * n
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        i, j = a % n, a // n
        for b in range(order):
            k, l = b % n, b // n
            rot = (i + (k if j == 0 else -k)) % n
            table[a, b] = ((j + l) % 2) * n + rot
    g = Group(FINITE, table, name=f"D{n}")
    g.descriptor = {"type": "builder", "name": "dihedral", "args": [n]}
    return g


def permutations(n: int) -> list[tuple[int, ...]]:
    """Elements of S_n in lexicographic one-line order (identity first)."""
    return list(itertools.permutations(range(n)))


def symmetric(n: int) -> Group:
    """S_n with product ``(s*t)(i) = s(t(i))``."""
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    perms = permutations(n)
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    table = np.empty((size, size), dtype=np.int64)
    for a, s in enumerate(perms):
        for b, t in enumerate(perms):
            table[a, b] = index[tuple(s[t[i]] for i in range(n))]
    g = Group(FINITE, table, name=f"S{n}")
    g.permutations = perms
    g.descriptor = {"type": "builder", "name": "symmetric", "args": [n]}
    return g


def direct_product(g: Group, h: Group) -> Group:
    """Element ``(a, b)`` has index ``a * |h| + b``."""
    if not (g.is_finite and h.is_finite):
        raise GroupError("direct products are supported for finite groups only")
    m = h.order
    ga = np.arange(g.order * m) // m
    hb = np.arange(g.order * m) % m
    table = g.table[ga[:, None], ga[None, :]] * m + h.table[hb[:, None], hb[None, :]]
    out = Group(FINITE, table, name=f"{g.name}x{h.name}")
    if g.descriptor is not None and h.descriptor is not None:
        out.descriptor = {"type": "builder", "name": "product", "args": [g.descriptor, h.descriptor]}
    return out


BUILDERS = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
}
