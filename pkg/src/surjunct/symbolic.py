"""Patterns, configurations, local rules, subshifts of finite type, and
labeled-graph presentations of sofic shifts on the integers.

Conventions
-----------
* A local rule reads the pattern ``s -> x(g*s)`` for ``s`` in its memory and
  ``T(x)(g) = rule(that pattern)``.
* Patterns on an ordered finite set are coded little-endian base ``k``.
* The shift action is ``(g.x)(h) = x(g^-1 h)``.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, RuleError
from .group import Group, subset

WINDOW_BUDGET = 2**24


def encode(values: Sequence[int], k: int) -> int:
    code = 0
    for v in reversed(values):
        code = code * k + int(v)
    return code


def decode(code: int, k: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, r = divmod(int(code), k)
        out.append(r)
    return tuple(out)


def check_budget(k: int, n: int, budget: int | None, what: str = "window enumeration") -> None:
    budget = WINDOW_BUDGET if budget is None else budget
    size = k**n
    if size > budget:
        raise BudgetExceeded(what, size, budget)


@dataclass(frozen=True)
class Pattern:
    domain: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.domain) != len(self.values):
            raise RuleError("pattern values must cover the domain")

    @classmethod
    def from_code(cls, domain: Sequence[int], code: int, k: int) -> "Pattern":
        return cls(tuple(domain), decode(code, k, len(domain)))

    def code(self, k: int) -> int:
        return encode(self.values, k)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.values))

    def __str__(self) -> str:
        return "".join(str(v) for v in self.values)


@dataclass(frozen=True)
class LocalRule:
    """Memory ``F`` (sorted) and a table ``A^F -> A`` in pattern-code order.

    ``defined`` marks reachable entries of a partial rule (synthesized
    inverses); ``None`` means total.
    """

    k: int
    memory: tuple[int, ...]
    table: tuple[int, ...]
    defined: tuple[bool, ...] | None = None

    def __post_init__(self):
        if self.k < 2:
            raise RuleError("alphabet needs at least two symbols")
        if not self.memory:
            raise RuleError("memory set must be nonempty")
        if tuple(sorted(set(self.memory))) != tuple(self.memory):
            raise RuleError("memory must be sorted without duplicates")
        if len(self.table) != self.k ** len(self.memory):
            raise RuleError(
                f"rule table has length {len(self.table)}, expected {self.k}^{len(self.memory)}"
                f" = {self.k ** len(self.memory)}"
            )
        if any(not 0 <= v < self.k for v in self.table):
            raise RuleError("rule table entries must be symbols 0..k-1")
        if self.defined is not None and len(self.defined) != len(self.table):
            raise RuleError("defined mask must match the table")

    def __call__(self, values: Sequence[int]) -> int:
        return self.table[encode(values, self.k)]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)


@dataclass(frozen=True)
class CellularAutomaton:
    group: Group
    rule: LocalRule

    def __post_init__(self):
        for s in self.rule.memory:
            self.group.check(s)

    @property
    def k(self) -> int:
        return self.rule.k

    @property
    def memory(self) -> tuple[int, ...]:
        return self.rule.memory

    def __call__(self, x):
        return apply(self, x)


def make_ca(group: Group, k: int, memory: Iterable[int], table: Sequence[int]) -> CellularAutomaton:
    return CellularAutomaton(group, LocalRule(k, subset(memory), tuple(int(v) for v in table)))


def rule_from_function(group: Group, k: int, memory: Iterable[int], fn) -> CellularAutomaton:
    """Tabulate ``fn(values)`` where ``values`` follows sorted memory order."""
    mem = subset(memory)
    table = [fn(decode(c, k, len(mem))) for c in range(k ** len(mem))]
    return make_ca(group, k, mem, table)


# --- configurations ----------------------------------------------------------


@dataclass(frozen=True)
class FiniteConfig:
    values: tuple[int, ...]

    def at(self, g: int) -> int:
        return self.values[g]


@dataclass(frozen=True)
class ZConfig:
    """Eventually periodic configuration on the integers.

    ``x(n) = left[(n - offset) % len(left)]`` for ``n < offset``, then
    ``center`` from ``offset``, then ``right`` repeated.
    """

    left: tuple[int, ...]
    center: tuple[int, ...]
    right: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        if not self.left or not self.right:
            raise RuleError("period words must be nonempty")

    @classmethod
    def periodic(cls, word: Sequence[int], offset: int = 0) -> "ZConfig":
        w = tuple(word)
        return cls(w, (), w, offset).normalized()

    @classmethod
    def finite_defect(cls, background: int, defects: dict[int, int]) -> "ZConfig":
        if not defects:
            return cls((background,), (), (background,))
        lo, hi = min(defects), max(defects)
        center = tuple(defects.get(n, background) for n in range(lo, hi + 1))
        return cls((background,), center, (background,), lo).normalized()

    @property
    def end(self) -> int:
        return self.offset + len(self.center)

    def at(self, n: int) -> int:
        if n < self.offset:
            return self.left[(n - self.offset) % len(self.left)]
        if n < self.end:
            return self.center[n - self.offset]
        return self.right[(n - self.end) % len(self.right)]

    def segment(self, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(self.at(n) for n in range(lo, hi))

    def translate(self, g: int) -> "ZConfig":
        return ZConfig(self.left, self.center, self.right, self.offset + g)

    def normalized(self) -> "ZConfig":
        left, center, right, offset = _primitive(self.left), list(self.center), _primitive(self.right), self.offset
        while center and center[0] == left[0]:
            center.pop(0)
            left = left[1:] + left[:1]
            offset += 1
        while center and center[-1] == right[-1]:
            center.pop()
            right = right[-1:] + right[:-1]
        if not center:
            if left == right:
                shift = offset % len(right)
                word = right[-shift:] + right[:-shift] if shift else right
                return ZConfig(word, (), word, 0)
            while right[0] == left[0]:
                left = left[1:] + left[:1]
                right = right[1:] + right[:1]
                offset += 1
        return ZConfig(tuple(left), tuple(center), tuple(right), offset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZConfig):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return (a.left, a.center, a.right, a.offset) == (b.left, b.center, b.right, b.offset)

    def __hash__(self) -> int:
        a = self.normalized()
        return hash((a.left, a.center, a.right, a.offset))


def _primitive(word: Sequence[int]) -> tuple[int, ...]:
    w = tuple(word)
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


Configuration = FiniteConfig | ZConfig


class _NotAlmostEqual:
    def __repr__(self) -> str:
        return "NotAlmostEqual"

    def __bool__(self) -> bool:
        return False


NOT_ALMOST_EQUAL = _NotAlmostEqual()


def value_at(x, g: int) -> int:
    return x.at(g)


def translate(group: Group, x, g: int):
    """The shifted configuration ``g.x``."""
    if isinstance(x, ZConfig):
        return x.translate(g)
    ginv = group.inv(g)
    return FiniteConfig(tuple(x.values[group.mul(ginv, h)] for h in range(group.order)))


def apply(T: CellularAutomaton, x):
    memory = T.memory
    if isinstance(x, FiniteConfig):
        g = T.group
        vals = np.asarray(x.values, dtype=np.int64)
        idx = g.table[:, list(memory)]
        codes = np.zeros(g.order, dtype=np.int64)
        for t in range(len(memory)):
            codes += vals[idx[:, t]] * T.k**t
        return FiniteConfig(tuple(int(v) for v in T.rule.array[codes]))
    fmin, fmax = memory[0], memory[-1]
    lo, hi = x.offset - fmax, x.end - fmin

    def out(n: int) -> int:
        return T.rule([x.at(n + s) for s in memory])

    left = tuple(out(n) for n in range(lo - len(x.left), lo))
    center = tuple(out(n) for n in range(lo, hi))
    right = tuple(out(n) for n in range(hi, hi + len(x.right)))
    return ZConfig(left, center, right, lo).normalized()


def delta(x, y):
    """The finite difference set, or ``NOT_ALMOST_EQUAL``."""
    if isinstance(x, FiniteConfig):
        return tuple(i for i, (a, b) in enumerate(zip(x.values, y.values)) if a != b)
    lo, hi = min(x.offset, y.offset), max(x.end, y.end)
    lp = math.lcm(len(x.left), len(y.left))
    rp = math.lcm(len(x.right), len(y.right))
    if x.segment(lo - lp, lo) != y.segment(lo - lp, lo) or x.segment(hi, hi + rp) != y.segment(hi, hi + rp):
        return NOT_ALMOST_EQUAL
    return tuple(n for n in range(lo, hi) if x.at(n) != y.at(n))


def restrict(x, domain: Sequence[int]) -> Pattern:
    d = subset(domain)
    return Pattern(d, tuple(x.at(g) for g in d))


def image_pattern(T: CellularAutomaton, p: Pattern, domain: Sequence[int]) -> Pattern:
    d = subset(domain)
    vals = p.as_dict()
    out = []
    for g in d:
        try:
            out.append(T.rule([vals[T.group.mul(g, s)] for s in T.memory]))
        except KeyError:
            raise RuleError("pattern domain does not cover the window D*F") from None
    return Pattern(d, tuple(out))


# --- windowed enumeration ------------------------------------------------------


def window_images(
    T: CellularAutomaton,
    window: Sequence[int],
    targets: Sequence[int],
    budget: int | None = None,
) -> np.ndarray:
    """Image codes on ``targets`` of every pattern on ``window``.

    Entry ``c`` is the code (over sorted ``targets``) of the image of the
    pattern with code ``c`` on ``window``; ``targets * F`` must lie in
    ``window``.
    """
    check_budget(T.k, len(window), budget)
    pos = {g: i for i, g in enumerate(window)}
    try:
        gather = [[pos[T.group.mul(g, s)] for s in T.memory] for g in targets]
    except KeyError:
        raise RuleError("window does not contain targets * memory") from None
    return kernels.image_codes(T.k, len(window), gather, T.rule.array)


def digit_arrays(k: int, n: int) -> list[np.ndarray]:
    codes = np.arange(k**n, dtype=np.int64)
    return [(codes // k**i) % k for i in range(n)]


def sub_codes(k: int, n: int, positions: Sequence[int]) -> np.ndarray:
    """For every code on an ``n``-site window, the code of its restriction
    to ``positions`` (in the given order)."""
    codes = np.arange(k**n, dtype=np.int64)
    out = np.zeros(k**n, dtype=np.int64)
    for t, pos in enumerate(positions):
        out += ((codes // k**pos) % k) * k**t
    return out


def compose(T2: CellularAutomaton, T1: CellularAutomaton, budget: int | None = None) -> CellularAutomaton:
    """The automaton ``T2 o T1`` with memory ``F2 * F1``."""
    if T1.group != T2.group or T1.k != T2.k:
        raise RuleError("composition needs a common group and alphabet")
    g = T1.group
    mem = g.set_product(T2.memory, T1.memory)
    inner = window_images(T1, mem, T2.memory, budget)
    return make_ca(g, T1.k, mem, T2.rule.array[inner].tolist())


def power(T: CellularAutomaton, n: int, budget: int | None = None) -> CellularAutomaton:
    if n < 1:
        raise RuleError("power needs n >= 1")
    out = T
    for _ in range(n - 1):
        out = compose(T, out, budget)
    return out


def normalized_rule(T: CellularAutomaton) -> tuple[int, np.ndarray, int]:
    """Rewrite a CA on Z as ``shift^s o T'`` with ``T'`` reading ``[0, d-1]``.

    Returns ``(d, table, s)``; ``table`` is indexed by codes of words of
    length ``d``, and ``T(x)(n) = T'(x)(n + s)``.
    """
    if T.group.is_finite:
        raise RuleError("memory normalization applies to the integers only")
    fmin, fmax = T.memory[0], T.memory[-1]
    window = tuple(range(fmin, fmax + 1))
    return len(window), window_images(T, window, (0,)), fmin


# --- subshifts of finite type ------------------------------------------------


@dataclass(frozen=True)
class SftDescriptor:
    group: Group
    k: int
    window: tuple[int, ...]
    forbidden: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        for p in self.forbidden:
            if len(p) != len(self.window):
                raise RuleError("forbidden patterns must share the window")

    def forbidden_codes(self) -> frozenset[int]:
        return frozenset(encode(p, self.k) for p in self.forbidden)


def sft_membership(S: SftDescriptor, x) -> bool:
    if not S.forbidden:
        return True
    bad = S.forbidden_codes()
    g = S.group
    if isinstance(x, FiniteConfig):
        return not any(
            encode([x.values[g.mul(h, w)] for w in S.window], S.k) in bad for h in range(g.order)
        )
    wmin, wmax = S.window[0], S.window[-1]
    lo = x.offset - wmax - len(x.left)
    hi = x.end - wmin + len(x.right)
    return not any(encode([x.at(n + w) for w in S.window], S.k) in bad for n in range(lo, hi))


# --- sofic automata ------------------------------------------------------------


@dataclass(frozen=True)
class SoficAutomaton:
    """Labeled graph; its bi-infinite label sequences form the shift.

    ``edges`` holds ``(src, label, dst)`` triples.  Every vertex is both
    initial and final.
    """

    k: int
    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    _succ: dict = field(default=None, compare=False, repr=False)

    def trimmed(self) -> "SoficAutomaton":
        alive = set(range(self.n_vertices))
        edges = list(self.edges)
        while True:
            edges = [e for e in edges if e[0] in alive and e[2] in alive]
            has_out = {e[0] for e in edges}
            has_in = {e[2] for e in edges}
            keep = alive & has_out & has_in
            if keep == alive:
                break
            alive = keep
        index = {v: i for i, v in enumerate(sorted(alive))}
        new_edges = tuple(sorted((index[a], l, index[b]) for a, l, b in edges))
        return SoficAutomaton(self.k, len(index), new_edges)

    def successors(self) -> list[list[int]]:
        """``succ[label][v]`` is the bitmask of targets of ``v`` under ``label``."""
        if self._succ is None:
            succ = [[0] * self.n_vertices for _ in range(self.k)]
            for a, l, b in self.edges:
                succ[l][a] |= 1 << b
            object.__setattr__(self, "_succ", succ)
        return self._succ

    def step(self, mask: int, label: int) -> int:
        row = self.successors()[label]
        out = 0
        v = 0
        while mask:
            if mask & 1:
                out |= row[v]
            mask >>= 1
            v += 1
        return out

    @property
    def full_mask(self) -> int:
        return (1 << self.n_vertices) - 1


def image_automaton(T: CellularAutomaton) -> SoficAutomaton:
    """De Bruijn presentation of ``T[A^Z]``, trimmed."""
    d, table, _ = normalized_rule(T)
    k = T.k
    nv = k ** (d - 1)
    edges = []
    for w in range(k**d):
        edges.append((w % nv, int(table[w]), w // k))
    return SoficAutomaton(k, nv, tuple(edges)).trimmed()


def sft_automaton(S: SftDescriptor, budget: int | None = None) -> SoficAutomaton:
    """Higher-block presentation of an SFT on Z, labeled by first symbol."""
    if S.group.is_finite:
        raise RuleError("SFT automata are defined on the integers only")
    k = S.k
    wmin = S.window[0]
    span = S.window[-1] - wmin + 1
    check_budget(k, span, budget, "SFT block enumeration")
    positions = [w - wmin for w in S.window]
    bad = S.forbidden_codes()
    nv = k ** (span - 1)
    allowed = sub_codes(k, span, positions)
    edges = []
    for w in range(k**span):
        if int(allowed[w]) not in bad:
            edges.append((w % nv, w % k, w // k))
    return SoficAutomaton(k, nv, tuple(edges)).trimmed()


def shortest_missing_word(A: SoficAutomaton) -> tuple[int, ...] | None:
    """A shortest word outside the factor language, or ``None`` if full."""
    start = A.full_mask
    if start == 0:
        return (0,)
    parent = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in range(A.k):
            t = A.step(s, a)
            if t in parent:
                continue
            parent[t] = (s, a)
            if t == 0:
                word = []
                cur = t
                while parent[cur] is not None:
                    cur, sym = parent[cur]
                    word.append(sym)
                return tuple(reversed(word))
            queue.append(t)
    return None


def sofic_full(A: SoficAutomaton) -> bool:
    return shortest_missing_word(A) is None


def sofic_inclusion_counterexample(X: SoficAutomaton, Y: SoficAutomaton) -> tuple[int, ...] | None:
    """A word in the language of ``X`` but not of ``Y``, or ``None``.

    Both automata must be trimmed so that their path labels are exactly
    the factors of their shifts.
    """
    fullY = Y.full_mask
    parent = {}
    queue = deque()
    for v in range(X.n_vertices):
        st = (v, fullY)
        parent[st] = None
        queue.append(st)
    out_edges = [[] for _ in range(X.n_vertices)]
    for a, l, b in X.edges:
        out_edges[a].append((l, b))
    while queue:
        st = queue.popleft()
        v, mask = st
        if mask == 0:
            word = []
            cur = st
            while parent[cur] is not None:
                cur, sym = parent[cur]
                word.append(sym)
            return tuple(reversed(word))
        for l, b in out_edges[v]:
            nxt = (b, Y.step(mask, l))
            if nxt not in parent:
                parent[nxt] = (st, l)
                queue.append(nxt)
    return None


def sofic_equal(X: SoficAutomaton, Y: SoficAutomaton) -> bool:
    return sofic_inclusion_counterexample(X, Y) is None and sofic_inclusion_counterexample(Y, X) is None


def sofic_equals_sft(A: SoficAutomaton, S: SftDescriptor, budget: int | None = None) -> bool:
    return sofic_equal(A, sft_automaton(S, budget))


# --- sampling ------------------------------------------------------------------


def random_configuration(group: Group, k: int, rng: random.Random, max_period: int = 4, max_center: int = 8):
    if group.is_finite:
        return FiniteConfig(tuple(rng.randrange(k) for _ in range(group.order)))
    left = tuple(rng.randrange(k) for _ in range(rng.randint(1, max_period)))
    right = tuple(rng.randrange(k) for _ in range(rng.randint(1, max_period)))
    center = tuple(rng.randrange(k) for _ in range(rng.randint(0, max_center)))
    return ZConfig(left, center, right, rng.randint(-max_center, max_center)).normalized()


def random_almost_equal(group: Group, k: int, x, rng: random.Random, max_changes: int = 4):
    """A configuration differing from ``x`` on a random finite set."""
    if group.is_finite:
        vals = list(x.values)
        for _ in range(rng.randint(0, max_changes)):
            vals[rng.randrange(group.order)] = rng.randrange(k)
        return FiniteConfig(tuple(vals))
    lo = x.offset - 6
    hi = x.end + 6
    changes = {rng.randint(lo, hi): rng.randrange(k) for _ in range(rng.randint(0, max_changes))}
    if not changes:
        return x
    a, b = min(min(changes), x.offset), max(max(changes) + 1, x.end)
    center = tuple(changes.get(n, x.at(n)) for n in range(a, b))
    left = x.segment(a - len(x.left), a)
    right = x.segment(b, b + len(x.right))
    return ZConfig(left, center, right, a).normalized()
