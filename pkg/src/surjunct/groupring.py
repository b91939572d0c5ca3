"""Group rings over prime fields, convolution automata, direct-finiteness
scans, bi-invariant norms, and the support pseudonorm on the augmentation
ideal."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .analysis import (
    Injective,
    decide_injectivity,
    find_postsurjectivity_set,
)
from .errors import BudgetExceeded, NotInIdeal, PropertyViolation, ZeroElement
from .group import Group, subset, symmetric
from .symbolic import CellularAutomaton, LocalRule, decode

SCAN_BUDGET = 2**24


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def elements(self) -> range:
        return range(self.p)

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class GroupRingElement:
    """Finitely supported ``G -> F_p``; ``terms`` is sorted with no zeros."""

    group: Group
    p: int
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, group: Group, p: int, coeffs: dict[int, int]) -> "GroupRingElement":
        terms = tuple(sorted((group.check(g), c % p) for g, c in coeffs.items() if c % p))
        return cls(group, p, terms)

    @classmethod
    def from_terms(cls, group: Group, p: int, terms: Iterable[tuple[int, int]]) -> "GroupRingElement":
        acc: dict[int, int] = {}
        for g, c in terms:
            acc[g] = (acc.get(g, 0) + c) % p
        return cls.from_dict(group, p, acc)

    @classmethod
    def one(cls, group: Group, p: int) -> "GroupRingElement":
        return cls(group, p, ((0, 1),))

    @classmethod
    def basis(cls, group: Group, p: int, g: int, c: int = 1) -> "GroupRingElement":
        return cls.from_dict(group, p, {g: c})

    @classmethod
    def from_vector(cls, group: Group, p: int, vec) -> "GroupRingElement":
        return cls.from_dict(group, p, {g: int(c) for g, c in enumerate(vec)})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, g: int) -> int:
        return self.as_dict().get(g, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.terms)

    def length(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def vector(self) -> np.ndarray:
        v = np.zeros(self.group.order, dtype=np.int64)
        for g, c in self.terms:
            v[g] = c
        return v

    def _same_ring(self, other: "GroupRingElement") -> None:
        if self.p != other.p or self.group != other.group:
            raise ValueError("elements of different group rings")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._same_ring(other)
        return GroupRingElement.from_terms(self.group, self.p, self.terms + other.terms)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement.from_dict(self.group, self.p, {g: -c for g, c in self.terms})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, c: int) -> "GroupRingElement":
        return GroupRingElement.from_dict(self.group, self.p, {g: c * a for g, a in self.terms})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._same_ring(other)
        g = self.group
        return GroupRingElement.from_terms(
            g, self.p, ((g.mul(u, v), a * b) for u, a in self.terms for v, b in other.terms)
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*g{g}" for g, c in self.terms)


def augmentation(f: GroupRingElement) -> int:
    return sum(c for _, c in f.terms) % f.p


def in_augmentation_ideal(f: GroupRingElement) -> bool:
    return augmentation(f) == 0


# --- convolution automata ------------------------------------------------------


def convolution_ca(a: GroupRingElement) -> CellularAutomaton:
    """``T_a(f) = f * a`` as a CA with memory ``supp(a)^-1``.

    ``T_a(f)(x) = sum_u a(u) f(x u^-1)``.
    """
    if a.is_zero():
        raise ZeroElement("convolution by zero is not defined here")
    g, p = a.group, a.p
    memory = g.set_inverse(a.support)
    pos = {s: i for i, s in enumerate(memory)}
    weights = [(pos[g.inv(u)], c) for u, c in a.terms]
    table = []
    for code in range(p ** len(memory)):
        vals = decode(code, p, len(memory))
        table.append(sum(c * vals[i] for i, c in weights) % p)
    return CellularAutomaton(g, LocalRule(p, memory, tuple(table)))


# --- direct finiteness -------------------------------------------------------


@dataclass
class ScanReport:
    p: int
    group: str
    pairs_checked: int
    unit_pairs: list = field(default_factory=list)  # (a_vec, b_vec) with ab = 1
    violations: list = field(default_factory=list)  # (a_vec, b_vec) with ab = 1, ba != 1


def _all_vectors(p: int, n: int) -> np.ndarray:
    codes = np.arange(p**n, dtype=np.int64)
    return np.stack([(codes // p**i) % p for i in range(n)], axis=1)


def left_mult_matrix(group: Group, p: int, a_vec) -> np.ndarray:
    """``L[x, v] = a(x v^-1)``, so that ``(a b) = L @ b``."""
    t = group.table[:, group.inverse_table]  # t[x, v] = x v^-1
    return np.asarray(a_vec, dtype=np.int64)[t] % p


def direct_finiteness_scan(p: int, group: Group, budget: int = SCAN_BUDGET) -> ScanReport:
    """All pairs ``(a, b)`` of ``F_p[G]``: ``ab = 1`` must imply ``ba = 1``."""
    PrimeField(p)
    if not group.is_finite:
        raise ValueError("direct-finiteness scans need a finite group")
    n = group.order
    total = p ** (2 * n)
    if total > budget:
        raise BudgetExceeded("group ring pair scan", total, budget)
    vecs = _all_vectors(p, n)
    one = np.zeros(n, dtype=np.int64)
    one[0] = 1
    report = ScanReport(p, group.name, total)
    for a in vecs:
        prods = (vecs @ left_mult_matrix(group, p, a).T) % p  # row b -> ab
        for bi in np.flatnonzero((prods == one).all(axis=1)):
            b = vecs[bi]
            ba = (left_mult_matrix(group, p, b) @ a) % p
            pair = (tuple(int(v) for v in a), tuple(int(v) for v in b))
            report.unit_pairs.append(pair)
            if not np.array_equal(ba, one):
                report.violations.append(pair)
    return report


@dataclass
class UnitClaimReport:
    injectivity: object
    postsurjectivity: object


def verify_unit_claims(a: GroupRingElement, b: GroupRingElement, radius_cap: int = 8, budget: int | None = None) -> UnitClaimReport:
    """For ``ab = 1``: ``T_a`` is injective and ``T_b`` is post-surjective."""
    if a * b != GroupRingElement.one(a.group, a.p):
        raise ValueError("verify_unit_claims needs ab = 1")
    inj = decide_injectivity(convolution_ca(a), radius_cap, budget)
    if not isinstance(inj, Injective):
        raise PropertyViolation("T_a is not injective although ab = 1", inj)
    post = find_postsurjectivity_set(convolution_ca(b), radius_cap, budget)
    if not post:
        raise PropertyViolation("no post-surjectivity set for T_b although ab = 1", post)
    return UnitClaimReport(inj.certificate, post)


# --- norms ---------------------------------------------------------------------


@dataclass(frozen=True)
class BiInvariantNorm:
    group: Group
    evaluate: Callable[[int], Fraction]
    name: str = ""
    bound: Fraction | None = None

    def __call__(self, g: int) -> Fraction:
        return self.evaluate(g)

    def axiom_failures(self) -> list[str]:
        """Exhaustive check of the bi-invariant norm axioms (finite groups)."""
        G = self.group
        out = []
        vals = [Fraction(self(g)) for g in G.elements()]
        if vals[0] != 0:
            out.append("norm of identity is nonzero")
        for g in G.elements():
            if vals[g] < 0:
                out.append(f"negative norm at {g}")
            if g != 0 and vals[g] == 0:
                out.append(f"zero norm at non-identity {g}")
            if vals[G.inv(g)] != vals[g]:
                out.append(f"norm not inverse-invariant at {g}")
            for h in G.elements():
                if vals[G.mul(g, h)] > vals[g] + vals[h]:
                    out.append(f"triangle inequality fails at ({g}, {h})")
                if vals[G.product(h, g, G.inv(h))] != vals[g]:
                    out.append(f"not conjugation invariant at ({g}, {h})")
        return out


def hamming_norm(n: int) -> BiInvariantNorm:
    """``sigma -> |{i : sigma(i) != i}| / n`` on S_n."""
    if n < 1:
        raise ValueError("n must be positive")
    G = symmetric(n)
    perms = G.permutations
    moved = [sum(1 for i, v in enumerate(s) if v != i) for s in perms]
    return BiInvariantNorm(G, lambda g: Fraction(moved[g], n), name=f"hamming/{n}", bound=Fraction(1))


def _support_problem(f: GroupRingElement, norm: BiInvariantNorm):
    if not in_augmentation_ideal(f):
        raise NotInIdeal("the support norm is defined on the augmentation ideal only")
    G = f.group
    supp = f.support
    pairs = list(itertools.combinations(range(len(supp)), 2))
    costs = [Fraction(norm(G.mul(G.inv(supp[i]), supp[j]))) for i, j in pairs]
    return supp, pairs, costs


def norm_S(f: GroupRingElement, norm: BiInvariantNorm) -> Fraction:
    """Least total cost ``sum ||u^-1 w||`` of writing ``f`` as a combination
    ``sum c_i (u_i - w_i)`` with ``u_i, w_i`` in ``supp(f)``.

    Shortest path from 0 to ``f`` over functions ``supp(f) -> F_p``, one move
    per pair and nonzero coefficient.
    """
    supp, pairs, costs = _support_problem(f, norm)
    if not supp:
        return Fraction(0)
    scale = math.lcm(*(c.denominator for c in costs)) if costs else 1
    weights = [int(c * scale) for c in costs]
    goal = sum(c * f.p**i for i, (_, c) in enumerate(f.terms))
    d = kernels.residual_shortest_path(f.p, len(supp), goal, pairs, weights)
    if d < 0:
        raise PropertyViolation("augmentation-ideal element not reachable", f)
    return Fraction(d, scale)


def norm_S_bruteforce(f: GroupRingElement, norm: BiInvariantNorm) -> Fraction:
    """Minimum over decompositions using each unordered support pair at most once."""
    supp, pairs, costs = _support_problem(f, norm)
    if not supp:
        return Fraction(0)
    target = [c for _, c in f.terms]
    best = None
    for coeffs in itertools.product(range(f.p), repeat=len(pairs)):
        acc = [0] * len(supp)
        cost = Fraction(0)
        for (i, j), c, w in zip(pairs, coeffs, costs):
            if c:
                acc[i] += c
                acc[j] -= c
                cost += w
        if all((x - t) % f.p == 0 for x, t in zip(acc, target)) and (best is None or cost < best):
            best = cost
    if best is None:
        raise PropertyViolation("no decomposition found", f)
    return best


# --- metric probe ----------------------------------------------------------------


@dataclass(frozen=True)
class ProbeRecord:
    n: int
    N: int
    seed: int
    index: int
    a: GroupRingElement
    b: GroupRingElement
    norm_ab: Fraction
    norm_ba: Fraction


def _random_element(G: Group, p: int, max_len: int, rng: random.Random) -> GroupRingElement:
    length = rng.randint(1, max_len)
    supp = rng.sample(range(G.order), length)
    return GroupRingElement.from_dict(G, p, {g: rng.randrange(1, p) for g in supp})


def metric_probe(n: int, N: int, samples: int, seed: int, p: int = 2) -> list[ProbeRecord]:
    """Seeded pairs ``a, b`` in ``F_p[S_n]`` with lengths at most ``N`` and
    ``eps(a) eps(b) = 1``, with ``||ab - 1||_S`` and ``||ba - 1||_S`` under
    the normalized Hamming norm.

    Sampling uses ``random.Random(seed)``: length uniform in ``1..N``,
    support by ``sample``, coefficients uniform nonzero; pairs failing the
    augmentation condition are rejected and redrawn.
    """
    PrimeField(p)
    norm = hamming_norm(n)
    G = norm.group
    one = GroupRingElement.one(G, p)
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        a = _random_element(G, p, N, rng)
        b = _random_element(G, p, N, rng)
        if augmentation(a) * augmentation(b) % p != 1:
            continue
        out.append(ProbeRecord(n, N, seed, len(out), a, b, norm_S(a * b - one, norm), norm_S(b * a - one, norm)))
    return out


def format_element(f: GroupRingElement) -> str:
    perms = getattr(f.group, "permutations", None)
    if not f.terms:
        return "0"
    if perms is None:
        return "+".join(f"{c}*{g}" for g, c in f.terms)
    return "+".join(f"{c}*" + "".join(str(i) for i in perms[g]) for g, c in f.terms)


PROBE_COLUMNS = ("n", "N", "seed", "index", "a", "b", "norm_ab", "norm_ba")


def probe_rows(records: list[ProbeRecord]) -> list[list[str]]:
    return [
        [str(r.n), str(r.N), str(r.seed), str(r.index), format_element(r.a), format_element(r.b), str(r.norm_ab), str(r.norm_ba)]
        for r in records
    ]


def probe_summary(records: list[ProbeRecord], subadditivity_support_cap: int = 12) -> dict:
    """Empirical ``eps -> max{||ba-1|| : ||ab-1|| <= eps}`` plus checks.

    ``within_2eps`` compares against the conjectured bound ``2 eps``.
    Subadditivity of the support norm is tested on ``f1 = ab-1``,
    ``f2 = ba-1`` whenever ``f1 + f2`` has small support; failures are
    reported, not raised.
    """
    thresholds = sorted({r.norm_ab for r in records})
    curve = []
    for eps in thresholds:
        worst = max(r.norm_ba for r in records if r.norm_ab <= eps)
        curve.append({"eps": str(eps), "max_norm_ba": str(worst), "within_2eps": worst <= 2 * eps})
    exact_units = [r.index for r in records if (r.a * r.b) == GroupRingElement.one(r.a.group, r.a.p)]
    sub_fail = []
    checked = 0
    if records:
        norm = hamming_norm(records[0].n)
        for r in records:
            one = GroupRingElement.one(r.a.group, r.a.p)
            f1, f2 = r.a * r.b - one, r.b * r.a - one
            s = f1 + f2
            if s.length() > subadditivity_support_cap:
                continue
            checked += 1
            if norm_S(s, norm) > r.norm_ab + r.norm_ba:
                sub_fail.append(r.index)
    return {
        "records": len(records),
        "curve": curve,
        "exact_unit_indices": exact_units,
        "subadditivity_checked": checked,
        "subadditivity_failures": sub_fail,
    }
