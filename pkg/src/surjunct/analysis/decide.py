"""Deciders for injectivity, surjectivity, pre-injectivity and
post-surjectivity on the integers and on finite groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import BudgetExceeded, PropertyViolation
from ..symbolic import (
    CellularAutomaton,
    FiniteConfig,
    Pattern,
    apply,
    check_budget,
    decode,
    image_automaton,
    shortest_missing_word,
    window_images,
)
from . import debruijn
from .windows import (
    Check,
    InjectivityCertificate,
    PostSurjectivityCertificate,
    find_injectivity_set,
    find_postsurjectivity_set,
    postsurjectivity_certificate,
    verify_postsurjectivity_set,
)

SHIFT_BUDGET = 2**24  # largest |A|^|G| enumerated for finite groups
RADIUS_CAP = 8


@dataclass(frozen=True)
class Injective:
    certificate: InjectivityCertificate
    method: str


@dataclass(frozen=True)
class NotInjective:
    witness: tuple  # (x, y): x != y, T(x) == T(y)
    method: str


@dataclass(frozen=True)
class Surjective:
    method: str


@dataclass(frozen=True)
class NotSurjective:
    goe: Pattern
    method: str


@dataclass(frozen=True)
class PreInjective:
    method: str


@dataclass(frozen=True)
class NotPreInjective:
    witness: tuple  # (x, y): x ~ y, x != y, T(x) == T(y)
    method: str


@dataclass(frozen=True)
class PostSurjective:
    certificate: PostSurjectivityCertificate
    method: str


@dataclass(frozen=True)
class NotPostSurjective:
    witness: tuple
    counterexample: tuple | None = None
    method: str = "derived"
    reason: str = "not injective; on sofic groups post-surjective implies reversible"


# --- finite groups -------------------------------------------------------------


@dataclass
class _FullShift:
    images: np.ndarray
    unique: np.ndarray
    first_collision: tuple[int, int] | None = field(default=None)


@lru_cache(maxsize=64)
def _full_shift(T: CellularAutomaton, budget: int) -> _FullShift:
    g = T.group
    check_budget(T.k, g.order, budget, "finite full shift")
    elems = tuple(range(g.order))
    imgs = window_images(T, elems, elems, budget)
    uniq, first, counts = np.unique(imgs, return_index=True, return_counts=True)
    collision = None
    if uniq.size < imgs.size:
        dup = uniq[counts > 1][0]
        idx = np.flatnonzero(imgs == dup)
        collision = (int(idx[0]), int(idx[1]))
    return _FullShift(imgs, uniq, collision)


def _finite_config(code: int, T: CellularAutomaton) -> FiniteConfig:
    return FiniteConfig(decode(code, T.k, T.group.order))


# --- deciders ------------------------------------------------------------------


def _certify_injective(T: CellularAutomaton, radius_cap: int, budget: int | None) -> InjectivityCertificate:
    cert = find_injectivity_set(T, radius_cap, budget)
    if not cert:
        raise PropertyViolation(
            f"injective automaton has no injectivity set within radius {radius_cap}", T
        )
    return cert


def decide_injectivity(T: CellularAutomaton, radius_cap: int = RADIUS_CAP, budget: int | None = None, shift_budget: int = SHIFT_BUDGET):
    if T.group.is_finite:
        fs = _full_shift(T, shift_budget)
        if fs.first_collision is not None:
            a, b = fs.first_collision
            return NotInjective((_finite_config(a, T), _finite_config(b, T)), "brute")
        return Injective(_certify_injective(T, radius_cap, budget), "brute")
    pg = debruijn.pair_graph(T)
    wit = debruijn.injectivity_witness(pg)
    if wit is not None:
        x, y = wit
        if x == y or apply(T, x) != apply(T, y):
            raise PropertyViolation("pair-graph witness failed re-check", wit)
        return NotInjective(wit, "deBruijn")
    return Injective(_certify_injective(T, radius_cap, budget), "deBruijn")


def decide_surjectivity(T: CellularAutomaton, shift_budget: int = SHIFT_BUDGET):
    if T.group.is_finite:
        fs = _full_shift(T, shift_budget)
        total = T.k**T.group.order
        if fs.unique.size == total:
            return Surjective("brute")
        present = np.zeros(total, dtype=bool)
        present[fs.unique] = True
        missing = int(np.flatnonzero(~present)[0])
        return NotSurjective(Pattern.from_code(tuple(range(T.group.order)), missing, T.k), "brute")
    word = shortest_missing_word(image_automaton(T))
    if word is None:
        return Surjective("deBruijn")
    return NotSurjective(Pattern(tuple(range(len(word))), word), "deBruijn")


def decide_preinjectivity(T: CellularAutomaton, shift_budget: int = SHIFT_BUDGET):
    if T.group.is_finite:
        # every pair of configurations on a finite group is almost equal
        fs = _full_shift(T, shift_budget)
        if fs.first_collision is None:
            return PreInjective("brute")
        a, b = fs.first_collision
        return NotPreInjective((_finite_config(a, T), _finite_config(b, T)), "brute")
    wit = debruijn.diamond_witness(debruijn.pair_graph(T))
    if wit is None:
        return PreInjective("deBruijn")
    return NotPreInjective(wit, "deBruijn")


def decide_postsurjectivity(
    T: CellularAutomaton,
    radius_cap: int = RADIUS_CAP,
    budget: int | None = None,
    shift_budget: int = SHIFT_BUDGET,
    counterexample_radius: int = 1,
    injectivity=None,
):
    """Post-surjective iff injective on Z and finite groups.

    Positive answers carry a verified symmetric post-surjectivity set
    (the minimal one is kept in ``certificate.minimal``).
    """
    inj = injectivity or decide_injectivity(T, radius_cap, budget, shift_budget)
    g = T.group
    if isinstance(inj, NotInjective):
        probe = tuple(g.elements()) if g.is_finite else g.ball(counterexample_radius)
        try:
            check = verify_postsurjectivity_set(T, probe, budget)
        except BudgetExceeded:  # the direct counterexample is optional
            check = Check(False, None)
        if check.ok:
            raise PropertyViolation("non-injective automaton passed a post-surjectivity check", inj.witness)
        return NotPostSurjective(inj.witness, check.counterexample)
    found = find_postsurjectivity_set(T, radius_cap, budget)
    if not found:
        raise PropertyViolation(
            f"reversible automaton has no post-surjectivity set within radius {radius_cap}", T
        )
    sym = postsurjectivity_certificate(T, g.symmetrize(found.set), budget)
    return PostSurjective(
        PostSurjectivityCertificate(sym.set, sym.window, True, minimal=found.set), "derived"
    )
