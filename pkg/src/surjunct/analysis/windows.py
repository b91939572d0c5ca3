"""Pattern-level checks for injectivity sets and post-surjectivity sets,
and the canonical minimal-set search."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PropertyViolation
from ..group import subset
from ..symbolic import CellularAutomaton, Pattern, sub_codes, window_images


@dataclass(frozen=True)
class Check:
    ok: bool
    counterexample: tuple | None = None


@dataclass(frozen=True)
class InjectivityCertificate:
    set: tuple[int, ...]
    window: tuple[int, ...]
    exhaustive: bool = True


@dataclass(frozen=True)
class PostSurjectivityCertificate:
    set: tuple[int, ...]
    window: tuple[int, ...]
    exhaustive: bool = True
    minimal: tuple[int, ...] | None = None


@dataclass(frozen=True)
class NotFound:
    max_radius: int

    def __bool__(self) -> bool:
        return False


def _digit(codes: np.ndarray, k: int, pos: int) -> np.ndarray:
    return (codes // k**pos) % k


def verify_injectivity_set(T: CellularAutomaton, N, budget: int | None = None) -> Check:
    """Is ``N`` an injectivity set for ``T``?

    Checks every pair of patterns on ``N*F`` that differ at the identity;
    by equivariance this covers all sites.  The counterexample is a pair of
    patterns with equal images on ``N``.
    """
    g, k = T.group, T.k
    N = subset(N)
    W = g.set_product(N, T.memory)
    if 0 not in W:
        dom = subset(W + (0,))
        zero = tuple(0 for _ in dom)
        flipped = tuple(1 if h == 0 else 0 for h in dom)
        return Check(False, (Pattern(dom, zero), Pattern(dom, flipped)))
    imgs = window_images(T, W, N, budget)
    vals = _digit(np.arange(k ** len(W), dtype=np.int64), k, W.index(0))
    keys = np.unique(imgs * k + vals)
    img_of = keys // k
    clash = np.unique(img_of[1:][img_of[1:] == img_of[:-1]])
    if clash.size == 0:
        return Check(True)
    c1 = int(np.flatnonzero(np.isin(imgs, clash))[0])
    c2 = int(np.flatnonzero((imgs == imgs[c1]) & (vals != vals[c1]))[0])
    return Check(False, (Pattern.from_code(W, c1, k), Pattern.from_code(W, c2, k)))


def verify_postsurjectivity_set(T: CellularAutomaton, M, budget: int | None = None) -> Check:
    """Is ``M`` a post-surjectivity set for ``T``?

    Single-site form: for every pattern ``q`` on ``W = M*F^-1*F`` and every
    symbol ``a`` other than the image of ``q`` at the identity, some
    reassignment of ``q`` on ``M`` keeps the images on ``M*F^-1`` minus the
    identity and turns the identity's image into ``a``.  Changing a finite
    difference set one site at a time reduces the general condition to
    this one.  The counterexample is ``(q, a)``.
    """
    g, k = T.group, T.k
    M = subset(M)
    U = g.set_product(M, g.set_inverse(T.memory))
    if 0 not in U:
        return Check(False, None)
    W = g.set_product(U, T.memory)
    imgs = window_images(T, W, U, budget)
    u0 = U.index(0)
    val = _digit(imgs, k, u0)
    rest = imgs - val * k**u0
    outside = [i for i, h in enumerate(W) if h not in M]
    ctx = sub_codes(k, len(W), outside)
    key = ctx * k ** len(U) + rest
    seen = np.unique(key * k + val)
    per_key = np.unique(seen // k, return_counts=True)
    short = per_key[0][per_key[1] < k]
    if short.size == 0:
        return Check(True)
    q = int(np.flatnonzero(np.isin(key, short))[0])
    have = set((seen[seen // k == key[q]] % k).tolist())
    a = min(set(range(k)) - have)
    return Check(False, (Pattern.from_code(W, q, k), a))


def find_injectivity_set(T: CellularAutomaton, max_radius: int, budget: int | None = None):
    """Least verifying candidate in canonical order, or ``NotFound``."""
    g = T.group
    for cand in g.candidate_sets(max_radius):
        if 0 not in g.set_product(cand, T.memory):
            continue
        if verify_injectivity_set(T, cand, budget).ok:
            return InjectivityCertificate(cand, g.set_product(cand, T.memory))
    return NotFound(max_radius)


def find_postsurjectivity_set(T: CellularAutomaton, max_radius: int, budget: int | None = None):
    g = T.group
    finv = g.set_inverse(T.memory)
    for cand in g.candidate_sets(max_radius):
        if 0 not in g.set_product(cand, finv):
            continue
        if verify_postsurjectivity_set(T, cand, budget).ok:
            return PostSurjectivityCertificate(
                cand, g.set_product(g.set_product(cand, finv), T.memory), minimal=cand
            )
    return NotFound(max_radius)


def postsurjectivity_certificate(T: CellularAutomaton, M, budget: int | None = None) -> PostSurjectivityCertificate:
    g = T.group
    M = subset(M)
    check = verify_postsurjectivity_set(T, M, budget)
    if not check.ok:
        raise PropertyViolation(f"{M} is not a post-surjectivity set", check.counterexample)
    window = g.set_product(g.set_product(M, g.set_inverse(T.memory)), T.memory)
    return PostSurjectivityCertificate(M, window)


def dual_set(T: CellularAutomaton, N, budget: int | None = None) -> PostSurjectivityCertificate:
    """Symmetrize an injectivity set and certify it as a post-surjectivity set."""
    g = T.group
    sym = g.symmetrize(N)
    check = verify_postsurjectivity_set(T, sym, budget)
    if not check.ok:
        raise PropertyViolation(
            f"symmetric injectivity set {sym} failed as a post-surjectivity set", check.counterexample
        )
    return postsurjectivity_certificate(T, sym, budget)


def dual_injectivity_set(T: CellularAutomaton, M, budget: int | None = None) -> InjectivityCertificate:
    """Symmetrize a post-surjectivity set and certify it as an injectivity set."""
    g = T.group
    sym = g.symmetrize(M)
    check = verify_injectivity_set(T, sym, budget)
    if not check.ok:
        raise PropertyViolation(
            f"symmetric post-surjectivity set {sym} failed as an injectivity set", check.counterexample
        )
    return InjectivityCertificate(sym, g.set_product(sym, T.memory))
