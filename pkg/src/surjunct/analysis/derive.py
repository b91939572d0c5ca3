"""Constructions derived from injectivity sets: inverse rules, image
subshifts of finite type, and Garden-of-Eden patterns."""
from __future__ import annotations

import numpy as np

from ..errors import PropertyViolation, RuleError
from ..group import subset
from ..symbolic import (
    CellularAutomaton,
    LocalRule,
    Pattern,
    SftDescriptor,
    check_budget,
    decode,
    image_automaton,
    power,
    sofic_equals_sft,
    window_images,
)
from .windows import Check, NotFound, InjectivityCertificate


def synthesize_inverse(T: CellularAutomaton, N, budget: int | None = None) -> CellularAutomaton:
    """Partial inverse rule with memory ``N`` read off the image patterns.

    Entries of the table for patterns outside the image are 0 and marked
    undefined.  A clash means ``N`` was not an injectivity set.
    """
    g, k = T.group, T.k
    N = subset(N)
    W = g.set_product(N, T.memory)
    if 0 not in W:
        raise PropertyViolation(f"{N} cannot be an injectivity set: identity outside N*F")
    imgs = window_images(T, W, N, budget)
    vals = (np.arange(k ** len(W), dtype=np.int64) // k ** W.index(0)) % k
    keys = np.unique(imgs * k + vals)
    img_of = keys // k
    if np.any(img_of[1:] == img_of[:-1]):
        bad = int(img_of[1:][img_of[1:] == img_of[:-1]][0])
        raise PropertyViolation(
            f"inverse table conflict on image pattern {decode(bad, k, len(N))}", (N, bad)
        )
    table = np.zeros(k ** len(N), dtype=np.int64)
    defined = np.zeros(k ** len(N), dtype=bool)
    table[img_of] = keys % k
    defined[img_of] = True
    rule = LocalRule(k, N, tuple(int(v) for v in table), tuple(bool(v) for v in defined))
    return CellularAutomaton(g, rule)


def verify_inverse_injectivity_set(
    T: CellularAutomaton, N, inverse: CellularAutomaton, M, budget: int | None = None
) -> Check:
    """Is ``M`` an injectivity set for the inverse on the image of ``T``?

    Only patterns of the image (restrictions of ``T(x)`` to ``M*N``) take
    part; the inverse reads them through its memory ``N``.
    """
    g, k = T.group, T.k
    M = subset(M)
    MN = g.set_product(M, subset(N))
    if 0 not in MN:
        return Check(False, None)
    W = g.set_product(MN, T.memory)
    check_budget(k, len(MN), budget)
    seen = np.unique(window_images(T, W, MN, budget))
    inv_codes = window_images(inverse, MN, M, budget)[seen]
    vals = (seen // k ** MN.index(0)) % k
    keys = np.unique(inv_codes * k + vals)
    head = keys // k
    clash = head[1:][head[1:] == head[:-1]]
    if clash.size == 0:
        return Check(True)
    sel = np.flatnonzero(inv_codes == clash[0])
    a = int(sel[0])
    b = int(sel[vals[sel] != vals[a]][0])
    return Check(False, (Pattern.from_code(MN, int(seen[a]), k), Pattern.from_code(MN, int(seen[b]), k)))


def find_inverse_injectivity_set(
    T: CellularAutomaton, N, inverse: CellularAutomaton, max_radius: int, budget: int | None = None
):
    g = T.group
    for cand in g.candidate_sets(max_radius):
        if verify_inverse_injectivity_set(T, N, inverse, cand, budget).ok:
            return InjectivityCertificate(cand, g.set_product(cand, subset(N)))
    return NotFound(max_radius)


def _image_sft_on(T: CellularAutomaton, D, budget: int | None) -> SftDescriptor:
    g, k = T.group, T.k
    W = g.set_product(D, T.memory)
    seen = np.unique(window_images(T, W, D, budget))
    present = np.zeros(k ** len(D), dtype=bool)
    present[seen] = True
    forbidden = tuple(decode(int(c), k, len(D)) for c in np.flatnonzero(~present))
    return SftDescriptor(g, k, tuple(D), forbidden)


def _check_image_equals(T: CellularAutomaton, S: SftDescriptor, budget: int | None) -> None:
    g = T.group
    if not g.is_finite:
        if not sofic_equals_sft(image_automaton(T), S, budget):
            raise PropertyViolation("image SFT differs from the sofic image", S)
        return
    # finite group: compare the image set with the SFT's configurations
    elems = tuple(range(g.order))
    image = np.zeros(T.k**g.order, dtype=bool)
    image[window_images(T, elems, elems, budget)] = True
    member = np.ones(T.k**g.order, dtype=bool)
    codes = np.arange(T.k**g.order, dtype=np.int64)
    bad = S.forbidden_codes()
    for h in elems:
        pos = [g.mul(h, w) for w in S.window]
        sub = np.zeros_like(codes)
        for t, p in enumerate(pos):
            sub += ((codes // T.k**p) % T.k) * T.k**t
        member &= ~np.isin(sub, list(bad))
    if not np.array_equal(image, member):
        raise PropertyViolation("image SFT differs from the exhaustive image", S)


def image_sft(T: CellularAutomaton, N, M, budget: int | None = None, verify: bool = True) -> SftDescriptor:
    """Forbidden patterns of ``T[A^G]`` on the window ``M*N``.

    The identity is added to ``N`` and ``M`` (supersets of injectivity sets
    are injectivity sets).
    """
    g = T.group
    N1, M1 = subset(tuple(N) + (0,)), subset(tuple(M) + (0,))
    S = _image_sft_on(T, g.set_product(M1, N1), budget)
    if verify:
        _check_image_equals(T, S, budget)
    return S


def iterated_image_sft(T: CellularAutomaton, N, M, n: int, budget: int | None = None, verify: bool = True) -> SftDescriptor:
    """Forbidden patterns of ``T^n[A^G]`` on the window ``M*N^n``."""
    if n < 1:
        raise RuleError("n must be at least 1")
    g = T.group
    N1, M1 = subset(tuple(N) + (0,)), subset(tuple(M) + (0,))
    Tn = power(T, n, budget)
    S = _image_sft_on(Tn, g.set_product(M1, g.set_power(N1, n)), budget)
    if verify:
        _check_image_equals(Tn, S, budget)
    return S


def goe_search(T: CellularAutomaton, window, budget: int | None = None) -> list[Pattern]:
    """All patterns on ``window`` without a preimage, in code order."""
    D = subset(window)
    S = _image_sft_on(T, D, budget)
    return [Pattern(D, p) for p in S.forbidden]


def goe_on_mn(T: CellularAutomaton, N, M, budget: int | None = None) -> list[Pattern]:
    """GOE patterns on ``M*N``.

    For an injective non-surjective automaton one exists on this window;
    on Z and finite groups injective automata are surjective, so the list
    is empty there.
    """
    g = T.group
    return goe_search(T, g.set_product(subset(tuple(M) + (0,)), subset(tuple(N) + (0,))), budget)
