"""Brute-force oracles on the integers, independent of the pair graph.

Periodic configurations of period ``P`` are configurations on the cyclic
group ``Z/P``; the automaton acts there with its memory read mod ``P``.
"""
from __future__ import annotations

import numpy as np

from .. import kernels
from ..symbolic import CellularAutomaton, window_images


def periodic_images(T: CellularAutomaton, period: int) -> np.ndarray:
    gather = [[(j + s) % period for s in T.memory] for j in range(period)]
    return kernels.image_codes(T.k, period, gather, T.rule.array)


def _cyclic_digits(code: int, k: int, n: int) -> list[int]:
    return [(code // k**i) % k for i in range(n)]


def periodic_collision(T: CellularAutomaton, max_period: int = 10, agree_run: int | None = None):
    """Two distinct periodic configurations with equal images.

    With ``agree_run=r`` the pair must also agree on ``r`` cyclically
    consecutive cells; for ``r = d-1`` (``d`` the memory span) such a pair
    cuts down to a pair of almost-equal configurations with equal images.
    Returns ``(period, code_x, code_y)`` or ``None``.
    """
    k = T.k
    for P in range(1, max_period + 1):
        imgs = periodic_images(T, P)
        order = np.argsort(imgs, kind="stable")
        sorted_imgs = imgs[order]
        starts = np.flatnonzero(np.r_[True, sorted_imgs[1:] != sorted_imgs[:-1]])
        ends = np.r_[starts[1:], len(order)]
        for a, b in zip(starts, ends):
            if b - a < 2:
                continue
            members = order[a:b]
            if agree_run is None:
                return P, int(members[0]), int(members[1])
            digits = [_cyclic_digits(int(c), k, P) for c in members]
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    if _agree_on_run(digits[i], digits[j], agree_run):
                        return P, int(members[i]), int(members[j])
    return None


def _agree_on_run(x: list[int], y: list[int], run: int) -> bool:
    P = len(x)
    if run <= 0:
        return True
    if run >= P:
        return False  # would force x == y
    same = [a == b for a, b in zip(x, y)]
    for start in range(P):
        if all(same[(start + t) % P] for t in range(run)):
            return True
    return False


def brute_injective(T: CellularAutomaton, max_period: int = 10) -> bool:
    return periodic_collision(T, max_period) is None


def brute_preinjective(T: CellularAutomaton, max_period: int = 10) -> bool:
    span = T.memory[-1] - T.memory[0] + 1
    return periodic_collision(T, max_period, agree_run=span - 1) is None


def brute_surjective(T: CellularAutomaton, max_length: int = 8) -> bool:
    """Every word of length at most ``max_length`` occurs in the image."""
    fmin, fmax = T.memory[0], T.memory[-1]
    for L in range(1, max_length + 1):
        window = tuple(range(fmin, L - 1 + fmax + 1))
        imgs = window_images(T, window, tuple(range(L)))
        if np.unique(imgs).size != T.k**L:
            return False
    return True
