"""Reference implementations of the hot loops (numpy / pure Python).

Pattern codes are little-endian mixed-radix integers: site ``i`` of a window
carries digit ``(code // k**i) % k``.
"""
from __future__ import annotations

import heapq

import numpy as np

BACKEND = "python"


def image_codes(k: int, n_sites: int, gather: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Local-rule images of every pattern on a window.

    ``gather[j, t]`` is the window position read by output site ``j`` as its
    ``t``-th memory coordinate.  Returns, for each pattern code on the
    window, the code of its image on the output sites.
    """
    total = k**n_sites
    codes = np.arange(total, dtype=np.int64)
    digits = [(codes // k**i) % k for i in range(n_sites)]
    out = np.zeros(total, dtype=np.int64)
    for j, row in enumerate(gather):
        sub = np.zeros(total, dtype=np.int64)
        for t, pos in enumerate(row):
            sub += digits[pos] * k**t
        out += table[sub] * k**j
    return out


def residual_shortest_path(p: int, s: int, goal: int, pairs: np.ndarray, weights: np.ndarray) -> int:
    """Dijkstra over functions ``{0..s-1} -> F_p`` encoded base ``p``.

    A move adds ``c*(e_u - e_w)`` for a listed pair ``(u, w)`` and
    ``c in 1..p-1`` at that pair's weight.  Returns -1 if ``goal`` is
    unreachable.
    """
    if goal == 0:
        return 0
    pw = [p**i for i in range(s + 1)]
    pair_list = [(int(u), int(w), int(wt)) for (u, w), wt in zip(pairs, weights)]
    dist = {0: 0}
    done = set()
    heap = [(0, 0)]
    while heap:
        d, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        if state == goal:
            return d
        for u, w, wt in pair_list:
            du = (state // pw[u]) % p
            dw = (state // pw[w]) % p
            for c in range(1, p):
                nxt = state + ((du + c) % p - du) * pw[u] + ((dw - c) % p - dw) * pw[w]
                nd = d + wt
                if nxt not in done and nd < dist.get(nxt, nd + 1):
                    dist[nxt] = nd
                    heapq.heappush(heap, (nd, nxt))
    return -1
