# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled inner loops.  Semantics are defined by ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libcpp.queue cimport priority_queue
from libcpp.pair cimport pair
from libcpp.vector cimport vector

cnp.import_array()

BACKEND = "cython"


def image_codes(long k, long n_sites, cnp.int64_t[:, ::1] gather, cnp.int64_t[::1] table):
    cdef long m = gather.shape[0]
    cdef long f = gather.shape[1]
    cdef long total = 1
    cdef long i, j, t, sub, acc, kp
    for i in range(n_sites):
        total *= k
    out = np.empty(total, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    cdef vector[long] digits = vector[long](n_sites + 1, 0)
    cdef long c
    for c in range(total):
        acc = 0
        kp = 1
        for j in range(m):
            sub = 0
            for t in range(f - 1, -1, -1):
                sub = sub * k + digits[gather[j, t]]
            acc += table[sub] * kp
            kp *= k
        o[c] = acc
        # odometer increment, little-endian
        i = 0
        while i < n_sites:
            digits[i] += 1
            if digits[i] < k:
                break
            digits[i] = 0
            i += 1
    return out


def residual_shortest_path(long p, long s, long goal, cnp.int64_t[:, ::1] pairs, cnp.int64_t[::1] weights):
    cdef long nstates = 1
    cdef long i
    for i in range(s):
        nstates *= p
    if goal == 0:
        return 0
    cdef vector[long] pw = vector[long](s + 1, 1)
    for i in range(1, s + 1):
        pw[i] = pw[i - 1] * p
    cdef vector[long] dist = vector[long](nstates, -1)
    cdef vector[char] done = vector[char](nstates, 0)
    cdef priority_queue[pair[long, long]] heap
    cdef long d, state, nxt, u, w, c, du, dw, nd, q
    cdef long npairs = pairs.shape[0]
    dist[0] = 0
    heap.push(pair[long, long](0, 0))
    while not heap.empty():
        d = -heap.top().first
        state = heap.top().second
        heap.pop()
        if done[state]:
            continue
        done[state] = 1
        if state == goal:
            return d
        for q in range(npairs):
            u = pairs[q, 0]
            w = pairs[q, 1]
            du = (state // pw[u]) % p
            dw = (state // pw[w]) % p
            for c in range(1, p):
                nxt = state + (((du + c) % p) - du) * pw[u] + (((dw - c + p) % p) - dw) * pw[w]
                nd = d + weights[q]
                if not done[nxt] and (dist[nxt] < 0 or nd < dist[nxt]):
                    dist[nxt] = nd
                    heap.push(pair[long, long](-nd, nxt))
    return -1
