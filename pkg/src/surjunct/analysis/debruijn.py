"""Pair-graph algorithms for cellular automata on the integers.

After memory normalization to ``[0, d-1]`` a configuration is a
bi-infinite path in the de Bruijn graph on ``A^(d-1)``.  The pair graph
has vertices ``(u, v)`` and an edge for every pair of de Bruijn edges
``(w1, w2)`` with equal labels; bi-infinite paths are pairs of
configurations with equal images.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..symbolic import CellularAutomaton, ZConfig, decode, normalized_rule


@dataclass
class PairGraph:
    k: int
    d: int
    n_words: int  # vertices of the de Bruijn graph, k**(d-1)
    shift: int
    # (src, dst, w1, w2), sorted by (w1, w2)
    edges: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def n_vertices(self) -> int:
        return self.n_words * self.n_words

    def vertex(self, u: int, v: int) -> int:
        return u * self.n_words + v

    def is_diagonal(self, vertex: int) -> bool:
        u, v = divmod(vertex, self.n_words)
        return u == v

    def out_edges(self) -> list[list[tuple[int, int, int, int]]]:
        out = [[] for _ in range(self.n_vertices)]
        for e in self.edges:
            out[e[0]].append(e)
        return out

    def in_edges(self) -> list[list[tuple[int, int, int, int]]]:
        inc = [[] for _ in range(self.n_vertices)]
        for e in self.edges:
            inc[e[1]].append(e)
        return inc


def pair_graph(T: CellularAutomaton) -> PairGraph:
    d, table, shift = normalized_rule(T)
    k = T.k
    nw = k ** (d - 1)
    by_label: dict[int, list[int]] = {}
    for w in range(k**d):
        by_label.setdefault(int(table[w]), []).append(w)
    edges = []
    for words in by_label.values():
        for w1 in words:
            for w2 in words:
                src = (w1 % nw) * nw + (w2 % nw)
                dst = (w1 // k) * nw + (w2 // k)
                edges.append((src, dst, w1, w2))
    edges.sort(key=lambda e: (e[2], e[3]))
    return PairGraph(k, d, nw, shift, edges)


def essential_vertices(n: int, edges) -> set[int]:
    """Vertices lying on a bi-infinite path."""
    alive = set(range(n))
    while True:
        live = [e for e in edges if e[0] in alive and e[1] in alive]
        keep = alive & {e[0] for e in live} & {e[1] for e in live}
        if keep == alive:
            return alive
        alive = keep


def _bfs_path(start: int, goals, adj, allowed) -> list | None:
    """Shortest edge list from ``start`` to a vertex in ``goals`` (at least one edge)."""
    parent: dict[int, tuple] = {}
    queue = deque()
    for e in adj[start]:
        if e[1] in allowed and e[1] not in parent:
            parent[e[1]] = (None, e)
            queue.append(e[1])
    while queue:
        v = queue.popleft()
        if v in goals:
            path = []
            cur = v
            while cur is not None:
                prev, e = parent[cur]
                path.append(e)
                cur = prev if prev is not None else None
                if prev is None:
                    break
            return list(reversed(path))
        for e in adj[v]:
            if e[1] in allowed and e[1] not in parent:
                parent[e[1]] = (v, e)
                queue.append(e[1])
    return None


def _cycle_through(v: int, adj, allowed) -> list | None:
    return _bfs_path(v, {v}, adj, allowed)


def _reversed_adj(pg: PairGraph):
    """Adjacency with edges reversed, stored as (dst, src, w1, w2)."""
    rev = [[] for _ in range(pg.n_vertices)]
    for s, t, w1, w2 in pg.edges:
        rev[t].append((t, s, w1, w2))
    return rev


def _words(edges, which: int, k: int, d: int) -> tuple[int, ...]:
    return tuple(decode(e[2 + which], k, d)[0] for e in edges)


def _config(left_edges, mid_edges, right_edges, which: int, pg: PairGraph) -> ZConfig:
    k, d = pg.k, pg.d
    return ZConfig(
        _words(left_edges, which, k, d),
        _words(mid_edges, which, k, d),
        _words(right_edges, which, k, d),
        0,
    ).normalized()


def injectivity_witness(pg: PairGraph) -> tuple[ZConfig, ZConfig] | None:
    """Two distinct configurations with equal images, or ``None`` if injective.

    Picks the first off-diagonal pair edge (in ``(w1, w2)`` order) on a
    bi-infinite path, and closes it into a cycle when possible; otherwise
    builds cycle-path-edge-path-cycle.
    """
    alive = essential_vertices(pg.n_vertices, pg.edges)
    cands = [e for e in pg.edges if e[2] != e[3] and e[0] in alive and e[1] in alive]
    if not cands:
        return None
    adj = pg.out_edges()
    e = cands[0]
    back = _bfs_path(e[1], {e[0]}, adj, alive) if e[1] != e[0] else []
    if back is not None:
        cyc = [e] + back
        return _config(cyc, [], cyc, 0, pg), _config(cyc, [], cyc, 1, pg)
    on_cycle = {}

    def cycle_at(v):
        if v not in on_cycle:
            on_cycle[v] = _cycle_through(v, adj, alive)
        return on_cycle[v]

    # left: nearest vertex upstream of the edge's source that lies on a cycle
    rev = _reversed_adj(pg)
    left_cycle, left_path = _nearest_cycle(e[0], rev, alive, cycle_at, reverse=True)
    right_cycle, right_path = _nearest_cycle(e[1], adj, alive, cycle_at, reverse=False)
    mid = left_path + [e] + right_path
    return _config(left_cycle, mid, right_cycle, 0, pg), _config(left_cycle, mid, right_cycle, 1, pg)


def _nearest_cycle(start, adj, alive, cycle_at, reverse: bool):
    order = deque([start])
    parent = {start: None}
    while order:
        v = order.popleft()
        cyc = cycle_at(v)
        if cyc is not None:
            path = []
            cur = v
            while parent[cur] is not None:
                prev, e = parent[cur]
                path.append(e)
                cur = prev
            if reverse:
                # path edges were walked backwards; restore forward orientation
                fwd = [(e[1], e[0], e[2], e[3]) for e in path]
                return cyc, fwd
            return cyc, list(reversed(path))
        for e in adj[v]:
            if e[1] in alive and e[1] not in parent:
                parent[e[1]] = (v, e)
                order.append(e[1])
    raise RuntimeError("essential vertex without a cycle")


def diamond_witness(pg: PairGraph) -> tuple[ZConfig, ZConfig] | None:
    """Two distinct almost-equal configurations with equal images, or ``None``.

    Shortest path from the diagonal back to the diagonal using at least one
    off-diagonal pair edge; outside the path both configurations are 0.
    """
    adj = pg.out_edges()
    diag = [pg.vertex(u, u) for u in range(pg.n_words)]
    parent: dict[tuple[int, int], tuple | None] = {}
    queue = deque()
    for v in diag:
        parent[(v, 0)] = None
        queue.append((v, 0))
    while queue:
        st = queue.popleft()
        v, flag = st
        for e in adj[v]:
            nf = flag | (e[2] != e[3])
            nxt = (e[1], nf)
            if nxt in parent:
                continue
            parent[nxt] = (st, e)
            if nf and pg.is_diagonal(e[1]):
                path = []
                cur = nxt
                while parent[cur] is not None:
                    cur, edge = parent[cur]
                    path.append(edge)
                path.reverse()
                return _diamond_configs(path, pg)
            queue.append(nxt)
    return None


def _diamond_configs(path, pg: PairGraph) -> tuple[ZConfig, ZConfig]:
    k, d = pg.k, pg.d
    out = []
    for which in (0, 1):
        body = list(_words(path, which, k, d))
        last = decode(path[-1][2 + which], k, d)[1:]
        body.extend(last)
        out.append(ZConfig((0,), tuple(body), (0,), 0).normalized())
    return out[0], out[1]
