"""Exact max-flow / min-cut and Gusfield's Gomory-Hu cut tree.

Graphs are undirected: ``nodes`` is a sequence of hashable ids and
``edges`` a sequence of ``(u, v, capacity)``. Parallel edges are merged,
self-loops ignored.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence

_ZERO = Fraction(0)


def _capacity_matrix(nodes, edges) -> tuple[dict, list[dict[int, Fraction]]]:
    pos = {v: i for i, v in enumerate(nodes)}
    cap: list[dict[int, Fraction]] = [dict() for _ in nodes]
    for u, v, c in edges:
        if c < 0:
            raise ValueError(f"negative capacity {c} on {u}-{v}")
        if u == v:
            continue
        i, j = pos[u], pos[v]
        cap[i][j] = cap[i].get(j, _ZERO) + c
        cap[j][i] = cap[j].get(i, _ZERO) + c
    return pos, cap


def max_flow(
    nodes: Sequence[Hashable], edges, s: Hashable, t: Hashable
) -> tuple[Fraction, frozenset]:
    """Edmonds-Karp. Returns the flow value and the source side of a min cut."""
    if s == t:
        raise ValueError("source equals sink")
    pos, cap = _capacity_matrix(nodes, edges)
    si, ti = pos[s], pos[t]
    n = len(nodes)
    flow = [dict.fromkeys(cap[i], _ZERO) for i in range(n)]
    nbrs = [sorted(cap[i]) for i in range(n)]
    total = _ZERO
    while True:
        parent = [-1] * n
        parent[si] = si
        queue = deque([si])
        while queue and parent[ti] < 0:
            u = queue.popleft()
            for v in nbrs[u]:
                if parent[v] < 0 and cap[u][v] - flow[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[ti] < 0:
            break
        aug = None
        v = ti
        while v != si:
            u = parent[v]
            r = cap[u][v] - flow[u][v]
            aug = r if aug is None or r < aug else aug
            v = u
        v = ti
        while v != si:
            u = parent[v]
            flow[u][v] += aug
            flow[v][u] -= aug
            v = u
        total += aug
    side = frozenset(nodes[i] for i in range(n) if parent[i] >= 0)
    return total, side


def cut_value(edges, S) -> Fraction:
    S = set(S)
    return sum((c for u, v, c in edges if (u in S) != (v in S)), _ZERO)


@dataclass(frozen=True)
class GomoryHuTree:
    nodes: tuple
    # (child, parent, capacity); removing the edge isolates the child's subtree
    edges: tuple[tuple[Hashable, Hashable, Fraction], ...]

    def fundamental_cuts(self) -> list[tuple[frozenset, Fraction]]:
        """For each tree edge, the child-side vertex set and the edge capacity."""
        adj: dict = {v: [] for v in self.nodes}
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        out = []
        for child, parent, c in self.edges:
            seen = {child}
            stack = [child]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen and not (u == child and w == parent):
                        seen.add(w)
                        stack.append(w)
            out.append((frozenset(seen), c))
        return out

    def min_cut_value(self, s, t) -> Fraction:
        """Minimum capacity on the tree path from s to t."""
        adj: dict = {v: [] for v in self.nodes}
        for a, b, c in self.edges:
            adj[a].append((b, c))
            adj[b].append((a, c))
        best = {s: None}
        stack = [s]
        while stack:
            u = stack.pop()
            for w, c in adj[u]:
                if w not in best:
                    m = best[u]
                    best[w] = c if m is None or c < m else m
                    stack.append(w)
        return best[t]


def gomory_hu(nodes: Sequence[Hashable], edges) -> GomoryHuTree:
    """Gusfield's algorithm: n-1 max-flow calls, no contractions."""
    nodes = tuple(nodes)
    if not nodes:
        raise ValueError("empty vertex set")
    n = len(nodes)
    parent = [0] * n
    fl = [_ZERO] * n
    for s in range(1, n):
        t = parent[s]
        value, side = max_flow(nodes, edges, nodes[s], nodes[t])
        X = {i for i in range(n) if nodes[i] in side}
        fl[s] = value
        for i in range(n):
            if i != s and i in X and parent[i] == t:
                parent[i] = s
        if parent[t] in X:
            parent[s] = parent[t]
            parent[t] = s
            fl[s] = fl[t]
            fl[t] = value
    tree = tuple((nodes[i], nodes[parent[i]], fl[i]) for i in range(1, n))
    return GomoryHuTree(nodes, tree)
