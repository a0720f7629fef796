"""Fiber graphs ``F(M)`` and compressed fiber graphs ``F(Z M)``."""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .basis import MoveSet
from .errors import DimensionMismatch, EmptyInput, TooLarge
from .lattice import LatticePointSet

INF = math.inf
EDGE_EXPANSION_MAX_NODES = 24
DOT_MAX_NODES = 200


@dataclass
class FiberGraph:
    """Undirected graph on the indices of ``points``.

    ``edges[k] = (i, j)`` with ``i < j`` and ``labels[k] = (move, lam)`` such
    that ``points[j] - points[i] == lam * moves[move]``. Plain graphs only
    carry ``lam = +-1``. Loops are never stored.
    """

    points: LatticePointSet
    moves: MoveSet
    edges: list[tuple[int, int]]
    labels: list[tuple[int, int]]
    compressed: bool = False
    _adj: list[list[int]] | None = field(default=None, repr=False)

    @property
    def adjacency(self) -> list[list[int]]:
        if self._adj is None:
            adj: list[list[int]] = [[] for _ in range(len(self.points))]
            for i, j in self.edges:
                adj[i].append(j)
                adj[j].append(i)
            for row in adj:
                row.sort()
            self._adj = adj
        return self._adj

    @property
    def n_nodes(self) -> int:
        return len(self.points)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def to_json(self) -> dict:
        return {
            "compressed": self.compressed,
            "nodes": [list(p) for p in self.points],
            "moves": [list(m) for m in self.moves],
            "edges": [{"u": i, "v": j, "move": k, "lambda": lam}
                      for (i, j), (k, lam) in zip(self.edges, self.labels)],
        }

    def to_dot(self) -> str:
        if self.n_nodes > DOT_MAX_NODES:
            raise TooLarge(f"DOT export is limited to {DOT_MAX_NODES} nodes")
        lines = ["graph fiber {"]
        for i, p in enumerate(self.points):
            lines.append(f'  {i} [label="{",".join(map(str, p))}"];')
        for (i, j), (k, lam) in zip(self.edges, self.labels):
            lines.append(f'  {i} -- {j} [label="{lam}*m{k}"];')
        lines.append("}")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _check_dims(F: LatticePointSet, M: MoveSet) -> None:
    if len(M) and M.dim != F.dim:
        raise DimensionMismatch(f"moves have dimension {M.dim}, points {F.dim}")


def build_fiber_graph(F: LatticePointSet, M: MoveSet) -> FiberGraph:
    """``u ~ v`` iff ``u - v`` or ``v - u`` is a move."""
    _check_dims(F, M)
    found: dict[tuple[int, int], tuple[int, int]] = {}
    for i, u in enumerate(F):
        for k, m in enumerate(M):
            j = F.get_index(tuple(a + b for a, b in zip(u, m)))
            if j is None or j == i:
                continue
            key = (i, j) if i < j else (j, i)
            lam = 1 if i < j else -1
            if key not in found or (found[key][1] < 0 < lam):
                found[key] = (k, lam)
    edges = sorted(found)
    return FiberGraph(F, M, edges, [found[e] for e in edges], compressed=False)


def line_key(u, m) -> tuple[tuple[int, ...], int]:
    """``(residue, t)`` with ``u = residue + t m``; equal residues share a line ``u + Z m``."""
    j = next(i for i, x in enumerate(m) if x != 0)
    t = u[j] // m[j]
    return tuple(a - t * b for a, b in zip(u, m)), t


def build_compressed_graph(F: LatticePointSet, M: MoveSet) -> FiberGraph:
    """``u ~ v`` iff ``u - v = lam m`` for some move ``m`` and integer ``lam != 0``.

    Each edge keeps the label with the smallest ``|lam|`` (ties: positive
    ``lam``, then the lowest move index).
    """
    _check_dims(F, M)
    best: dict[tuple[int, int], tuple[int, int]] = {}
    for k, m in enumerate(M):
        lines: dict[tuple, list[tuple[int, int]]] = {}
        for i, u in enumerate(F):
            res, t = line_key(u, m)
            lines.setdefault(res, []).append((t, i))
        for members in lines.values():
            for (t1, i1), (t2, i2) in itertools.combinations(members, 2):
                i, j, lam = (i1, i2, t2 - t1) if i1 < i2 else (i2, i1, t1 - t2)
                cur = best.get((i, j))
                cand = (abs(lam), lam < 0, k)
                if cur is None or cand < (abs(cur[1]), cur[1] < 0, cur[0]):
                    best[(i, j)] = (k, lam)
    edges = sorted(best)
    return FiberGraph(F, M, edges, [best[e] for e in edges], compressed=True)


def bfs_distances(G: FiberGraph, source: int) -> list[float]:
    dist: list[float] = [INF] * G.n_nodes
    dist[source] = 0
    queue = deque([source])
    adj = G.adjacency
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] == INF:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distance(G: FiberGraph, u, v) -> float:
    """Number of edges on a shortest ``u``-``v`` path; ``inf`` if disconnected."""
    i, j = G.points.index(u), G.points.index(v)
    return bfs_distances(G, i)[j]


def diameter(G: FiberGraph) -> float:
    """Largest pairwise distance; ``inf`` iff disconnected, 0 for at most one node."""
    best = 0
    for s in range(G.n_nodes):
        ecc = max(bfs_distances(G, s), default=0)
        if ecc == INF:
            return INF
        best = max(best, ecc)
    return best


def connected_components(G: FiberGraph) -> list[list[int]]:
    """Components as sorted index lists, ordered by their smallest index."""
    seen = [False] * G.n_nodes
    comps = []
    adj = G.adjacency
    for s in range(G.n_nodes):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(G: FiberGraph) -> bool:
    return len(connected_components(G)) <= 1


def diameter_lower_bound(F: LatticePointSet, M: MoveSet, kind: str = "l1") -> Fraction:
    """``max ||u - v|| / ||M||``, a lower bound on the diameter of ``F(M)``."""
    if len(F) < 2 or len(M) == 0:
        raise EmptyInput("need at least two points and one move")
    pts = np.array(F.points, dtype=np.int64)
    if kind == "l1":
        # max l1 distance = max over sign vectors s of (max s.x - min s.x)
        spread = max(int(np.ptp(pts @ np.array(s))) for s in itertools.product((1, -1), repeat=F.dim))
    else:
        spread = int(np.max(np.ptp(pts, axis=0)))
    return Fraction(spread, M.norm(kind))


def edge_expansion(G: FiberGraph) -> Fraction:
    """Exact ``min |boundary(S)| / |S|`` over nonempty ``S`` with ``|S| <= |V|/2``.

    Exhaustive over subsets, so limited to 24 nodes.
    """
    n = G.n_nodes
    if n > EDGE_EXPANSION_MAX_NODES:
        raise TooLarge(f"edge expansion is exhaustive; at most {EDGE_EXPANSION_MAX_NODES} nodes")
    if n < 2:
        raise EmptyInput("edge expansion needs at least two nodes")
    best = None
    chunk = 1 << 20
    total = 1 << n
    for start in range(1, total, chunk):
        s = np.arange(start, min(start + chunk, total), dtype=np.int64)
        size = np.zeros_like(s)
        for i in range(n):
            size += (s >> i) & 1
        keep = size <= n // 2
        s, size = s[keep], size[keep]
        if s.size == 0:
            continue
        boundary = np.zeros_like(s)
        for i, j in G.edges:
            boundary += ((s >> i) & 1) ^ ((s >> j) & 1)
        # lcm(1..12) makes boundary/size an exact integer key
        k = int(np.argmin(boundary * (27720 // size)))
        cand = Fraction(int(boundary[k]), int(size[k]))
        best = cand if best is None else min(best, cand)
    return best
