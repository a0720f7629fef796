"""Independent reference implementations used to derive expected values.

Everything here is deliberately naive (brute force over boxes, definitions
applied literally) and shares no code with the package under test.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

import networkx as nx
import numpy as np


def points_in_box(lo, hi, keep):
    """All integer points of the box ``lo <= x <= hi`` satisfying ``keep``."""
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return sorted(p for p in itertools.product(*ranges) if keep(p))


def fiber_brute(A, b, bound):
    d = len(A[0])
    return points_in_box([0] * d, [bound] * d,
                         lambda u: all(sum(a * x for a, x in zip(row, u)) == bi for row, bi in zip(A, b)))


def kernel_vectors(A, bound):
    d = len(A[0])
    for v in itertools.product(range(-bound, bound + 1), repeat=d):
        if any(v) and all(sum(a * x for a, x in zip(row, v)) == 0 for row in A):
            yield v


def conformally_below(g, z):
    return all(gi * zi >= 0 and abs(gi) <= abs(zi) for gi, zi in zip(g, z))


def graver_brute(A, bound):
    """Conformally minimal kernel vectors with sup-norm at most ``bound``."""
    ker = list(kernel_vectors(A, bound))
    return {v for v in ker if not any(w != v and conformally_below(w, v) for w in ker)}


def plain_edges(F, M):
    S = set(map(tuple, F))
    out = set()
    for u in S:
        for v in S:
            if u < v:
                diff = tuple(a - b for a, b in zip(v, u))
                neg = tuple(-x for x in diff)
                if any(tuple(m) in (diff, neg) for m in M):
                    out.add((u, v))
    return out


def multiple_of(diff, m):
    """Integer ``lam != 0`` with ``diff = lam * m``, else None."""
    lam = None
    for x, y in zip(diff, m):
        if y == 0:
            if x != 0:
                return None
            continue
        if x % y:
            return None
        q = x // y
        if lam is None:
            lam = q
        elif lam != q:
            return None
    return lam if lam else None


def compressed_edges(F, M):
    S = sorted(map(tuple, F))
    out = set()
    for u, v in itertools.combinations(S, 2):
        diff = tuple(a - b for a, b in zip(v, u))
        if any(multiple_of(diff, m) for m in M):
            out.add((u, v))
    return out


def nx_graph(F, edges):
    G = nx.Graph()
    G.add_nodes_from(map(tuple, F))
    G.add_edges_from(edges)
    return G


def nx_diameter(F, edges):
    G = nx_graph(F, edges)
    if len(G) <= 1:
        return 0
    if not nx.is_connected(G):
        return float("inf")
    return nx.diameter(G)


def ray_points(F, u, m):
    """``(u + Z m) ∩ F`` by scanning the parameter range that can hit ``F``."""
    S = set(map(tuple, F))
    span = max(max(abs(x) for p in S for x in p), 1) * 2 + 2
    return [tuple(a + t * b for a, b in zip(u, m)) for t in range(-span, span + 1)
            if tuple(a + t * b for a, b in zip(u, m)) in S]


def heat_bath_dense(F, moves, f, pi=None):
    """The heat-bath matrix straight from its definition, as a Fraction grid."""
    F = sorted(map(tuple, F))
    idx = {p: i for i, p in enumerate(F)}
    n = len(F)
    w = [Fraction(1)] * n if pi is None else [Fraction(x) for x in pi]
    H = [[Fraction(0)] * n for _ in range(n)]
    for m, fm in zip(moves, f):
        for x in F:
            R = ray_points(F, x, m)
            mass = sum(w[idx[y]] for y in R)
            for y in R:
                H[idx[x]][idx[y]] += Fraction(fm) * w[idx[y]] / mass
    return H


def simple_walk_dense(F, moves):
    F = sorted(map(tuple, F))
    idx = {p: i for i, p in enumerate(F)}
    pm = set()
    for m in moves:
        pm.add(tuple(m))
        pm.add(tuple(-x for x in m))
    n = len(F)
    P = [[Fraction(0)] * n for _ in range(n)]
    for x in F:
        for m in pm:
            y = tuple(a + b for a, b in zip(x, m))
            P[idx[x]][idx.get(y, idx[x])] += Fraction(1, len(pm))
    return P


def to_float(M):
    return np.array([[float(x) for x in row] for row in M])


def slem_numpy(P, pi=None):
    """SLEM via numpy's general eigensolver on ``P`` itself (no symmetrization)."""
    ev = np.sort(np.linalg.eigvals(to_float(P)).real)[::-1]
    if len(ev) <= 1:
        return 0.0
    return float(max(ev[1], -ev[-1]))


def augmentation_brute(F, M):
    """Augmentation length by BFS over (point, frozenset of used moves); None if not augmenting."""
    S = set(map(tuple, F))
    pts = sorted(S)
    worst = 0
    for u in pts:
        dist = {u: 0}
        seen = {(u, frozenset())}
        queue = deque([(u, frozenset(), 0)])
        while queue:
            x, used, d = queue.popleft()
            for k, m in enumerate(M):
                if k in used:
                    continue
                for y in ray_points(pts, x, m):
                    if y == x:
                        continue
                    state = (y, used | {k})
                    if state in seen:
                        continue
                    seen.add(state)
                    dist.setdefault(y, d + 1)
                    queue.append((y, used | {k}, d + 1))
        if len(dist) < len(pts):
            return None
        worst = max(worst, max(dist.values()))
    return worst


def rays_of(F, m):
    """Partition of ``F`` into rays along ``m`` as frozensets."""
    out = set()
    for u in F:
        out.add(frozenset(ray_points(F, u, m)))
    return out


def irp_by_definition(F, m, mp):
    """The intersecting ray property quantified over all ray 4-tuples."""
    Rm, Rp = rays_of(F, m), rays_of(F, mp)
    for R1, R2 in itertools.product(Rm, repeat=2):
        for R1p, R2p in itertools.product(Rp, repeat=2):
            if R1 & R1p and R2 & R2p and R1 & R2p:
                if not (R1p & R2):
                    return False
                if len(R1) * len(R2p) != len(R2) * len(R1p):
                    return False
    return True


def independence_model(n):
    """Constraints of the 2 x n tables with row sums (n-1, 1) and unit column sums."""
    A = [[1] * n + [0] * n, [0] * n + [1] * n]
    A += [[int(j == c or j == n + c) for j in range(2 * n)] for c in range(n)]
    return A, [n - 1, 1] + [1] * n


def basic_moves(n):
    """One representative of each basic move e_1i - e_1j - e_2i + e_2j of the 2 x n model."""
    out = []
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * (2 * n)
        v[i], v[j], v[n + i], v[n + j] = 1, -1, -1, 1
        out.append(tuple(v))
    return out
