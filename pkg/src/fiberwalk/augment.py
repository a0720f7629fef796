"""Augmenting paths, augmentation length and longest rays.

An augmenting path uses every move at most once, each with an arbitrary
nonzero integer coefficient. Searches run over states ``(point, used moves)``
with the used moves kept as a bitmask.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .basis import MoveSet
from .errors import ResourceLimit, ValidationError
from .graph import line_key
from .lattice import LatticePointSet
from .rays import ray_index

DEFAULT_STATE_CAP = 10_000_000


@dataclass
class AugmentationReport:
    augmenting: bool
    auglen: int | None
    witness_pair: tuple[tuple[int, ...], tuple[int, ...]] | None
    witness_path: list[tuple[int, int]] | None
    longest_rays: list[int] = field(default_factory=list)
    longest_ray_overall: int = 0

    def to_json(self) -> dict:
        return {
            "augmenting": self.augmenting,
            "auglen": self.auglen,
            "witness_pair": None if self.witness_pair is None else [list(p) for p in self.witness_pair],
            "witness_path": None if self.witness_path is None else
            [{"move": k, "lambda": lam} for k, lam in self.witness_path],
            "longest_rays": self.longest_rays,
            "longest_ray_overall": self.longest_ray_overall,
        }


def _ray_tables(F: LatticePointSet, M: MoveSet):
    # per move: list of rays (point indices) and the ray each point sits on
    return [ray_index(F, m) for m in M]


def minimal_augmenting_path(F: LatticePointSet, M: MoveSet, u, v) -> list[tuple[int, int]] | None:
    """Shortest path from ``u`` to ``v`` in ``F^c(M)`` using pairwise distinct moves.

    Returns ``[(move index, lam), ...]`` or None. Among shortest paths the
    one found first when moves are tried in index order is returned.
    """
    src, dst = F.index(u), F.index(v)
    if src == dst:
        raise ValidationError("endpoints must be distinct")
    tables = _ray_tables(F, M)
    t = [[line_key(p, m)[1] for p in F] for m in M]
    start = (src, 0)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        x, mask = state
        for k in range(len(M)):
            if mask >> k & 1:
                continue
            rays, where = tables[k]
            for y in rays[where[x]]:
                if y == x:
                    continue
                nxt = (y, mask | 1 << k)
                if nxt in parent:
                    continue
                parent[nxt] = (state, k, t[k][y] - t[k][x])
                if y == dst:
                    path = []
                    cur = nxt
                    while parent[cur] is not None:
                        prev, kk, lam = parent[cur]
                        path.append((kk, lam))
                        cur = prev
                    return path[::-1]
                queue.append(nxt)
    return None


def _step_matrices(F: LatticePointSet, M: MoveSet) -> list[np.ndarray]:
    n = len(F)
    mats = []
    for rays, where in _ray_tables(F, M):
        C = np.zeros((n, n), dtype=bool)
        for members in rays:
            idx = np.array(members)
            C[np.ix_(idx, idx)] = True
        np.fill_diagonal(C, False)
        mats.append(C.astype(np.float32))
    return mats


def longest_ray(F: LatticePointSet, M: MoveSet) -> tuple[list[int], list[int], int]:
    """Per-move longest ray lengths, the same sorted descending, and the overall maximum."""
    if len(M) == 0:
        raise ValidationError("need at least one move")
    per = [max((len(r) for r in rays), default=0) for rays, _ in _ray_tables(F, M)]
    return per, sorted(per, reverse=True), max(per)


def augmentation_length(F: LatticePointSet, M: MoveSet, cap: int = DEFAULT_STATE_CAP) -> AugmentationReport:
    """Decide whether ``M`` is augmenting for ``F`` and compute its augmentation length.

    Level-synchronous search over ``(point, used-move set)`` states for all
    sources at once: ``reach[S][u, v]`` says ``v`` is reachable from ``u``
    using exactly the moves in ``S``. Level ``s`` holds all ``|S| = s``.

    Raises
    ------
    ResourceLimit
        If ``|F| * 2^|M|`` exceeds ``cap``.
    """
    n, k = len(F), len(M)
    if n * (1 << k) > cap:
        raise ResourceLimit(f"state space {n} * 2^{k} exceeds cap {cap}")
    per, _, overall = longest_ray(F, M) if k else ([], [], 0)
    if n <= 1:
        return AugmentationReport(True, 0, None, None, per, overall)
    steps = _step_matrices(F, M)
    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    level = {0: np.eye(n, dtype=bool)}
    for s in range(1, k + 1):
        nxt: dict[int, np.ndarray] = {}
        for mask, R in level.items():
            for j in range(k):
                if mask >> j & 1:
                    continue
                # float products of 0/1 matrices: counts never cancel, so > 0 is exact
                grown = (R.astype(np.float32) @ steps[j]) > 0
                key = mask | 1 << j
                nxt[key] = nxt[key] | grown if key in nxt else grown
        level = nxt
        if not level:
            break
        reached = np.logical_or.reduce(list(level.values()))
        fresh = reached & (dist < 0)
        dist[fresh] = s
    if (dist < 0).any():
        i, j = map(int, np.argwhere(dist < 0)[0])
        return AugmentationReport(False, None, (F[i], F[j]), None, per, overall)
    auglen = int(dist.max())
    i, j = map(int, np.argwhere(dist == auglen)[0])
    path = minimal_augmenting_path(F, M, F[i], F[j])
    return AugmentationReport(True, auglen, (F[i], F[j]), path, per, overall)


def apply_path(u: Sequence[int], M: MoveSet, path: list[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Points visited when following ``path`` from ``u``."""
    pts = [tuple(u)]
    for k, lam in path:
        pts.append(tuple(a + lam * b for a, b in zip(pts[-1], M[k])))
    return pts
