"""Rays ``(u + Z m) ∩ F``, ray matrices and the intersecting ray property."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basis import MoveSet, scalar_multiple
from .errors import CollinearMoves, SubsetViolation, ValidationError
from .graph import build_fiber_graph, connected_components, line_key
from .lattice import LatticePointSet
from .linalg import nullspace, rank


def ray_decomposition(F: LatticePointSet, m: Sequence[int]) -> list[list[int]]:
    """Partition of ``F`` into rays along ``m``.

    Each ray is a list of point indices ordered by the line parameter; rays
    are ordered by their lexicographically smallest point. Points of a ray
    need not be consecutive on the line when ``F`` has gaps.
    """
    m = tuple(m)
    if not any(m):
        raise ValidationError("move must be nonzero")
    lines: dict[tuple, list[tuple[int, int]]] = {}
    order: list[tuple] = []
    for i, u in enumerate(F):
        res, t = line_key(u, m)
        if res not in lines:
            lines[res] = []
            order.append(res)
        lines[res].append((t, i))
    return [[i for _, i in sorted(lines[res])] for res in order]


def ray_index(F: LatticePointSet, m: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """Rays along ``m`` plus, for every point, the position of its ray."""
    rays = ray_decomposition(F, m)
    where = [0] * len(F)
    for r, members in enumerate(rays):
        for i in members:
            where[i] = r
    return rays, where


def ray(u: Sequence[int], m: Sequence[int], F: LatticePointSet) -> list[tuple[int, ...]]:
    """The points of ``(u + Z m) ∩ F`` ordered by the line parameter."""
    F.index(u)
    m = tuple(m)
    res, _ = line_key(tuple(u), m)
    pts = [(line_key(p, m)[1], p) for p in F if line_key(p, m)[0] == res]
    return [p for _, p in sorted(pts)]


@dataclass
class RayMatrix:
    """Entries ``|R ∩ V|`` for rays ``R`` along moves of ``M'`` and components ``V`` of ``F(M \\ M')``.

    ``row_labels[r] = (move index in M, ray as point indices)``;
    ``col_labels[c]`` is the sorted list of point indices of a component.
    """

    entries: list[list[int]]
    row_labels: list[tuple[int, list[int]]]
    col_labels: list[list[int]]
    points: LatticePointSet

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.col_labels)

    def to_csv(self) -> str:
        pts = self.points
        head = ["move", "ray"] + ["{" + " ".join(",".join(map(str, pts[i])) for i in comp) + "}"
                                  for comp in self.col_labels]
        lines = [";".join(head)]
        for (k, members), row in zip(self.row_labels, self.entries):
            ray_s = "{" + " ".join(",".join(map(str, pts[i])) for i in members) + "}"
            lines.append(";".join([f"m{k}", ray_s] + [str(x) for x in row]))
        return "\n".join(lines) + "\n"


def ray_matrix(F: LatticePointSet, M: MoveSet, Mprime: Sequence[int] | Sequence[Sequence[int]]) -> RayMatrix:
    """The ray matrix of ``F(M)`` along ``M'``.

    ``Mprime`` is given either as move indices into ``M`` or as move vectors.
    Rows: moves of ``M'`` in the given order, rays of a move ordered by their
    lexicographically smallest point. Columns: components of the plain graph
    ``F(M \\ M')`` numbered by first appearance while reading the rows in
    order, each ray read from its lexicographically largest point down.
    """
    idx = _as_indices(M, Mprime)
    if not idx:
        raise SubsetViolation("M' must be nonempty")
    rest = M.subset([k for k in range(len(M)) if k not in idx])
    comps = connected_components(build_fiber_graph(F, rest))
    comp_of = [0] * len(F)
    for c, members in enumerate(comps):
        for i in members:
            comp_of[i] = c

    rows: list[tuple[int, list[int]]] = []
    for k in idx:
        rows.extend((k, r) for r in ray_decomposition(F, M[k]))

    col_order: list[int] = []
    placed = set()
    for _, members in rows:
        for i in sorted(members, reverse=True):
            c = comp_of[i]
            if c not in placed:
                placed.add(c)
                col_order.append(c)
    for c in range(len(comps)):
        if c not in placed:
            col_order.append(c)
    pos = {c: j for j, c in enumerate(col_order)}
    entries = []
    for _, members in rows:
        row = [0] * len(comps)
        for i in members:
            row[pos[comp_of[i]]] += 1
        entries.append(row)
    return RayMatrix(entries, rows, [comps[c] for c in col_order], F)


def _as_indices(M: MoveSet, Mprime) -> list[int]:
    out = []
    for x in Mprime:
        if isinstance(x, int):
            if not 0 <= x < len(M):
                raise SubsetViolation(f"move index {x} out of range")
            out.append(x)
        else:
            try:
                out.append(M.index(x))
            except ValueError:
                raise SubsetViolation(f"{tuple(x)} is not a move of M") from None
    if len(set(out)) != len(out):
        raise SubsetViolation("M' lists a move twice")
    return out


def ray_matrix_kernel(R: RayMatrix) -> tuple[int, int, list[list[Fraction]]]:
    """``(rank, kernel dimension, kernel basis)`` by exact row reduction."""
    n_cols = R.shape[1]
    if not R.entries:
        return 0, n_cols, nullspace([], n_cols)
    basis = nullspace(R.entries)
    r = rank(R.entries)
    return r, n_cols - r, basis


def intersecting_ray_property(F: LatticePointSet, m: Sequence[int], mprime: Sequence[int]) -> bool:
    """Whether ``(m, m')`` has the intersecting ray property in ``F``.

    Quantifies over all ray quadruples ``(R1, R2, R1', R2')`` with
    ``R1 ∩ R1'`` and ``R2 ∩ R2'`` nonempty; every such quadruple is witnessed
    by a pair of points ``(u1, u2)``.
    """
    m, mprime = tuple(m), tuple(mprime)
    if not any(m) or not any(mprime):
        raise ValidationError("moves must be nonzero")
    if scalar_multiple(m, mprime) is not None:
        raise CollinearMoves(f"{m} and {mprime} are collinear")
    rays, on = ray_index(F, m)
    rays_p, on_p = ray_index(F, mprime)
    sizes = [len(r) for r in rays]
    sizes_p = [len(r) for r in rays_p]
    # meets[a] = set of m'-rays that the m-ray a intersects
    meets = [set() for _ in rays]
    for i in range(len(F)):
        meets[on[i]].add(on_p[i])
    pairs = {(on[i], on_p[i]) for i in range(len(F))}
    for r1, r1p in pairs:
        for r2, r2p in pairs:
            if r2p in meets[r1]:
                if r1p not in meets[r2]:
                    return False
                if sizes[r1] * sizes_p[r2p] != sizes[r2] * sizes_p[r1p]:
                    return False
    return True


def has_intersecting_ray_property(F: LatticePointSet, M: MoveSet) -> bool:
    """Whole-set property: every pair of distinct moves has it."""
    for a in range(len(M)):
        for b in range(a + 1, len(M)):
            if scalar_multiple(M[a], M[b]) is not None:
                # m and -m share rays; the pair condition is vacuous for them
                continue
            if not intersecting_ray_property(F, M[a], M[b]):
                return False
    return True
