"""Finite lattice point sets and their enumeration from implicit descriptions.

Enumeration eliminates equalities by exact row reduction, projects the
remaining inequality system onto leading coordinate prefixes with
Fourier-Motzkin elimination, and then walks the integer points depth first.
Output is always in lexicographic order so that indices are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, UnboundedFiber, UnboundedRegion, ValidationError
from .linalg import rref

Point = tuple[int, ...]


class LatticePointSet:
    """An explicit finite subset of Z^d with a stable lexicographic index.

    ``spec`` optionally keeps the implicit description the set was
    enumerated from; the sampler uses it for constraint-based ray lengths.
    """

    def __init__(self, points: Iterable[Sequence[int]], dim: int | None = None, spec=None):
        pts = [tuple(int(x) for x in p) for p in points]
        if dim is None:
            if not pts:
                raise ValidationError("dimension is required for an empty point set")
            dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise DimensionMismatch(f"all points must have dimension {dim}")
        pts.sort()
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValidationError(f"duplicate point {a}")
        self.dim = dim
        self.points: tuple[Point, ...] = tuple(pts)
        self._index = {p: i for i, p in enumerate(self.points)}
        self.spec = spec

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        return f"LatticePointSet(dim={self.dim}, size={len(self)})"

    def index(self, p) -> int:
        from .errors import PointNotInSet

        try:
            return self._index[tuple(p)]
        except KeyError:
            raise PointNotInSet(f"{tuple(p)} is not in the set") from None

    def get_index(self, p) -> int | None:
        return self._index.get(tuple(p))


def _as_matrix(rows, name) -> tuple[tuple[int, ...], ...] | None:
    if rows is None:
        return None
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionMismatch(f"{name} is not rectangular")
    return out


def _as_vector(v) -> tuple[int, ...] | None:
    return None if v is None else tuple(int(x) for x in v)


@dataclass(frozen=True)
class PolytopeSpec:
    """``{x in Z^d : eq_matrix x = eq_rhs, ineq_matrix x <= ineq_rhs, lower <= x <= upper}``."""

    eq_matrix: tuple | None = None
    eq_rhs: tuple | None = None
    ineq_matrix: tuple | None = None
    ineq_rhs: tuple | None = None
    lower: tuple | None = None
    upper: tuple | None = None
    dim: int = field(default=0)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "eq_matrix", _as_matrix(self.eq_matrix, "equality matrix"))
        set_(self, "ineq_matrix", _as_matrix(self.ineq_matrix, "inequality matrix"))
        for name in ("eq_rhs", "ineq_rhs", "lower", "upper"):
            set_(self, name, _as_vector(getattr(self, name)))
        dims = set()
        for mat in (self.eq_matrix, self.ineq_matrix):
            if mat:
                dims.add(len(mat[0]))
        for vec in (self.lower, self.upper):
            if vec is not None:
                dims.add(len(vec))
        if self.dim:
            dims.add(self.dim)
        if not dims:
            raise ValidationError("polytope needs at least one constraint block")
        if len(dims) != 1:
            raise DimensionMismatch(f"inconsistent dimensions {sorted(dims)}")
        set_(self, "dim", dims.pop())
        for mat, rhs, name in ((self.eq_matrix, self.eq_rhs, "equality"),
                               (self.ineq_matrix, self.ineq_rhs, "inequality")):
            if (mat is None) != (rhs is None):
                raise ValidationError(f"{name} block needs both matrix and rhs")
            if mat is not None and len(mat) != len(rhs):
                raise DimensionMismatch(f"{name} rhs has length {len(rhs)}, expected {len(mat)}")

    def scaled(self, i: int) -> "PolytopeSpec":
        def mul(v):
            return None if v is None else tuple(i * x for x in v)

        return PolytopeSpec(self.eq_matrix, mul(self.eq_rhs), self.ineq_matrix, mul(self.ineq_rhs),
                            mul(self.lower), mul(self.upper), self.dim)

    def inequalities(self) -> list[tuple[tuple[int, ...], int]]:
        """All non-equality constraints as ``(a, c)`` meaning ``a.x <= c``."""
        rows = []
        if self.ineq_matrix is not None:
            rows.extend(zip(self.ineq_matrix, self.ineq_rhs))
        d = self.dim
        for k in range(d):
            e = tuple(int(j == k) for j in range(d))
            if self.upper is not None:
                rows.append((e, self.upper[k]))
            if self.lower is not None:
                rows.append((tuple(-x for x in e), -self.lower[k]))
        return rows

    def equalities(self) -> list[tuple[tuple[int, ...], int]]:
        if self.eq_matrix is None:
            return []
        return list(zip(self.eq_matrix, self.eq_rhs))

    def contains(self, x: Sequence[int]) -> bool:
        for a, c in self.equalities():
            if sum(ai * xi for ai, xi in zip(a, x)) != c:
                return False
        for a, c in self.inequalities():
            if sum(ai * xi for ai, xi in zip(a, x)) > c:
                return False
        return True

    def ray_bounds(self, u: Sequence[int], m: Sequence[int]) -> tuple[int, int]:
        """Integer range ``[lo, hi]`` of ``t`` with ``u + t m`` feasible, for feasible ``u``.

        Uses one division and rounding per constraint row.
        """
        lo, hi = -math.inf, math.inf
        for a, _ in self.equalities():
            if sum(ai * mi for ai, mi in zip(a, m)) != 0:
                return 0, 0
        for a, c in self.inequalities():
            am = sum(ai * mi for ai, mi in zip(a, m))
            if am == 0:
                continue
            slack = c - sum(ai * ui for ai, ui in zip(a, u))
            if am > 0:
                hi = min(hi, slack // am)
            else:
                lo = max(lo, -(slack // -am))
        if lo == -math.inf or hi == math.inf:
            raise UnboundedRegion("ray along the move is unbounded")
        return int(lo), int(hi)


def fiber_spec(A: Sequence[Sequence[int]], b: Sequence[int]) -> PolytopeSpec:
    """The polytope ``{u : Au = b, u >= 0}`` whose lattice points form a fiber."""
    A = _as_matrix(A, "A")
    b = _as_vector(b)
    if not A:
        raise ValidationError("constraint matrix is empty")
    if len(A) != len(b):
        raise DimensionMismatch(f"A has {len(A)} rows but b has length {len(b)}")
    d = len(A[0])
    return PolytopeSpec(eq_matrix=A, eq_rhs=b, lower=(0,) * d)


# --- Fourier-Motzkin ---------------------------------------------------------

def _normalize(a: tuple[Fraction, ...], c: Fraction) -> tuple[tuple[int, ...], Fraction]:
    den = math.lcm(*(x.denominator for x in a), c.denominator)
    ai = [int(x * den) for x in a]
    g = math.gcd(*ai)
    if g == 0:
        return tuple(ai), c * den
    return tuple(x // g for x in ai), c * den / g


def _add_row(system: dict, a, c) -> None:
    key, c = _normalize(a, c)
    if key in system:
        system[key] = min(system[key], c)
    else:
        system[key] = c


def _eliminate_last(system: dict, k: int) -> dict:
    """Eliminate variable ``k`` (the last one still present) from ``a.y <= c`` rows."""
    pos, neg, out = [], [], {}
    for a, c in system.items():
        if a[k] > 0:
            pos.append((a, c))
        elif a[k] < 0:
            neg.append((a, c))
        else:
            out[a[:k]] = min(out.get(a[:k], c), c)
    for ap, cp in pos:
        for an, cn in neg:
            wp, wn = -an[k], ap[k]
            a = tuple(Fraction(wp * x + wn * y) for x, y in zip(ap[:k], an[:k]))
            _add_row(out, a, wp * cp + wn * cn)
    return out


class _Projection:
    """Inequality systems in the free coordinates, projected onto every prefix."""

    def __init__(self, rows: list[tuple[tuple[Fraction, ...], Fraction]], n: int):
        system: dict = {}
        for a, c in rows:
            _add_row(system, a, c)
        levels = [system]
        for k in range(n - 1, -1, -1):
            levels.append(_eliminate_last(levels[-1], k))
        levels.reverse()
        # levels[k] only involves the first k coordinates
        self.levels = levels
        self.n = n

    def feasible(self) -> bool:
        return all(c >= 0 for c in self.levels[0].values())

    def bounds(self, prefix: list[int]) -> tuple[int | None, int | None, bool]:
        """Integer bounds on the next coordinate; the flag is False if the prefix is infeasible."""
        k = len(prefix)
        lo, hi = None, None
        for a, c in self.levels[k + 1].items():
            rhs = c - sum(x * y for x, y in zip(a[:k], prefix))
            ak = a[k]
            if ak == 0:
                if rhs < 0:
                    return None, None, False
            elif ak > 0:
                v = math.floor(rhs / ak)
                hi = v if hi is None else min(hi, v)
            else:
                v = math.ceil(rhs / ak)
                lo = v if lo is None else max(lo, v)
        return lo, hi, True


def _enumerate(spec: PolytopeSpec, unbounded_error) -> list[Point]:
    d = spec.dim
    eqs = spec.equalities()
    if eqs:
        red, pivots = rref([list(a) + [c] for a, c in eqs])
        if d in pivots:
            return []
        rows = [r for r in red if any(r[:d])]
    else:
        rows, pivots = [], []
    free = [j for j in range(d) if j not in pivots]
    n = len(free)

    # x = x0 + T y with y the free coordinates
    x0 = [Fraction(0)] * d
    T = [[Fraction(0)] * n for _ in range(d)]
    for i, p in enumerate(pivots):
        x0[p] = rows[i][d]
        for jj, f in enumerate(free):
            T[p][jj] = -rows[i][f]
    for jj, f in enumerate(free):
        T[f][jj] = Fraction(1)

    ineq = []
    for a, c in spec.inequalities():
        coeff = tuple(sum((a[i] * T[i][jj] for i in range(d)), Fraction(0)) for jj in range(n))
        rhs = Fraction(c) - sum(a[i] * x0[i] for i in range(d))
        ineq.append((coeff, rhs))

    proj = _Projection(ineq, n)
    if not proj.feasible():
        return []

    out: list[Point] = []

    def leaf(y: list[int]) -> None:
        x = [x0[i] + sum(T[i][jj] * y[jj] for jj in range(n)) for i in range(d)]
        if all(v.denominator == 1 for v in x):
            pt = tuple(int(v) for v in x)
            if spec.contains(pt):
                out.append(pt)

    if n == 0:
        leaf([])
        return sorted(out)

    prefix: list[int] = []

    def dfs() -> None:
        lo, hi, ok = proj.bounds(prefix)
        if not ok:
            return
        if lo is None or hi is None:
            raise unbounded_error(
                f"coordinate {free[len(prefix)]} has no finite "
                f"{'lower' if lo is None else 'upper'} bound")
        for v in range(lo, hi + 1):
            prefix.append(v)
            if len(prefix) == n:
                leaf(prefix)
            else:
                dfs()
            prefix.pop()

    dfs()
    return sorted(out)


def enumerate_polytope(spec: PolytopeSpec) -> LatticePointSet:
    """All integer points of ``spec`` in lexicographic order.

    Raises
    ------
    UnboundedRegion
        If the rational relaxation has a coordinate without a finite bound.
    """
    return LatticePointSet(_enumerate(spec, UnboundedRegion), dim=spec.dim, spec=spec)


def enumerate_fiber(A: Sequence[Sequence[int]], b: Sequence[int]) -> LatticePointSet:
    """The fiber ``{u in N^d : Au = b}``; empty when ``b`` is not in ``NA``."""
    spec = fiber_spec(A, b)
    return LatticePointSet(_enumerate(spec, UnboundedFiber), dim=spec.dim, spec=spec)


def dilate(spec: PolytopeSpec, i: int) -> LatticePointSet:
    """Lattice points of the ``i``-fold dilation of ``spec``."""
    if i < 1:
        raise ValidationError("dilation factor must be a positive integer")
    return enumerate_polytope(spec.scaled(i))


def box(lower: Sequence[int], upper: Sequence[int]) -> LatticePointSet:
    """The box ``[l_1, u_1] x ... x [l_d, u_d]``; ``box((1, 1), (2, 5))`` is ``[2] x [5]``."""
    return enumerate_polytope(PolytopeSpec(lower=lower, upper=upper))


def halfspace_set(a: Sequence[int], b: int) -> LatticePointSet:
    """``{u in N^d : a.u <= b}``."""
    d = len(a)
    return enumerate_polytope(PolytopeSpec(ineq_matrix=[a], ineq_rhs=[b], lower=(0,) * d))


def cross_polytope(d: int, r: int) -> LatticePointSet:
    """``{u in Z^d : ||u||_1 <= r}`` via its 2^d facet inequalities."""
    import itertools

    signs = list(itertools.product((1, -1), repeat=d))
    return enumerate_polytope(PolytopeSpec(ineq_matrix=signs, ineq_rhs=[r] * len(signs)))


def staircase(n: int) -> LatticePointSet:
    """``{(0,0), (0,1), (1,1), (1,2), ..., (n,n)}``."""
    pts = [(k, k) for k in range(n + 1)] + [(k, k + 1) for k in range(n)]
    return LatticePointSet(pts)
