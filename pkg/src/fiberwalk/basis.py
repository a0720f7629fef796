"""Move sets, move distributions, Graver bases and conformal decompositions."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DecompositionFailure,
    DimensionMismatch,
    NotInKernel,
    ResourceLimit,
    ValidationError,
)

Move = tuple[int, ...]

DEFAULT_GRAVER_CAP = 100_000


def positive_part(m: Sequence[int]) -> Move:
    return tuple(max(x, 0) for x in m)


def negative_part(m: Sequence[int]) -> Move:
    return tuple(max(-x, 0) for x in m)


def norm(v: Sequence[int], kind: str = "l1") -> int:
    if kind == "l1":
        return sum(abs(x) for x in v)
    if kind == "linf":
        return max((abs(x) for x in v), default=0)
    raise ValueError(f"unknown norm {kind!r}")


def scalar_multiple(a: Sequence[int], b: Sequence[int]) -> Fraction | None:
    """``lam`` with ``a == lam * b`` if it exists (``b`` nonzero), else None."""
    lam = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return None
            continue
        q = Fraction(x, y)
        if lam is None:
            lam = q
        elif q != lam:
            return None
    return lam


def conformal(g: Sequence[int], z: Sequence[int]) -> bool:
    """``g ⊑ z``: same sign in every coordinate and ``|g_i| <= |z_i|``."""
    for gi, zi in zip(g, z):
        if gi == 0:
            continue
        if gi * zi <= 0 or abs(gi) > abs(zi):
            return False
    return True


def validate_move_set(moves: Iterable[Sequence[int]]) -> list[str]:
    """Every violation of the standing assumptions on a move set; empty means valid.

    Zero moves, duplicates, and pairs with ``m' = lam * m`` for an integer
    ``lam`` other than +1/-1 are reported.
    """
    moves = [tuple(m) for m in moves]
    problems = []
    dims = {len(m) for m in moves}
    if len(dims) > 1:
        problems.append(f"mixed dimensions {sorted(dims)}")
        return problems
    for i, m in enumerate(moves):
        if not any(m):
            problems.append(f"move {i} is zero")
    for i in range(len(moves)):
        for j in range(len(moves)):
            if i == j or not any(moves[j]):
                continue
            if moves[i] == moves[j]:
                if i < j:
                    problems.append(f"moves {i} and {j} are duplicates {moves[i]}")
                continue
            lam = scalar_multiple(moves[i], moves[j])
            if lam is not None and lam.denominator == 1 and abs(lam) != 1:
                problems.append(f"move {i} = {lam} * move {j}: {moves[i]} = {lam}*{moves[j]}")
    return problems


class MoveSet:
    """An ordered, validated list of nonzero integer moves."""

    def __init__(self, moves: Iterable[Sequence[int]], dim: int | None = None, check: bool = True):
        self.moves: tuple[Move, ...] = tuple(tuple(int(x) for x in m) for m in moves)
        if dim is None:
            if not self.moves:
                raise ValidationError("dimension is required for an empty move set")
            dim = len(self.moves[0])
        if any(len(m) != dim for m in self.moves):
            raise DimensionMismatch(f"all moves must have dimension {dim}")
        self.dim = dim
        if check:
            problems = validate_move_set(self.moves)
            if problems:
                raise ValidationError("; ".join(problems))

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __getitem__(self, i):
        return self.moves[i]

    def __eq__(self, other):
        if not isinstance(other, MoveSet):
            return NotImplemented
        return self.moves == other.moves

    def __hash__(self):
        return hash(self.moves)

    def __repr__(self):
        return f"MoveSet({list(self.moves)})"

    def symmetric(self) -> list[Move]:
        """``±M`` as a set, in first-seen order."""
        out, seen = [], set()
        for m in self.moves:
            for v in (m, tuple(-x for x in m)):
                if v not in seen:
                    seen.add(v)
                    out.append(v)
        return out

    def norm(self, kind: str = "l1") -> int:
        return max((norm(m, kind) for m in self.moves), default=0)

    def subset(self, indices: Iterable[int]) -> "MoveSet":
        return MoveSet([self.moves[i] for i in indices], dim=self.dim, check=False)

    def index(self, m: Sequence[int]) -> int:
        return self.moves.index(tuple(m))


def unit_vectors(d: int) -> MoveSet:
    return MoveSet([tuple(int(i == j) for j in range(d)) for i in range(d)])


def _to_fraction(w) -> Fraction:
    if isinstance(w, str):
        return Fraction(w.strip())
    if isinstance(w, float):
        return Fraction(str(w))
    return Fraction(w)


class MoveDistribution:
    """A mass function on a move set, held in exact rationals."""

    def __init__(self, moves: MoveSet, weights: Sequence):
        if len(weights) != len(moves):
            raise DimensionMismatch(f"{len(weights)} weights for {len(moves)} moves")
        w = tuple(_to_fraction(x) for x in weights)
        if any(x < 0 for x in w):
            raise ValidationError("move weights must be nonnegative")
        if sum(w) != 1:
            raise ValidationError(f"move weights sum to {sum(w)}, not 1")
        self.moves = moves
        self.weights = w

    @classmethod
    def uniform(cls, moves: MoveSet) -> "MoveDistribution":
        n = len(moves)
        return cls(moves, [Fraction(1, n)] * n)

    @property
    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w > 0]

    def min_weight(self) -> Fraction:
        return min(self.weights)

    def __iter__(self):
        return iter(zip(self.moves, self.weights))

    def __len__(self):
        return len(self.moves)

    def __repr__(self):
        return f"MoveDistribution({[str(w) for w in self.weights]})"


# --- integer kernel and Graver basis ----------------------------------------

def integer_kernel_basis(A: Sequence[Sequence[int]]) -> list[Move]:
    """A lattice basis of ``ker_Z(A)`` from unimodular column operations.

    Column-style Hermite reduction of ``A``; the transformation columns
    sitting over zero columns of ``A U`` span the integer kernel.
    """
    a = [list(map(int, r)) for r in A]
    if not a:
        raise ValidationError("matrix has no rows")
    m, d = len(a), len(a[0])
    u = [[int(i == j) for j in range(d)] for i in range(d)]  # columns of U = u[:, j]

    def col_op(dst, src, q):  # column dst -= q * column src
        for row in a:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    k = 0
    for r in range(m):
        if k == d:
            break
        while True:
            nz = [c for c in range(k, d) if a[r][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda c: abs(a[r][c]))
            if p != k:
                swap(p, k)
            done = True
            for c in range(k + 1, d):
                if a[r][c] != 0:
                    col_op(c, k, a[r][c] // a[r][k])
                    if a[r][c] != 0:
                        done = False
            if done:
                break
        if any(a[r][c] != 0 for c in range(k, d)):
            k += 1
    return [tuple(u[i][j] for i in range(d)) for j in range(k, d)]


def _normal_form(s: Move, G: list[Move]) -> Move:
    changed = True
    while changed and any(s):
        changed = False
        for g in G:
            if conformal(g, s):
                s = tuple(x - y for x, y in zip(s, g))
                changed = True
                if not any(s):
                    break
    return s


def _minimal_elements(vectors: Iterable[Move]) -> list[Move]:
    vs = sorted(set(vectors), key=lambda v: (norm(v), v))
    out: list[Move] = []
    for v in vs:
        if not any(conformal(w, v) for w in out):
            out.append(v)
    return out


def graver_basis(A: Sequence[Sequence[int]], cap: int = DEFAULT_GRAVER_CAP) -> MoveSet:
    """The Graver basis of ``A`` (closed under negation) by completion.

    Starts from a symmetric lattice basis of ``ker_Z(A)``, adds normal forms
    of pairwise sums under conformal reduction until nothing new appears, and
    keeps the conformally minimal elements.

    Raises
    ------
    ResourceLimit
        If the working set or the number of processed sums exceeds ``cap``.
    """
    A = [list(map(int, r)) for r in A]
    if not A or not any(any(r) for r in A):
        raise ValidationError("matrix must be nonzero")
    d = len(A[0])
    basis = integer_kernel_basis(A)
    if not basis:
        return MoveSet([], dim=d)
    G: list[Move] = []
    seen: set[Move] = set()
    for b in basis:
        for v in (b, tuple(-x for x in b)):
            if v not in seen:
                seen.add(v)
                G.append(v)
    pending = [tuple(x + y for x, y in zip(f, g)) for i, f in enumerate(G) for g in G[i + 1:]]
    processed = 0
    while pending:
        s = pending.pop()
        processed += 1
        if processed > cap:
            raise ResourceLimit(f"Graver completion exceeded {cap} reductions")
        r = _normal_form(s, G)
        if not any(r):
            continue
        for v in (r, tuple(-x for x in r)):
            if v in seen:
                continue
            pending.extend(tuple(x + y for x, y in zip(v, g)) for g in G)
            seen.add(v)
            G.append(v)
        if len(G) > cap:
            raise ResourceLimit(f"Graver completion exceeded {cap} vectors")
    minimal = _minimal_elements(G)
    minimal.sort(key=lambda v: (norm(v), tuple(-x for x in v)))
    return MoveSet(minimal, dim=d, check=False)


def conformal_decompose(z: Sequence[int], G: MoveSet | Sequence[Sequence[int]],
                        A: Sequence[Sequence[int]] | None = None) -> list[tuple[int, Move]]:
    """Write ``z = sum lam_i g_i`` with ``lam_i > 0`` and every ``g_i ⊑ z``.

    Greedy: take the conformal element of largest l1 norm and subtract the
    largest multiple that keeps the residual sign-compatible. The number of
    terms is not capped; repeated elements are merged and never produced.
    """
    z = tuple(int(x) for x in z)
    moves = list(G)
    if A is not None:
        for row in A:
            if sum(a * x for a, x in zip(row, z)) != 0:
                raise NotInKernel(f"{z} is not in the kernel")
    residual = z
    terms: dict[Move, int] = {}
    while any(residual):
        cands = [g for g in moves if any(g) and conformal(g, residual)]
        if not cands:
            raise DecompositionFailure(f"no conformal move for residual {residual}")
        g = max(cands, key=lambda v: (norm(v), tuple(-x for x in v)))
        lam = min(abs(r) // abs(x) for r, x in zip(residual, g) if x != 0)
        residual = tuple(r - lam * x for r, x in zip(residual, g))
        terms[g] = terms.get(g, 0) + lam
    return [(lam, g) for g, lam in terms.items()]


def is_markov_basis(F, M: MoveSet) -> bool:
    """True iff the fiber graph ``F(M)`` is connected."""
    from .graph import build_fiber_graph, is_connected

    if len(F) <= 1:
        return True
    return is_connected(build_fiber_graph(F, M))
