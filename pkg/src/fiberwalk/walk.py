"""Simple-walk and heat-bath transition matrices in exact rational arithmetic."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .basis import MoveDistribution, MoveSet
from .errors import DimensionMismatch, EmptyMoveSet, ValidationError
from .lattice import LatticePointSet
from .linalg import Matrix, matmul, rank
from .rays import ray, ray_decomposition

__all__ = [
    "TargetDistribution",
    "TransitionMatrix",
    "simple_walk_matrix",
    "heat_bath_move_matrix",
    "heat_bath_matrix",
    "check_reversibility",
    "ray",
]


class TargetDistribution:
    """Uniform or explicit positive weights on the points of ``F``.

    Explicit weights may be unnormalized; ``probabilities`` always sums to 1.
    """

    def __init__(self, n: int, weights: Sequence | None = None):
        if weights is None:
            self.kind = "uniform"
            self.weights = (Fraction(1),) * n
        else:
            if len(weights) != n:
                raise DimensionMismatch(f"{len(weights)} target weights for {n} points")
            self.kind = "explicit"
            self.weights = tuple(Fraction(w) if not isinstance(w, float) else Fraction(str(w))
                                 for w in weights)
            if any(w <= 0 for w in self.weights):
                raise ValidationError("target weights must be strictly positive")
        self.normalization = sum(self.weights, Fraction(0))
        self.probabilities = tuple(w / self.normalization for w in self.weights) if n else ()

    @classmethod
    def uniform(cls, n: int) -> "TargetDistribution":
        return cls(n)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) <= 1

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i) -> Fraction:
        return self.probabilities[i]

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.probabilities])


@dataclass
class TransitionMatrix:
    """Row-stochastic rational matrix indexed like ``points``."""

    entries: Matrix
    points: LatticePointSet
    target: TargetDistribution
    kind: str

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.entries == other.entries

    def entry(self, u, v) -> Fraction:
        return self.entries[self.points.index(u)][self.points.index(v)]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float).reshape(self.n, self.n)

    def is_stochastic(self) -> bool:
        return all(all(x >= 0 for x in row) and sum(row) == 1 for row in self.entries)

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i))

    def is_stationary(self) -> bool:
        """Exact ``pi^T P == pi^T``."""
        pi = self.target.probabilities
        for j in range(self.n):
            if sum((pi[i] * self.entries[i][j] for i in range(self.n)), Fraction(0)) != pi[j]:
                return False
        return True

    def is_idempotent(self) -> bool:
        return matmul(self.entries, self.entries) == self.entries

    def commutes_with(self, other: "TransitionMatrix") -> bool:
        return matmul(self.entries, other.entries) == matmul(other.entries, self.entries)

    def rank(self) -> int:
        return rank(self.entries)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "points": [list(p) for p in self.points],
            "target": [str(p) for p in self.target.probabilities],
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    def to_csv(self, digits: int = 12) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [",".join(map(str, p)) for p in self.points])
        for p, row in zip(self.points, self.entries):
            w.writerow([",".join(map(str, p))] + [f"{float(x):.{digits}f}" for x in row])
        return buf.getvalue()


def _target(F: LatticePointSet, pi) -> TargetDistribution:
    if pi is None:
        return TargetDistribution.uniform(len(F))
    if isinstance(pi, TargetDistribution):
        if len(pi) != len(F):
            raise DimensionMismatch("target distribution does not match the point set")
        return pi
    return TargetDistribution(len(F), pi)


def simple_walk_matrix(F: LatticePointSet, M: MoveSet) -> TransitionMatrix:
    """Propose a uniform element of ``±M``; move if the target stays in ``F``, else hold.

    Moves inducing the same edge each contribute ``1/|±M|``.
    """
    if len(M) == 0:
        raise EmptyMoveSet("the simple walk needs at least one move")
    if M.dim != F.dim:
        raise DimensionMismatch("moves and points have different dimensions")
    sym = M.symmetric()
    p = Fraction(1, len(sym))
    n = len(F)
    P = [[Fraction(0)] * n for _ in range(n)]
    for i, u in enumerate(F):
        for m in sym:
            j = F.get_index(tuple(a + b for a, b in zip(u, m)))
            P[i][i if j is None else j] += p
    return TransitionMatrix(P, F, TargetDistribution.uniform(n), "simple")


def heat_bath_move_matrix(F: LatticePointSet, m: Sequence[int], pi=None) -> TransitionMatrix:
    """``H_m(x, y) = pi(y) / pi(R_m(x))`` for ``y`` on the ray of ``x`` along ``m``."""
    target = _target(F, pi)
    n = len(F)
    H = [[Fraction(0)] * n for _ in range(n)]
    w = target.probabilities
    for members in ray_decomposition(F, m):
        mass = sum((w[i] for i in members), Fraction(0))
        row = {j: w[j] / mass for j in members}
        for i in members:
            for j, x in row.items():
                H[i][j] = x
    return TransitionMatrix(H, F, target, "heat-bath-move")


def heat_bath_matrix(F: LatticePointSet, fM: MoveDistribution, pi=None) -> TransitionMatrix:
    """``sum_m f(m) H_m`` over the support of the move distribution."""
    target = _target(F, pi)
    n = len(F)
    H = [[Fraction(0)] * n for _ in range(n)]
    for m, f in fM:
        if f == 0:
            continue
        Hm = heat_bath_move_matrix(F, m, target).entries
        for i in range(n):
            row, src = H[i], Hm[i]
            for j in range(n):
                if src[j]:
                    row[j] += f * src[j]
    return TransitionMatrix(H, F, target, "heat-bath")


def check_reversibility(P: TransitionMatrix) -> bool:
    """Exact detailed balance ``pi(u) P(u,v) == pi(v) P(v,u)`` against ``P.target``."""
    pi = P.target.probabilities
    e = P.entries
    for i in range(P.n):
        for j in range(i + 1, P.n):
            if pi[i] * e[i][j] != pi[j] * e[j][i]:
                return False
    return True
