"""Spectra of reversible transition matrices and bounds on their SLEM.

Eigenvalues come from a cyclic Jacobi eigensolver applied to the
symmetrization ``D^{1/2} P D^{-1/2}`` with ``D = diag(pi)``. Rotations are
applied in round-robin order so every sweep updates ``n/2`` disjoint pairs
at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .basis import MoveDistribution, MoveSet
from .errors import NotAugmenting, NotReversible, SetMismatch, ValidationError
from .lattice import LatticePointSet, halfspace_set
from .rays import has_intersecting_ray_property, ray_matrix, ray_matrix_kernel
from .walk import TransitionMatrix, check_reversibility, heat_bath_matrix

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """``n - 1`` rounds (``n`` even) of disjoint pairs covering every ``(p, q)`` once."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        ps, qs = [], []
        for i in range(n // 2):
            a, b = players[i], players[n - 1 - i]
            ps.append(min(a, b))
            qs.append(max(a, b))
        rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(S: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigenvalues (descending) and orthonormal eigenvectors of a symmetric matrix.

    Parallel cyclic Jacobi: every round of the round-robin schedule applies
    ``n/2`` disjoint rotations at once. Stops when the off-diagonal Frobenius
    norm drops below ``tol`` times the Frobenius norm of the input.
    Returns ``(values, vectors, sweeps)``.
    """
    A = np.array(S, dtype=float, copy=True)
    n = A.shape[0]
    if A.ndim != 2 or A.shape != (n, n):
        raise ValidationError("matrix must be square")
    if not np.allclose(A, A.T, atol=1e-12):
        raise ValidationError("matrix must be symmetric")
    A = (A + A.T) / 2
    if n == 0:
        return np.zeros(0), np.zeros((0, 0)), 0
    if n == 1:
        return A[0].copy(), np.ones((1, 1)), 0
    size = n + (n % 2)
    if size != n:
        A = np.pad(A, ((0, 1), (0, 1)))
    V = np.eye(size)
    rounds = _round_robin(size)
    sweeps = 0

    def off(A):
        # summed directly: ||A||^2 - ||diag A||^2 cancels catastrophically
        B = A.copy()
        np.fill_diagonal(B, 0.0)
        return float(np.linalg.norm(B))

    threshold = tol * max(float(np.linalg.norm(A)), 1.0)
    while off(A) > threshold and sweeps < max_sweeps:
        sweeps += 1
        for p, q in rounds:
            apq = A[p, q]
            app, aqq = A[p, p], A[q, q]
            nz = np.abs(apq) > 1e-300
            theta = np.where(nz, (aqq - app) / (2 * np.where(nz, apq, 1.0)), 0.0)
            t = np.where(nz, np.sign(theta) / (np.abs(theta) + np.hypot(1.0, theta)), 0.0)
            t = np.where(nz & (theta == 0), 1.0, t)
            c = 1 / np.sqrt(1 + t * t)
            s = t * c
            # A <- J^T A J, J has J_pp = J_qq = c, J_pq = s, J_qp = -s;
            # fancy indexing already returns copies
            rp, rq = A[p, :], A[q, :]
            A[p, :] = c[:, None] * rp - s[:, None] * rq
            A[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = A[:, p], A[:, q]
            A[:, p] = cp * c - cq * s
            A[:, q] = cp * s + cq * c
            vp, vq = V[:, p], V[:, q]
            V[:, p] = vp * c - vq * s
            V[:, q] = vp * s + vq * c
    # the zero padding row never mixes (its rotations are identities)
    vals = np.diag(A)[:n]
    V = V[:n, :n]
    order = np.argsort(-vals, kind="stable")
    return vals[order], V[:, order], sweeps


@dataclass
class SpectralReport:
    eigenvalues: np.ndarray
    slem: float
    gap: float
    method: str
    residual: float
    sweeps: int = 0
    bounds: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "slem": float(self.slem),
            "gap": float(self.gap),
            "method": self.method,
            "residual": float(self.residual),
            "bounds": self.bounds,
        }


def slem_of(eigenvalues: Sequence[float]) -> float:
    ev = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
    if ev.size <= 1:
        return 0.0
    return float(max(ev[1], -ev[-1]))


def symmetrize(P: TransitionMatrix) -> np.ndarray:
    """``D^{1/2} P D^{-1/2}`` in floating point."""
    pi = P.target.as_array()
    r = np.sqrt(pi)
    return r[:, None] * P.to_numpy() / r[None, :]


def spectrum(P: TransitionMatrix, method: str = "jacobi") -> SpectralReport:
    """Eigenvalues, SLEM and gap of a reversible transition matrix.

    ``method`` is ``"jacobi"`` (default) or ``"lapack"`` (``numpy.linalg.eigh``).

    Raises
    ------
    NotReversible
        If detailed balance against ``P.target`` fails in exact arithmetic.
    """
    if not check_reversibility(P):
        raise NotReversible("matrix is not reversible with respect to its target")
    S = symmetrize(P)
    S = (S + S.T) / 2
    sweeps = 0
    if method == "jacobi":
        vals, vecs, sweeps = jacobi_eigh(S)
    elif method == "lapack":
        vals, vecs = np.linalg.eigh(S)
        order = np.argsort(-vals, kind="stable")
        vals, vecs = vals[order], vecs[:, order]
    else:
        raise ValidationError(f"unknown eigensolver {method!r}")
    residual = 0.0
    if vals.size:
        # right eigenvectors of P are D^{-1/2} w
        Pm = P.to_numpy()
        W = vecs / np.sqrt(P.target.as_array())[:, None]
        W = W / np.linalg.norm(W, axis=0)
        residual = float(np.max(np.abs(Pm @ W - W * vals[None, :])))
    slem = slem_of(vals)
    return SpectralReport(vals, slem, 1.0 - slem, f"symmetrized/{method}", residual, sweeps)


def slem_curve(F: LatticePointSet, M: MoveSet, weight_grid: Iterable[Sequence], pi=None,
               method: str = "jacobi") -> tuple[list[tuple[tuple[Fraction, ...], float]], tuple]:
    """SLEM of the heat-bath walk for every mass function on a grid.

    Returns ``(curve, argmin)`` where ``curve`` is a list of
    ``(weights, slem)`` and ``argmin`` the first grid point of least SLEM.
    """
    curve = []
    for w in weight_grid:
        fM = MoveDistribution(M, list(w))
        rep = spectrum(heat_bath_matrix(F, fM, pi), method)
        curve.append((fM.weights, rep.slem))
    if not curve:
        raise ValidationError("empty weight grid")
    best = min(curve, key=lambda c: c[1])
    return curve, best


def mu_grid(values: Iterable) -> list[tuple[Fraction, Fraction]]:
    """Two-move grid ``(mu, 1 - mu)``."""
    out = []
    for mu in values:
        mu = Fraction(str(mu)) if isinstance(mu, float) else Fraction(mu)
        out.append((mu, 1 - mu))
    return out


# --- bounds -------------------------------------------------------------------

def kernel_lower_bound(F: LatticePointSet, M: MoveSet, Mprime, f: MoveDistribution) -> float | None:
    """``1 - sum_{m in M'} f(m)`` when the ray matrix along ``M'`` has a nontrivial kernel.

    A lower bound on the SLEM of the uniform-target heat-bath walk.
    """
    R = ray_matrix(F, M, Mprime)
    _, kdim, _ = ray_matrix_kernel(R)
    if kdim == 0:
        return None
    idx = [k for k, _ in R.row_labels]
    chosen = sorted(set(idx))
    return float(1 - sum((f.weights[k] for k in chosen), Fraction(0)))


def irp_upper_bound(F: LatticePointSet, M: MoveSet, f: MoveDistribution) -> float | None:
    """``1 - min(f)`` when every pair of moves has the intersecting ray property."""
    if not has_intersecting_ray_property(F, M):
        return None
    return float(1 - f.min_weight())


@dataclass
class BoundCheck:
    """A bound's value, the SLEM it was checked against, and whether it holds."""

    name: str
    value: float
    slem: float | None = None
    holds: bool | None = None
    kind: str = "upper"

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value, "kind": self.kind,
                "slem": self.slem, "holds": self.holds}


def canonical_path_value(size: int, min_f: Fraction, auglen: int, n_moves: int,
                         ray_maxima: Sequence[int]) -> Fraction:
    """``1 - |F| min(f) / (l * l! * 3^(l-1) * 2^|M| * r_1 ... r_l)`` exactly."""
    if auglen < 1:
        raise ValidationError("augmentation length must be at least 1")
    r = sorted(ray_maxima, reverse=True)
    if len(r) < auglen:
        raise ValidationError("need at least auglen ray maxima")
    denom = auglen * math.factorial(auglen) * 3 ** (auglen - 1) * 2 ** n_moves * math.prod(r[:auglen])
    return 1 - Fraction(size) * Fraction(min_f) / denom


def canonical_path_bound(F: LatticePointSet, M: MoveSet, f: MoveDistribution,
                         auglen: int | None = None, ray_maxima: Sequence[int] | None = None,
                         check: bool = True, method: str = "jacobi") -> BoundCheck:
    """Canonical-path upper bound for an augmenting move set with uniform target.

    ``auglen`` and ``ray_maxima`` are computed when omitted. With ``check`` the
    SLEM of the uniform heat-bath walk is computed and compared.

    Raises
    ------
    NotAugmenting
        If ``M`` is not augmenting for ``F`` (only checked when ``auglen`` is omitted).
    """
    from .augment import augmentation_length, longest_ray

    if auglen is None:
        rep = augmentation_length(F, M)
        if not rep.augmenting:
            raise NotAugmenting(f"no augmenting path between {rep.witness_pair}")
        auglen = rep.auglen
    if ray_maxima is None:
        ray_maxima = longest_ray(F, M)[1]
    if any(w <= 0 for w in f.weights):
        raise ValidationError("the move distribution must be positive")
    value = float(canonical_path_value(len(F), f.min_weight(), auglen, len(M), ray_maxima))
    out = BoundCheck("canonical_paths", value)
    if check:
        slem = spectrum(heat_bath_matrix(F, f), method).slem
        out.slem, out.holds = slem, slem <= value + 1e-9
    return out


def halfspace_box_value(a: Sequence[int], b: int, size: int) -> Fraction:
    """``1 - (|F| / d^2) * prod(a_i / b)`` exactly."""
    d = len(a)
    return 1 - Fraction(size, d * d) * math.prod(Fraction(ai, b) for ai in a)


def halfspace_box_bound(a: Sequence[int], b: int, F: LatticePointSet | None = None,
                        check: bool = True, method: str = "jacobi") -> BoundCheck:
    """Bound for ``F = {u in N^d : a.u <= b}`` with unit moves, uniform ``f`` and ``pi``.

    ``F`` is re-derived from ``(a, b)``; a supplied ``F`` must match it.

    Raises
    ------
    SetMismatch
        If the supplied ``F`` differs from the re-derived set.
    """
    a = [int(x) for x in a]
    if not a or any(x <= 0 for x in a) or b <= 0:
        raise ValidationError("a must be a positive vector and b a positive integer")
    derived = halfspace_set(a, b)
    if F is not None and F != derived:
        raise SetMismatch("point set is not {u in N^d : a.u <= b}")
    value = float(halfspace_box_value(a, b, len(derived)))
    out = BoundCheck("halfspace_box", value)
    if check:
        from .basis import unit_vectors

        M = unit_vectors(len(a))
        slem = spectrum(heat_bath_matrix(derived, MoveDistribution.uniform(M)), method).slem
        out.slem, out.holds = slem, slem <= value + 1e-9
    return out
