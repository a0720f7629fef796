"""Seeded heat-bath random walk and empirical convergence diagnostics.

Randomness comes from numpy's Philox counter-based generator. A chain seeded
with ``seed`` uses ``Generator(Philox(SeedSequence(seed)))``; chains started
together by :func:`run_chains` use the children of ``SeedSequence(seed)``.
Every random choice is an exact inverse-CDF draw: rational weights are
scaled to integers ``w_1..w_k`` with total ``T``, an integer ``r`` is drawn
uniformly from ``[0, T)``, and the first index whose cumulative weight
exceeds ``r`` is selected.
"""

from __future__ import annotations

import bisect
import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .basis import MoveDistribution
from .errors import EmptySample, PointNotInSet, ValidationError
from .lattice import LatticePointSet, PolytopeSpec
from .rays import ray_index
from .walk import TargetDistribution

Point = tuple[int, ...]
PRNG_NAME = "numpy.random.Philox"


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """The generator used for a single chain."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(_check_seed(seed))
    return np.random.Generator(np.random.Philox(ss))


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """``n`` independent streams derived from one root seed."""
    return [make_rng(child) for child in np.random.SeedSequence(_check_seed(seed)).spawn(n)]


def _check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValidationError("seed must fit in 64 unsigned bits")
    return seed


def _randbelow(rng: np.random.Generator, total: int) -> int:
    if total < 2**63:
        return int(rng.integers(0, total))
    nbits = total.bit_length()
    nbytes = (nbits + 7) // 8
    while True:
        r = int.from_bytes(rng.bytes(nbytes), "little") >> (8 * nbytes - nbits)
        if r < total:
            return r


def _integer_weights(ws: Sequence[Fraction]) -> list[int]:
    den = math.lcm(*(w.denominator for w in ws))
    ints = [int(w * den) for w in ws]
    g = math.gcd(*ints)
    return [x // g for x in ints]


class _Cdf:
    __slots__ = ("cum", "total")

    def __init__(self, weights: Sequence[Fraction]):
        acc, cum = 0, []
        for w in _integer_weights(weights):
            acc += w
            cum.append(acc)
        self.cum, self.total = cum, acc

    def draw(self, rng: np.random.Generator) -> int:
        return bisect.bisect_right(self.cum, _randbelow(rng, self.total))


class _Space:
    """Ray lookup and target weights for an explicit or implicit state space."""

    def __init__(self, F, moves: Sequence[Point], pi):
        self.moves = moves
        if isinstance(F, LatticePointSet):
            self.explicit = F
            self.spec = None
            if pi is None or isinstance(pi, TargetDistribution):
                target = pi if pi is not None else TargetDistribution.uniform(len(F))
                if len(target) != len(F):
                    raise ValidationError("target distribution does not match the point set")
                self.weight_of_index = target.weights
            elif callable(pi):
                self.weight_of_index = [Fraction(pi(p)) for p in F]
            else:
                self.weight_of_index = TargetDistribution(len(F), pi).weights
            self._rays: dict[int, tuple[list[list[int]], list[int]]] = {}
            self._cdfs: dict[tuple[int, int], _Cdf] = {}
        elif isinstance(F, PolytopeSpec):
            if pi is not None and not callable(pi):
                raise ValidationError("an implicit state space needs a uniform or callable target")
            self.explicit = None
            self.spec = F
            self.weight_fn: Callable | None = pi
        else:
            raise ValidationError("state space must be a LatticePointSet or a PolytopeSpec")
        self.uniform = pi is None or (isinstance(pi, TargetDistribution) and pi.is_uniform)

    def check(self, v) -> Point:
        v = tuple(int(x) for x in v)
        if self.explicit is not None:
            self.explicit.index(v)
        elif len(v) != self.spec.dim or not self.spec.contains(v):
            raise PointNotInSet(f"{v} is not in the state space")
        return v

    def step(self, v: Point, k: int, rng: np.random.Generator) -> Point:
        m = self.moves[k]
        if self.explicit is not None:
            F = self.explicit
            if k not in self._rays:
                self._rays[k] = ray_index(F, m)
            rays, where = self._rays[k]
            r = where[F.index(v)]
            members = rays[r]
            if self.uniform:
                return F[members[_randbelow(rng, len(members))]]
            cdf = self._cdfs.get((k, r))
            if cdf is None:
                cdf = self._cdfs[(k, r)] = _Cdf([self.weight_of_index[i] for i in members])
            return F[members[cdf.draw(rng)]]
        lo, hi = self.spec.ray_bounds(v, m)
        if self.weight_fn is None:
            t = lo + _randbelow(rng, hi - lo + 1)
        else:
            pts = [tuple(a + s * b for a, b in zip(v, m)) for s in range(lo, hi + 1)]
            t = lo + _Cdf([Fraction(self.weight_fn(p)) for p in pts]).draw(rng)
        return tuple(a + t * b for a, b in zip(v, m))


def _move_cdf(fM: MoveDistribution) -> tuple[list[Point], list[int], _Cdf]:
    support = [(k, w) for k, (_, w) in enumerate(fM) if w > 0]
    return list(fM.moves), [k for k, _ in support], _Cdf([w for _, w in support])


def heat_bath_step(v, F, fM: MoveDistribution, pi=None, rng: np.random.Generator | None = None,
                   *, return_move: bool = False):
    """One step of the heat-bath walk: draw ``m ~ f``, then a point of the ray of ``v`` along ``m`` by ``pi``.

    ``F`` is a :class:`LatticePointSet` or an implicit :class:`PolytopeSpec`.
    ``pi`` is None (uniform), a :class:`TargetDistribution`, raw weights
    indexed like ``F``, or a callable on points.
    """
    if rng is None:
        raise ValidationError("pass a generator from make_rng")
    moves, support, cdf = _move_cdf(fM)
    space = _Space(F, moves, pi)
    v = space.check(v)
    k = support[cdf.draw(rng)]
    nxt = space.step(v, k, rng)
    return (nxt, k) if return_move else nxt


@dataclass
class Trajectory:
    """Recorded states ``v_1, ..., v_r`` of one chain and the move drawn before each."""

    start: Point
    seed: int
    points: list[Point]
    moves: list[int]
    stream: int | None = None
    burn_in: int = 0
    thin: int = 1
    prng: str = PRNG_NAME
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        d = len(self.start)
        w.writerow(["step", "move"] + [f"x{i + 1}" for i in range(d)])
        for s, (p, k) in enumerate(zip(self.points, self.moves), start=1):
            w.writerow([s, k, *p])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "prng": self.prng,
            "seed": self.seed,
            "stream": self.stream,
            "start": list(self.start),
            "burn_in": self.burn_in,
            "thin": self.thin,
            "points": [list(p) for p in self.points],
            "moves": self.moves,
        }


def run_chain(F, fM: MoveDistribution, pi, v0, r: int, seed: int, *, burn_in: int = 0, thin: int = 1,
              rng: np.random.Generator | None = None, stream: int | None = None) -> Trajectory:
    """Run the heat-bath walk from ``v0``.

    ``burn_in`` steps are taken first and discarded, then ``r * thin`` steps of
    which every ``thin``-th is recorded, so the trajectory always has ``r``
    points. The defaults record every step.
    """
    if r < 1:
        raise ValidationError("number of steps must be at least 1")
    if burn_in < 0 or thin < 1:
        raise ValidationError("burn_in must be >= 0 and thin >= 1")
    seed = _check_seed(seed)
    if rng is None:
        rng = make_rng(seed)
    moves, support, cdf = _move_cdf(fM)
    space = _Space(F, moves, pi)
    v = start = space.check(v0)
    points: list[Point] = []
    chosen: list[int] = []
    for s in range(burn_in + r * thin):
        k = support[cdf.draw(rng)]
        v = space.step(v, k, rng)
        if s >= burn_in and (s - burn_in + 1) % thin == 0:
            points.append(v)
            chosen.append(k)
    return Trajectory(start, seed, points, chosen, stream, burn_in, thin)


def run_chains(F, fM: MoveDistribution, pi, starts: Sequence, r: int, seed: int, *,
               burn_in: int = 0, thin: int = 1, workers: int = 1) -> list[Trajectory]:
    """Independent chains, one per start point, each on its own spawned stream.

    Results do not depend on ``workers``; chain ``i`` always uses stream ``i``.
    """
    rngs = spawn_rngs(seed, len(starts))

    def one(i):
        return run_chain(F, fM, pi, starts[i], r, seed, burn_in=burn_in, thin=thin, rng=rngs[i], stream=i)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(len(starts))))
    return [one(i) for i in range(len(starts))]


def one_step_counts(v, F: LatticePointSet, fM: MoveDistribution, pi, n: int, rng: np.random.Generator) -> np.ndarray:
    """Counts of ``n`` independent one-step transitions from ``v``, indexed like ``F``.

    Each draw runs the same code as :func:`heat_bath_step`, with the ray
    tables built once.
    """
    moves, support, cdf = _move_cdf(fM)
    space = _Space(F, moves, pi)
    v = space.check(v)
    counts = np.zeros(len(F), dtype=np.int64)
    for _ in range(n):
        counts[F.index(space.step(v, support[cdf.draw(rng)], rng))] += 1
    return counts


def _histogram(samples, F: LatticePointSet) -> np.ndarray:
    pts = samples.points if isinstance(samples, Trajectory) else samples
    counts = np.zeros(len(F), dtype=np.int64)
    for p in pts:
        counts[F.index(tuple(p))] += 1
    return counts


def empirical_tv(samples, pi, F: LatticePointSet) -> float:
    """``(1/2) sum_x |empirical(x) - pi(x)|`` over ``F``.

    ``samples`` is a trajectory, an iterable of points, or a count vector
    (numpy array) indexed like ``F``. ``pi`` is None for uniform.
    """
    target = pi if isinstance(pi, TargetDistribution) else TargetDistribution(len(F), pi)
    counts = samples if isinstance(samples, np.ndarray) else _histogram(samples, F)
    total = int(counts.sum())
    if total == 0:
        raise EmptySample("no samples")
    emp = counts / total
    return float(0.5 * np.abs(emp - target.as_array()).sum())


def tv_curve(traj: Trajectory, pi, F: LatticePointSet, checkpoints: Iterable[int] | None = None) -> list[tuple[int, float]]:
    """TV distance of the running histogram after each checkpoint (number of recorded states)."""
    n = len(traj)
    if n == 0:
        raise EmptySample("empty trajectory")
    if checkpoints is None:
        checkpoints = sorted({min(n, 10**k) for k in range(1, int(math.log10(n)) + 2)} | {n})
    target = pi if isinstance(pi, TargetDistribution) else TargetDistribution(len(F), pi)
    idx = np.array([F.index(p) for p in traj.points])
    out = []
    for c in checkpoints:
        if not 1 <= c <= n:
            raise ValidationError(f"checkpoint {c} outside 1..{n}")
        counts = np.bincount(idx[:c], minlength=len(F))
        out.append((int(c), empirical_tv(counts, target, F)))
    return out
