from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import chisquare

from fiberwalk import (LatticePointSet, MoveDistribution, MoveSet, PolytopeSpec, TargetDistribution, box,
                       cross_polytope, empirical_tv, enumerate_fiber, heat_bath_step, make_rng,
                       one_step_counts, ray, run_chain, run_chains, spawn_rngs, tv_curve, unit_vectors)
from fiberwalk.errors import EmptySample, PointNotInSet, ValidationError
from fiberwalk.sampler import PRNG_NAME, Trajectory, _randbelow
from oracles import basic_moves, heat_bath_dense, independence_model

GRID = box((1, 1), (2, 5))
E = unit_vectors(2)


def uniform(M):
    return MoveDistribution.uniform(MoveSet(M))


def independence_fiber(n=4):
    F = enumerate_fiber(*independence_model(n))
    return F, MoveSet(basic_moves(n))


def exact_row(F, M, f, v, pi=None):
    H = heat_bath_dense(list(F), list(M), list(f.weights), pi)
    return np.array([float(x) for x in H[sorted(F).index(tuple(v))]])


def chi_square_instances():
    F47, M47 = independence_fiber()
    GRID53 = box((1, 1), (5, 3))
    three = MoveSet([(1, 0), (0, 1), (2, 1)])
    pi = [Fraction(1 + (a + 2 * b) % 4) for a, b in GRID]
    return [
        (box((1, 1), (1, 3)), MoveDistribution(MoveSet([(1, 0), (0, 1)]), [0, 1]), None, (1, 2)),
        (GRID, uniform(E), None, (1, 1)),
        (GRID, MoveDistribution(E, [Fraction(1, 3), Fraction(2, 3)]), pi, (2, 3)),
        (GRID53, MoveDistribution(three, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]), None, (3, 2)),
        (cross_polytope(2, 2), uniform([(1, 0), (0, 1), (1, 1)]), None, (0, 0)),
        (F47, MoveDistribution.uniform(M47), None, F47[0]),
    ]


@pytest.mark.parametrize("case", range(6))
def test_one_step_frequencies_pass_chi_square(case):
    F, f, pi, v = chi_square_instances()[case]
    n = 100_000
    counts = one_step_counts(v, F, f, pi, n, make_rng(1000 + case))
    row = exact_row(F, f.moves, f, v, pi)
    assert np.all(counts[row == 0] == 0)
    support = row > 0
    if support.sum() == 1:
        assert counts[support][0] == n
        return
    _, p = chisquare(counts[support], row[support] * n)
    assert p > 0.001


def test_column_with_forced_move_is_uniform():
    F = box((1, 1), (1, 3))
    f = MoveDistribution(MoveSet([(1, 0), (0, 1)]), [0, 1])
    counts = one_step_counts((1, 1), F, f, None, 100_000, make_rng(5))
    _, p = chisquare(counts)
    assert p > 0.001


def test_one_step_frequencies_within_half_percent():
    f = uniform(E)
    counts = one_step_counts((1, 1), GRID, f, None, 1_000_000, make_rng(11))
    row = exact_row(GRID, E, f, (1, 1))
    assert np.max(np.abs(counts / counts.sum() - row)) <= 0.005


def test_heat_bath_step_contract():
    single = LatticePointSet([(4, 4)])
    assert heat_bath_step((4, 4), single, uniform(E), rng=make_rng(0)) == (4, 4)
    rng = make_rng(3)
    for _ in range(50):
        nxt, k = heat_bath_step((1, 2), GRID, uniform(E), rng=rng, return_move=True)
        assert nxt in ray((1, 2), E[k], GRID)
    with pytest.raises(PointNotInSet):
        heat_bath_step((9, 9), GRID, uniform(E), rng=make_rng(0))
    with pytest.raises(ValidationError):
        heat_bath_step((1, 1), GRID, uniform(E))


def test_run_chain_determinism_and_validity():
    f = uniform([(1, 0), (0, 1), (2, 1)])
    F = box((1, 1), (5, 3))
    a = run_chain(F, f, None, (1, 1), 2000, seed=42)
    b = run_chain(F, f, None, (1, 1), 2000, seed=42)
    c = run_chain(F, f, None, (1, 1), 2000, seed=43)
    assert a.points == b.points and a.moves == b.moves
    assert a.points != c.points
    assert len(a) == 2000 and a.prng == PRNG_NAME == "numpy.random.Philox"
    prev = a.start
    for p, k in zip(a.points, a.moves):
        assert p in F and p in ray(prev, f.moves[k], F)
        prev = p


def test_run_chain_single_step_equals_heat_bath_step():
    f = uniform(E)
    t = run_chain(GRID, f, None, (1, 1), 1, seed=9)
    assert t.points == [heat_bath_step((1, 1), GRID, f, rng=make_rng(9))]


def test_seeded_trajectory_is_pinned():
    # regression pin: the PRNG and the draw procedure are part of the output contract
    t = run_chain(GRID, uniform(E), None, (1, 1), 8, seed=2024)
    assert t.points == [(1, 2), (2, 2), (2, 1), (2, 4), (2, 4), (1, 4), (2, 4), (2, 4)]
    assert t.moves == [1, 0, 1, 1, 0, 0, 0, 1]


@pytest.mark.parametrize("F,M,start", [
    (GRID, E, (1, 1)),
    (*independence_fiber(), None),
])
def test_long_chain_tv_small(F, M, start):
    start = start or F[0]
    t = run_chain(F, MoveDistribution.uniform(MoveSet(M)), None, start, 100_000, seed=7)
    assert empirical_tv(t, None, F) < 0.02


def test_empirical_tv_trivial_cases():
    F = GRID
    assert empirical_tv(list(F) * 3, None, F) == pytest.approx(0)
    assert empirical_tv([F[0]] * 10, None, F) == pytest.approx(1 - 1 / len(F))
    pi = TargetDistribution(len(F), list(range(1, 11)))
    counts = np.array(range(1, 11)) * 6
    assert empirical_tv(counts, pi, F) == pytest.approx(0)
    with pytest.raises(EmptySample):
        empirical_tv([], None, F)
    with pytest.raises(EmptySample):
        empirical_tv(np.zeros(len(F), dtype=int), None, F)


def test_tv_curve():
    t = run_chain(GRID, uniform(E), None, (1, 1), 5000, seed=1)
    curve = tv_curve(t, None, GRID)
    assert [c for c, _ in curve] == [10, 100, 1000, 5000]
    assert curve[-1][1] == pytest.approx(empirical_tv(t, None, GRID))
    assert tv_curve(t, None, GRID, [1])[0][1] == pytest.approx(1 - 1 / 10)
    with pytest.raises(ValidationError):
        tv_curve(t, None, GRID, [6000])
    with pytest.raises(EmptySample):
        tv_curve(Trajectory((1, 1), 0, [], []), None, GRID)


def test_implicit_polytope_state_space():
    spec = PolytopeSpec(ineq_matrix=[[1, 1]], ineq_rhs=[3], lower=(0, 0))
    f = uniform(E)
    t = run_chain(spec, f, None, (0, 0), 50_000, seed=5)
    F = LatticePointSet([(a, b) for a in range(4) for b in range(4) if a + b <= 3])
    assert all(p in F for p in t.points)
    assert empirical_tv(t, None, F) < 0.03
    weight = lambda p: 1 + p[0]  # noqa: E731
    counts = np.zeros(len(F), dtype=int)
    rng = make_rng(8)
    for _ in range(20_000):
        counts[F.index(heat_bath_step((1, 1), spec, f, weight, rng))] += 1
    row = exact_row(F, E, f, (1, 1), [1 + a for a, _ in F])
    support = row > 0
    _, p = chisquare(counts[support], row[support] * counts.sum())
    assert p > 0.001
    with pytest.raises(PointNotInSet):
        run_chain(spec, f, None, (3, 3), 5, seed=0)
    with pytest.raises(ValidationError):
        run_chain(spec, f, [1] * 10, (0, 0), 5, seed=0)


def test_run_chains_independent_of_workers():
    f = uniform(E)
    starts = [(1, 1), (2, 5), (1, 3)]
    a = run_chains(GRID, f, None, starts, 500, seed=3, workers=1)
    b = run_chains(GRID, f, None, starts, 500, seed=3, workers=3)
    assert [t.points for t in a] == [t.points for t in b]
    assert [t.stream for t in a] == [0, 1, 2]
    assert a[0].points != a[1].points
    s1, s2 = spawn_rngs(3, 2)
    assert s1.integers(0, 2**62) != s2.integers(0, 2**62)


def test_burn_in_and_thinning():
    f = uniform(E)
    full = run_chain(GRID, f, None, (1, 1), 40, seed=4)
    thinned = run_chain(GRID, f, None, (1, 1), 10, seed=4, burn_in=8, thin=3)
    assert len(thinned) == 10
    assert thinned.points == full.points[8 + 2::3][:10]
    with pytest.raises(ValidationError):
        run_chain(GRID, f, None, (1, 1), 0, seed=4)
    with pytest.raises(ValidationError):
        run_chain(GRID, f, None, (1, 1), 5, seed=4, thin=0)
    with pytest.raises(ValidationError):
        run_chain(GRID, f, None, (1, 1), 5, seed=-1)


def test_trajectory_exports():
    t = run_chain(GRID, uniform(E), None, (1, 1), 5, seed=4)
    lines = t.to_csv().splitlines()
    assert lines[0] == "step,move,x1,x2" and len(lines) == 6
    js = t.to_json()
    assert js["prng"] == PRNG_NAME and js["seed"] == 4 and len(js["points"]) == 5


def test_randbelow_large_totals_are_uniform_and_in_range():
    rng = make_rng(12)
    big = 3 * 2**70
    draws = [_randbelow(rng, big) for _ in range(3000)]
    assert all(0 <= x < big for x in draws)
    _, p = chisquare(np.bincount([x * 3 // big for x in draws], minlength=3))
    assert p > 0.001
