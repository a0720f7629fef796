import itertools

import numpy as np
import pytest

from fiberwalk import (LatticePointSet, MoveSet, apply_path, augmentation_length, box,
                       build_compressed_graph, cross_polytope, diameter, enumerate_fiber, graver_basis,
                       longest_ray, minimal_augmenting_path, staircase, unit_vectors)
from fiberwalk.errors import PointNotInSet, ResourceLimit, ValidationError
from oracles import augmentation_brute

E2 = unit_vectors(2)
C21 = cross_polytope(2, 1)


def one_sided(G):
    return MoveSet([g for g in G if next(x for x in g if x) > 0])


def test_path_in_simplex_fiber():
    F = enumerate_fiber([[1, 1, 1]], [1])
    M = MoveSet([(1, -1, 0), (1, 0, -1)])
    path = minimal_augmenting_path(F, M, (0, 1, 0), (0, 0, 1))
    assert apply_path((0, 1, 0), M, path) == [(0, 1, 0), (1, 0, 0), (0, 0, 1)]
    assert sorted(k for k, _ in path) == [0, 1]


def test_compressed_edge_is_length_one():
    path = minimal_augmenting_path(C21, E2, (1, 0), (-1, 0))
    assert path == [(0, -2)]
    assert minimal_augmenting_path(C21, E2, (0, 1), (0, 0)) == [(1, -1)]


def test_minimal_path_errors_and_absence():
    with pytest.raises(PointNotInSet):
        minimal_augmenting_path(C21, E2, (5, 5), (0, 0))
    with pytest.raises(ValidationError):
        minimal_augmenting_path(C21, E2, (0, 0), (0, 0))
    assert minimal_augmenting_path(staircase(2), E2, (0, 0), (2, 2)) is None


def test_augmentation_examples():
    for n in (2, 3, 5):
        rep = augmentation_length(staircase(n), E2)
        assert not rep.augmenting and rep.auglen is None and rep.witness_pair is not None
        u, v = rep.witness_pair
        assert minimal_augmenting_path(staircase(n), E2, u, v) is None
    rep = augmentation_length(C21, E2)
    assert rep.augmenting and rep.auglen == 2
    u, v = rep.witness_pair
    assert apply_path(u, E2, rep.witness_path)[-1] == v and len(rep.witness_path) == 2
    pair = LatticePointSet([(0, 0), (2, 3)])
    assert augmentation_length(pair, MoveSet([(2, 3)])).auglen == 1
    assert augmentation_length(LatticePointSet([(4, 4)]), E2).auglen == 0


def test_longest_ray_examples():
    assert longest_ray(box((1, 1), (2, 5)), E2) == ([2, 5], [5, 2], 5)
    assert longest_ray(C21, E2) == ([3, 3], [3, 3], 3)
    assert longest_ray(C21, MoveSet([(5, 7)]))[2] == 1
    with pytest.raises(ValidationError):
        longest_ray(C21, MoveSet([]))


def test_report_json():
    js = augmentation_length(box((1, 1), (2, 5)), E2).to_json()
    assert js["augmenting"] and js["auglen"] == 2 and js["longest_rays"] == [2, 5]
    assert all(set(s) == {"move", "lambda"} for s in js["witness_path"])


def test_resource_limit():
    with pytest.raises(ResourceLimit):
        augmentation_length(box((0, 0), (9, 9)), E2, cap=399)
    assert augmentation_length(box((0, 0), (9, 9)), E2, cap=400).auglen == 2


CASES = [
    (C21, E2), (cross_polytope(2, 2), E2), (staircase(3), E2), (box((1, 1), (3, 2)), E2),
    (box((0, 0), (2, 2)), MoveSet([(1, 0), (0, 1), (1, 1)])),
    (cross_polytope(2, 2), MoveSet([(1, 1), (1, -1)])),
    (cross_polytope(2, 2), MoveSet([(1, 1), (1, -1), (1, 0)])),
    (enumerate_fiber([[1, 1, 1]], [2]), MoveSet([(1, -1, 0), (1, 0, -1)])),
    (enumerate_fiber([[1, 2, 3]], [6]), one_sided(graver_basis([[1, 2, 3]]))),
    (LatticePointSet([(0, 0), (2, 0), (0, 1), (2, 1), (1, 3)]), MoveSet([(1, 0), (0, 1), (1, 2)])),
    (cross_polytope(3, 1), unit_vectors(3)),
]


@pytest.mark.parametrize("F,M", CASES)
def test_auglen_matches_brute_force_and_bounds(F, M):
    rep = augmentation_length(F, M)
    assert rep.auglen == augmentation_brute(list(F), list(M))
    if rep.augmenting:
        assert rep.auglen <= len(M)
        assert diameter(build_compressed_graph(F, M)) <= rep.auglen


def test_witness_paths_use_distinct_moves():
    for F, M in CASES:
        rep = augmentation_length(F, M)
        if rep.augmenting and rep.witness_path:
            ks = [k for k, _ in rep.witness_path]
            assert len(ks) == len(set(ks)) and all(lam for _, lam in rep.witness_path)
            pts = apply_path(rep.witness_pair[0], M, rep.witness_path)
            assert pts[-1] == rep.witness_pair[1] and all(p in F for p in pts)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_simplex_fibers_have_auglen_at_most_d_minus_one(d):
    M = MoveSet([tuple(int(j == 0) - int(j == i) for j in range(d)) for i in range(1, d)])
    for b in range(1, 7 if d <= 4 else 5):
        rep = augmentation_length(enumerate_fiber([[1] * d], [b]), M)
        assert rep.augmenting and rep.auglen <= d - 1


@pytest.mark.parametrize("d,r", [(d, r) for d in (1, 2, 3, 4) for r in (1, 2, 3, 4) if d < 4 or r <= 3])
def test_cross_polytopes_have_auglen_at_most_d(d, r):
    rep = augmentation_length(cross_polytope(d, r), unit_vectors(d))
    assert rep.augmenting and rep.auglen <= d


TU = [
    [[1, 1, 0], [0, 1, 1]],
    [[1, 1, 1, 0], [0, 1, 1, 1]],
    [[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]],
    [[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0]],
]


def is_totally_unimodular(A):
    A = np.array(A)
    m, n = A.shape
    for k in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                if round(np.linalg.det(A[np.ix_(rows, cols)])) not in (-1, 0, 1):
                    return False
    return True


@pytest.mark.parametrize("A", TU)
def test_totally_unimodular_graver_augmentation(A):
    assert is_totally_unimodular(A)
    d = len(A[0])
    rank = np.linalg.matrix_rank(np.array(A))
    M = one_sided(graver_basis(A))
    for u in itertools.product(range(3), repeat=d):
        b = [sum(a * x for a, x in zip(row, u)) for row in A]
        F = enumerate_fiber(A, b)
        if len(F) > 60:
            continue
        rep = augmentation_length(F, M)
        assert rep.augmenting and rep.auglen <= d * d * (rank + 1)
