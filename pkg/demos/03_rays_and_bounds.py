"""
Rays, ray matrices and eigenvalue bounds
========================================

The heat-bath matrix of a single move averages over the lines ("rays") of
that move. How rays of different moves meet decides whether the move
matrices commute, and the ray matrix gives a lower bound on the SLEM.
"""

from fiberwalk import (LatticePointSet, MoveDistribution, MoveSet, augmentation_length, box,
                       canonical_path_bound, halfspace_box_bound, heat_bath_matrix, heat_bath_move_matrix,
                       intersecting_ray_property, kernel_lower_bound, ray_matrix, ray_matrix_kernel,
                       spectrum, unit_vectors)

# %% a 3 x 3 grid with a diagonal move
F = box((1, 1), (3, 3))
M = MoveSet([(1, 0), (0, 1), (1, 1)])
R = ray_matrix(F, M, [0, 1])
print("ray matrix (rows: rays of the unit moves, cols: components of the diagonal graph)")
for row in R.entries:
    print("   ", " ".join(map(str, row)))
rank, kdim, _ = ray_matrix_kernel(R)
print(f"rank {rank}, kernel dimension {kdim}")

f = MoveDistribution.uniform(M)
lower = kernel_lower_bound(F, M, [0, 1], f)
print(f"kernel lower bound {lower:.4f} <= slem {spectrum(heat_bath_matrix(F, f)).slem:.4f}")

# %% intersecting rays and commuting move matrices
triangle = LatticePointSet([(0, 0), (1, 0), (0, 1)])
for name, S in [("3x3 grid", F), ("triangle", triangle)]:
    irp = intersecting_ray_property(S, (1, 0), (0, 1))
    commute = heat_bath_move_matrix(S, (1, 0)).commutes_with(heat_bath_move_matrix(S, (0, 1)))
    print(f"{name}: intersecting rays {irp}, matrices commute {commute}")

# %% the canonical-path bound needs the augmentation length
E = unit_vectors(2)
grid = box((1, 1), (2, 5))
rep = augmentation_length(grid, E)
bound = canonical_path_bound(grid, E, MoveDistribution.uniform(E), rep.auglen, rep.longest_rays)
print(f"augmentation length {rep.auglen}, ray maxima {rep.longest_rays}")
print(f"canonical-path bound {bound.value:.6f}, slem {bound.slem:.6f}, holds {bound.holds}")

# %% the halfspace bound is reported with a verdict; on small sets it can fail
for a, b in [((1, 1, 1), 2), ((1, 1), 2)]:
    chk = halfspace_box_bound(a, b)
    print(f"a={a} b={b}: bound {chk.value:.4f}, slem {chk.slem:.4f}, holds {chk.holds}")
