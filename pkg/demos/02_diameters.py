"""
Plain versus compressed fiber graphs
====================================

In a plain fiber graph a move may be applied once per step; in the
compressed graph any integer multiple counts as one step. The two
families below show the difference.
"""

from fiberwalk import (MoveSet, PolytopeSpec, build_compressed_graph, build_fiber_graph, diameter,
                       enumerate_fiber, enumerate_polytope, graver_basis, staircase, unit_vectors)

E = unit_vectors(2)

# %% the staircase: every line holds two points, so compression buys nothing
print("staircase   n: plain / compressed")
for n in range(1, 7):
    F = staircase(n)
    print(f"            {n}: {diameter(build_fiber_graph(F, E))} / {diameter(build_compressed_graph(F, E))}")

# %% the simplex x1 + x2 + x3 = b: plain diameter grows with b, compressed does not
M = MoveSet([(1, -1, 0), (0, 1, -1)])
print("simplex     b: plain / compressed")
for b in (1, 5, 10, 20):
    F = enumerate_fiber([[1, 1, 1]], [b])
    print(f"           {b:2d}: {diameter(build_fiber_graph(F, M))} / {diameter(build_compressed_graph(F, M))}")

# %% with the full Graver basis the compressed diameter is at most 2d - 2
A = [[1, 2, 1, 3]]
G = MoveSet([g for g in graver_basis(A) if next(x for x in g if x) > 0])
F = enumerate_polytope(PolytopeSpec(eq_matrix=A, eq_rhs=[7], lower=[0] * 4, upper=[3] * 4))
print(f"Graver basis of {A}: {len(G)} moves up to sign")
print(f"box fiber with {len(F)} points, compressed diameter {diameter(build_compressed_graph(F, G))}",
      f"(bound {2 * len(A[0]) - 2})")
