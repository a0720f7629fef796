"""
Heat-bath walks on a small grid
===============================

A 5 x 3 grid of lattice points with the two unit moves. We compare the
heat-bath walk, which resamples a whole line at once, with the simple walk
that takes one unit step at a time, and then see what happens when an
extra move is thrown in.
"""

from fractions import Fraction

from fiberwalk import (MoveDistribution, MoveSet, box, heat_bath_matrix, mu_grid, simple_walk_matrix,
                       slem_curve, spectrum)

F = box((1, 1), (5, 3))
units = MoveSet([(1, 0), (0, 1)])
with_knight = MoveSet([(1, 0), (0, 1), (2, 1)])

# %% the second largest eigenvalue modulus (SLEM) controls the speed of convergence
for name, M in [("unit moves", units), ("unit moves + (2,1)", with_knight)]:
    hb = spectrum(heat_bath_matrix(F, MoveDistribution.uniform(M))).slem
    sw = spectrum(simple_walk_matrix(F, M)).slem
    print(f"{name:22s} heat-bath {hb:.6f}   simple walk {sw:.6f}")

# The extra move speeds up the simple walk a little, but it slows the
# heat-bath walk: uniform weights now spend a third of the steps on a move
# whose lines are short.

# %% choosing the weights: scan mu for the pair {(1,0), (2,1)}
grid = mu_grid([Fraction(k, 10) for k in range(1, 10)])
curve, best = slem_curve(F, MoveSet([(1, 0), (2, 1)]), grid)
for weights, slem in curve:
    bar = "#" * int(round((slem - 0.85) * 400))
    print(f"mu={str(weights[0]):5s} slem={slem:.6f} {bar}")
print("best weights:", [str(w) for w in best[0]], f"slem {best[1]:.6f}")
