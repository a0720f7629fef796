"""Heat-bath random walks, fiber graphs and Markov bases on finite lattice point sets."""

from .augment import (AugmentationReport, apply_path, augmentation_length, longest_ray,
                      minimal_augmenting_path)
from .basis import (MoveDistribution, MoveSet, conformal, conformal_decompose, graver_basis,
                    integer_kernel_basis, is_markov_basis, negative_part, norm, positive_part,
                    unit_vectors, validate_move_set)
from .errors import *  # noqa: F401,F403
from .graph import (FiberGraph, build_compressed_graph, build_fiber_graph, connected_components,
                    diameter, diameter_lower_bound, distance, edge_expansion, is_connected)
from .instance import INSTANCE_SCHEMA, Instance
from .lattice import (LatticePointSet, PolytopeSpec, box, cross_polytope, dilate, enumerate_fiber,
                      enumerate_polytope, fiber_spec, halfspace_set, staircase)
from .rays import (RayMatrix, has_intersecting_ray_property, intersecting_ray_property, ray,
                   ray_decomposition, ray_matrix, ray_matrix_kernel)
from .report import analyze
from .sampler import (Trajectory, empirical_tv, heat_bath_step, make_rng, one_step_counts, run_chain,
                      run_chains, spawn_rngs, tv_curve)
from .spectral import (BoundCheck, SpectralReport, canonical_path_bound, halfspace_box_bound,
                       irp_upper_bound, jacobi_eigh, kernel_lower_bound, mu_grid, slem_curve, spectrum)
from .walk import (TargetDistribution, TransitionMatrix, check_reversibility, heat_bath_matrix,
                   heat_bath_move_matrix, simple_walk_matrix)

__version__ = "0.1.0"
