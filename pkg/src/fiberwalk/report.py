"""Structural and spectral report for one instance, as plain JSON-ready data."""

from __future__ import annotations

import math
from fractions import Fraction

from .augment import augmentation_length
from .basis import MoveDistribution, MoveSet, scalar_multiple, validate_move_set
from .errors import ResourceLimit
from .graph import (build_compressed_graph, build_fiber_graph, connected_components, diameter,
                    diameter_lower_bound)
from .lattice import LatticePointSet
from .rays import intersecting_ray_property, ray_matrix, ray_matrix_kernel
from .spectral import (BoundCheck, canonical_path_value, halfspace_box_value, irp_upper_bound,
                       kernel_lower_bound, spectrum)
from .walk import TargetDistribution, heat_bath_matrix, simple_walk_matrix

# beyond this many points the quadratic-cost parts of the report are skipped
DIAMETER_MAX_NODES = 5000
SPECTRUM_MAX_NODES = 1500


def _num(x):
    """JSON-safe number: inf becomes the string "inf"."""
    return "inf" if x == math.inf else x


def _halfspace_form(polytope) -> tuple[list[int], int] | None:
    """``(a, b)`` if the polytope is exactly ``{u >= 0 : a.u <= b}`` with positive ``a`` and ``b``."""
    if polytope is None or polytope.eq_matrix is not None or polytope.upper is not None:
        return None
    if polytope.ineq_matrix is None or len(polytope.ineq_matrix) != 1:
        return None
    if polytope.lower is None or any(polytope.lower):
        return None
    a, b = list(polytope.ineq_matrix[0]), polytope.ineq_rhs[0]
    if b <= 0 or any(x <= 0 for x in a):
        return None
    return a, b


def analyze(F: LatticePointSet, M: MoveSet, f: MoveDistribution | None = None, pi=None,
            mprime: list[int] | None = None, variants: list[list[int]] | None = None,
            cap: int = 10_000_000, polytope=None, method: str = "jacobi") -> dict:
    """Everything the toolkit can say about ``(F, M, f, pi)`` in one dictionary.

    ``mprime`` selects the rows of the ray matrix (default: the moves of
    least weight). ``variants`` lists move subsets whose uniform heat-bath and
    simple walks are reported alongside the main chain. A ``polytope`` of the
    form ``{u >= 0 : a.u <= b}`` enables the halfspace bound.
    """
    f = f or MoveDistribution.uniform(M)
    target = TargetDistribution(len(F), pi) if not isinstance(pi, TargetDistribution) else pi
    out: dict = {
        "set": {"size": len(F), "dim": F.dim},
        "moves": [list(m) for m in M],
        "weights": [str(w) for w in f.weights],
        "target": "uniform" if target.is_uniform else [str(p) for p in target.probabilities],
        "move_set_violations": validate_move_set(M),
    }
    small = len(F) <= DIAMETER_MAX_NODES
    plain = build_fiber_graph(F, M)
    comps = connected_components(plain)
    graphs = {"connected": len(comps) <= 1, "components": len(comps),
              "plain_edges": plain.n_edges}
    if small:
        comp = build_compressed_graph(F, M)
        graphs["compressed_edges"] = comp.n_edges
        graphs["diameter_plain"] = _num(diameter(plain))
        graphs["diameter_compressed"] = _num(diameter(comp))
    if len(F) >= 2 and len(M):
        graphs["diameter_lower_bound"] = str(diameter_lower_bound(F, M))
    out["graphs"] = graphs

    pairs = []
    for a in range(len(M)):
        for b in range(a + 1, len(M)):
            if scalar_multiple(M[a], M[b]) is None:
                pairs.append({"moves": [a, b], "irp": intersecting_ray_property(F, M[a], M[b])})
    out["intersecting_rays"] = {"all_pairs": all(p["irp"] for p in pairs), "pairs": pairs}

    if mprime is None:
        w_min = f.min_weight()
        mprime = [k for k, w in enumerate(f.weights) if w == w_min]
    R = ray_matrix(F, M, mprime) if len(F) else None
    if R is not None:
        rank, kdim, _ = ray_matrix_kernel(R)
        out["ray_matrix"] = {"mprime": mprime, "entries": R.entries, "rank": rank, "kernel_dim": kdim,
                             "rows": [{"move": k, "ray": [list(F[i]) for i in r]} for k, r in R.row_labels],
                             "cols": [[list(F[i]) for i in c] for c in R.col_labels]}

    aug = None
    try:
        aug = augmentation_length(F, M, cap=cap)
        out["augmentation"] = aug.to_json()
    except ResourceLimit as exc:
        out["augmentation"] = {"skipped": str(exc)}

    if len(F) <= SPECTRUM_MAX_NODES:
        H = heat_bath_matrix(F, f, target)
        rep = spectrum(H, method)
        spec = rep.to_json()
        spec["simple_walk_slem"] = spectrum(simple_walk_matrix(F, M), method).slem
        bounds = _bounds(F, M, f, target, mprime, aug, rep.slem, polytope)
        spec["bounds"] = [b.to_json() for b in bounds]
        out["spectral"] = spec
        if variants:
            out["variants"] = []
            for sub in variants:
                Ms = M.subset(sub)
                fs = MoveDistribution.uniform(Ms)
                out["variants"].append({
                    "moves": sub,
                    "heat_bath_slem": spectrum(heat_bath_matrix(F, fs, target), method).slem,
                    "simple_walk_slem": spectrum(simple_walk_matrix(F, Ms), method).slem,
                })
    else:
        out["spectral"] = {"skipped": f"more than {SPECTRUM_MAX_NODES} points"}
    return out


def _bounds(F, M, f, target, mprime, aug, slem, polytope) -> list[BoundCheck]:
    tol = 1e-9
    found = []
    uniform = target.is_uniform
    if uniform and len(F):
        lo = kernel_lower_bound(F, M, mprime, f)
        if lo is not None:
            found.append(BoundCheck("kernel_lower_bound", lo, slem, slem >= lo - tol, "lower"))
    up = irp_upper_bound(F, M, f)
    if up is not None:
        found.append(BoundCheck("irp_upper_bound", up, slem, slem <= up + tol))
    if uniform and aug is not None and aug.augmenting and aug.auglen and min(f.weights) > 0:
        v = float(canonical_path_value(len(F), f.min_weight(), aug.auglen, len(M), aug.longest_rays))
        found.append(BoundCheck("canonical_path_bound", v, slem, slem <= v + tol))
    hs = _halfspace_form(polytope)
    unit = sorted(tuple(m) for m in M) == sorted(
        tuple(int(i == j) for j in range(F.dim)) for i in range(F.dim))
    if hs is not None and uniform and unit and f.weights == (Fraction(1, len(M)),) * len(M):
        v = float(halfspace_box_value(hs[0], hs[1], len(F)))
        found.append(BoundCheck("halfspace_box_bound", v, slem, slem <= v + tol))
    return found
