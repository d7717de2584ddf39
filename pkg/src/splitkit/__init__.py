"""Exact regular subdivisions, tight spans and splits of polytopes."""

from .exact import POS_INF, Rat, rat
from .polytope import HPolyhedron, Hyperplane, VPolytope, dual_description, edges, embed, face_lattice, relint_meets
from .subdivision import (
    coherency_index,
    gkz_vector,
    is_coherent,
    regular_subdivision,
    refines,
    same_subdivision,
    tight_span,
)
from .splits import (
    Split,
    enumerate_splits,
    is_compatible,
    is_weakly_compatible,
    split_complex,
    split_decomposition,
    split_polyhedron,
    split_weight,
)
from .hypersimplex import ABSplit, ab_split, enumerate_ab_splits, hypersimplex, split_count
from .matroid import Matroid, is_matroid_subdivision, pair_matroid, split_matroid
from .complex import SimplicialComplex, flag_complex, reduced_homology

__version__ = "0.1.0"

__all__ = [
    "POS_INF", "Rat", "rat",
    "HPolyhedron", "Hyperplane", "VPolytope", "dual_description", "edges", "embed", "face_lattice",
    "relint_meets",
    "coherency_index", "gkz_vector", "is_coherent", "regular_subdivision", "refines", "same_subdivision",
    "tight_span",
    "Split", "enumerate_splits", "is_compatible", "is_weakly_compatible", "split_complex",
    "split_decomposition", "split_polyhedron", "split_weight",
    "ABSplit", "ab_split", "enumerate_ab_splits", "hypersimplex", "split_count",
    "Matroid", "is_matroid_subdivision", "pair_matroid", "split_matroid",
    "SimplicialComplex", "flag_complex", "reduced_homology",
]
