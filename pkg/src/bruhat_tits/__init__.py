"""Executable combinatorics of Bruhat-Tits buildings for quasi-split quasi-reductive groups."""

from .apartment import (
    ConcaveFn,
    Facet,
    Gap,
    Wall,
    concavity_check,
    f_omega,
    facet_function,
    locate_facet,
    optimize,
    parabolic_correspondence,
    phi_f,
    star_fn,
    star_of_facet,
)
from .affweyl import AffineElement, CoxeterDatum, alcove_basis, demazure_dim, double_cosets
from .compare import bc_transport, exotic_transport, walls_equal
from .descriptor import GroupDescriptor, parse_descriptor
from .echelonnage import RayCase, ValuedRootDatum, assemble, ray_value_sets
from .rootdata import RootSystem, build, parabolic_subsets
from .valueset import ArithProg, ValueSet

__all__ = [
    "AffineElement",
    "ArithProg",
    "ConcaveFn",
    "CoxeterDatum",
    "Facet",
    "Gap",
    "GroupDescriptor",
    "RayCase",
    "RootSystem",
    "ValueSet",
    "ValuedRootDatum",
    "Wall",
    "alcove_basis",
    "assemble",
    "bc_transport",
    "build",
    "concavity_check",
    "demazure_dim",
    "double_cosets",
    "exotic_transport",
    "f_omega",
    "facet_function",
    "locate_facet",
    "optimize",
    "parabolic_correspondence",
    "parabolic_subsets",
    "parse_descriptor",
    "phi_f",
    "ray_value_sets",
    "star_fn",
    "star_of_facet",
    "walls_equal",
]
