"""Pulling subdivisions of rational cones and the monomial ideals whose blowups realize them."""

from .cartier import (
    CartierData,
    MonomialIdealData,
    NotCoherentError,
    SupportFunction,
    cartier_from_subdivision,
    ideal_from_cartier,
    integralize,
    support_from_heights,
)
from .exactq import LinSystem, clear_denominators, fm_feasible, primitive, solve_linear
from .fans import Cone, ConeError, Fan, cone_contains, cone_from_rays, dual_cone, fan_equal, refines, star_subdivision
from .newton import NewtonPolyhedron, integral_closure_generators, newton, normal_fan, verify_blowup
from .polyhedra import HalfSpace, HPolyhedron, contains, facets, lattice_points_in_box, upper_hull
from .pulling import ConicalSubdivision, HeightedConfig, admissible_hyperplane, build_config, pull

__version__ = "0.1.0"
