"""Newton polyhedra of monomial ideals and their inward normal fans."""

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .cartier import MonomialIdealData
from .exactq import ExactError, LinSystem, dot, fm_feasible, solve_linear
from .fans import Cone, ConeError, Fan, cone_from_inequalities, cone_from_rays, dual_cone, fan_equal, refines
from .polyhedra import HalfSpace, HPolyhedron, contains


@dataclass(frozen=True)
class NewtonPolyhedron:
    """``conv(generators) + recession`` where ``recession`` is the dual of ``ambient``."""

    generators: tuple
    ambient: Cone
    vertices: tuple
    recession: Cone

    def halfspaces(self) -> HPolyhedron:
        """Facet description, found from the homogenizing cone over ``P x {1}``."""
        n = self.ambient.ambient
        gens = [tuple(g) + (1,) for g in self.vertices]
        gens += [tuple(w) + (0,) for w in self.recession.rays]
        hom = cone_from_rays(gens, n + 1)
        at_infinity = tuple([0] * n + [1])
        hs = [
            HalfSpace(tuple(-x for x in f[:n]), f[n])
            for f in hom.facet_normals
            if tuple(f) != at_infinity
        ]
        return HPolyhedron(n, tuple(sorted(hs)))

    def __contains__(self, x) -> bool:
        return contains(self.halfspaces(), x)


def _dominated(g: Sequence, others: Sequence, tau: Cone) -> bool:
    """Exact test of ``g in conv(others) + tau^dual`` via convex weights."""
    if not others:
        return False
    k = len(others)
    eqs = [(tuple([1] * k), 1)]
    weak = [(tuple(-int(i == j) for j in range(k)), 0) for i in range(k)]
    for r in tau.rays:
        weak.append((tuple(dot(o, r) for o in others), dot(g, r)))
    return fm_feasible(LinSystem(k, tuple(eqs), tuple(weak))) is not None


def newton(ideal: MonomialIdealData) -> NewtonPolyhedron:
    gens = sorted(set(tuple(g) for g in ideal.generators))
    if not gens:
        raise ExactError("a Newton polyhedron needs at least one generator")
    tau = ideal.ambient
    verts = tuple(g for g in gens if not _dominated(g, [o for o in gens if o != g], tau))
    return NewtonPolyhedron(tuple(gens), tau, verts, dual_cone(tau))


def normal_fan(np: NewtonPolyhedron) -> Fan:
    """Cones ``{v in tau : <g, v> <= <g', v> for all vertices g'}`` that are full-dimensional."""
    tau = np.ambient
    n = tau.ambient
    cones = []
    for g in np.vertices:
        ineqs = list(tau.facet_normals)
        ineqs += [tuple(a - b for a, b in zip(h, g)) for h in np.vertices if h != g]
        c = cone_from_inequalities(ineqs, n)
        if c is not None and c.is_full_dimensional:
            cones.append(c)
    return Fan.from_cones(cones, n)


def _orthant_coordinates(tau: Cone):
    if not tau.is_smooth:
        raise ConeError("unsupported ambient for minimal generators")
    rays = list(tau.rays)
    # m = sum_i y_i * dual_i with y_i = <m, ray_i>
    n = tau.ambient
    dual_basis = []
    for i in range(n):
        sol = solve_linear(rays, [int(i == j) for j in range(n)])
        dual_basis.append(tuple(int(x) for x in sol.point))
    to_y = lambda m: tuple(dot(m, r) for r in rays)  # noqa: E731
    to_m = lambda y: tuple(sum(yi * d[j] for yi, d in zip(y, dual_basis)) for j in range(n))  # noqa: E731
    return to_y, to_m


def integral_closure_generators(ideal: MonomialIdealData) -> list:
    """Minimal monomial generators of the integral closure over a smooth cone.

    In coordinates where the cone is the positive orthant, these are the
    lattice points of the Newton polyhedron from which no unit step down stays
    inside it.  They all lie below the componentwise maximum of the vertices.
    """
    to_y, to_m = _orthant_coordinates(ideal.ambient)
    np = newton(ideal)
    n = ideal.ambient.ambient
    hp = np.halfspaces()
    verts_y = [to_y(v) for v in np.vertices]
    top = [int(max(v[i] for v in verts_y)) for i in range(n)]
    out = []
    for y in product(*(range(t + 1) for t in top)):
        m = to_m(y)
        if not contains(hp, m):
            continue
        steps = [to_m(tuple(yj - int(i == j) for j, yj in enumerate(y))) for i in range(n)]
        if not any(y[i] > 0 and contains(hp, s) for i, s in enumerate(steps)):
            out.append(tuple(int(x) for x in m))
    return sorted(out)


def restrict(Sigma: Fan, tau: Cone) -> Fan:
    return Fan.from_cones(Sigma.cones_in(tau), Sigma.ambient)


def verify_blowup(Sigma: Fan, Delta: Fan, ideals: Sequence) -> bool:
    """Whether each ideal's normal fan reproduces ``Sigma`` over its cone of ``Delta``."""
    if not refines(Sigma, Delta):
        return False
    by_cone = {tau.rays: data for tau, data in ideals}
    for tau in Delta.cones:
        data = by_cone.get(tau.rays)
        if data is None:
            return False
        if not fan_equal(normal_fan(newton(data)), restrict(Sigma, tau)):
            return False
    return True
