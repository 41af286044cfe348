"""Pointed rational polyhedral cones and fans of them.

A cone is stored canonically by its primitive extreme rays (sorted in
decreasing lexicographic order), its primitive inward facet normals and, for
cones that are not full-dimensional, integer equations of its linear span.
Two pointed cones are equal exactly when their ray tuples are equal.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .exactq import ExactError, dot, kernel, primitive, rank, rref, vec


class ConeError(ExactError):
    pass


def _sort_rays(rays: Iterable) -> tuple:
    return tuple(sorted(set(rays), reverse=True))


@dataclass(frozen=True)
class Cone:
    rays: tuple
    facet_normals: tuple
    equations: tuple
    ambient: int
    dim: int

    def __contains__(self, v) -> bool:
        return cone_contains(self, v)

    def contains_cone(self, other: "Cone") -> bool:
        return all(cone_contains(self, r) for r in other.rays)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @property
    def is_smooth(self) -> bool:
        """Full-dimensional with a lattice basis as rays."""
        if not (self.is_full_dimensional and self.is_simplicial):
            return False
        return abs(_det([vec(r) for r in self.rays])) == 1

    def facets(self) -> list:
        """Facets as ``(normal, rays_on_facet)`` pairs."""
        return [(f, tuple(r for r in self.rays if dot(f, r) == 0)) for f in self.facet_normals]

    def __str__(self):
        return "cone(" + ", ".join(str(tuple(r)) for r in self.rays) + ")"


def _det(m: list):
    red = [list(r) for r in m]
    n = len(red)
    det = 1
    for c in range(n):
        p = next((i for i in range(c, n) if red[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            red[c], red[p] = red[p], red[c]
            det = -det
        det *= red[c][c]
        for i in range(c + 1, n):
            f = red[i][c] / red[c][c]
            red[i] = [x - f * y for x, y in zip(red[i], red[c])]
    return det


def _span_equations(rays: list, n: int) -> tuple:
    basis = kernel(rays) if rays else kernel([], n)
    if not basis:
        return ()
    red, _ = rref(basis)
    return tuple(primitive(r) for r in red)


def cone_from_rays(gens: Sequence[Sequence], ambient: Optional[int] = None) -> Cone:
    """Canonical pointed cone generated by ``gens``.

    Generators are made primitive and redundant ones dropped.  Raises
    :class:`ConeError` if the generated cone contains a line.
    """
    gens = [vec(g) for g in gens]
    if not gens:
        raise ConeError("a cone needs at least one generator")
    n = len(gens[0]) if ambient is None else ambient
    if any(len(g) != n for g in gens):
        raise ConeError("generators of mixed length")
    prim = sorted({primitive(g) for g in gens}, reverse=True)
    d = rank(prim)
    eqs = _span_equations(prim, n)
    eq_rows = [vec(e) for e in eqs]
    normals = set()
    for subset in combinations(prim, d - 1):
        ker = kernel([vec(r) for r in subset] + eq_rows, n)
        if len(ker) != 1:
            continue
        f = ker[0]
        vals = [dot(f, r) for r in prim]
        if all(v >= 0 for v in vals):
            normals.add(primitive(f))
        elif all(v <= 0 for v in vals):
            normals.add(primitive(tuple(-x for x in f)))
    normals = sorted(normals, reverse=True)
    if rank(eq_rows + [vec(f) for f in normals]) < n:
        raise ConeError("cone not strictly convex")
    extreme = []
    for r in prim:
        tight = [vec(f) for f in normals if dot(f, r) == 0]
        if rank(eq_rows + tight) == n - 1:
            extreme.append(r)
    return Cone(_sort_rays(extreme), tuple(normals), eqs, n, d)


def cone_contains(c: Cone, v: Sequence) -> bool:
    if len(v) != c.ambient:
        raise ConeError(f"dimension mismatch: vector of length {len(v)} in ambient {c.ambient}")
    return all(dot(e, v) == 0 for e in c.equations) and all(dot(f, v) >= 0 for f in c.facet_normals)


def cone_from_inequalities(normals: Sequence[Sequence], ambient: int) -> Optional[Cone]:
    """The cone ``{v : <f, v> >= 0 for all f}``; ``None`` when it is ``{0}``.

    Extreme rays are found by trying every rank ``ambient - 1`` subset of the
    inequalities.  The normals must span the ambient space (pointed cone).
    """
    normals = [vec(f) for f in normals]
    if rank(normals) < ambient:
        raise ConeError("cone not strictly convex")
    rays = set()
    for subset in combinations(normals, ambient - 1):
        ker = kernel(list(subset), ambient) if subset else kernel([], ambient)
        if len(ker) != 1:
            continue
        k = ker[0]
        for s in (1, -1):
            cand = tuple(s * x for x in k)
            if all(dot(f, cand) >= 0 for f in normals):
                rays.add(primitive(cand))
    if not rays:
        return None
    return cone_from_rays(sorted(rays), ambient)


def dual_cone(c: Cone) -> Cone:
    """``{m : <m, v> >= 0 for all v in c}`` for a full-dimensional pointed cone."""
    if not c.is_full_dimensional:
        raise ConeError("dual of a cone that is not full-dimensional is not pointed")
    return cone_from_rays(c.facet_normals, c.ambient)


def interior_functional(c: Cone) -> tuple:
    """Primitive sum of the facet normals; strictly positive on ``c`` minus the origin."""
    total = [0] * c.ambient
    for f in c.facet_normals:
        total = [a + b for a, b in zip(total, f)]
    return primitive(total)


def is_face(face_rays: Sequence, c: Cone) -> bool:
    """Whether the cone spanned by ``face_rays`` (a subcone of ``c``) is a face of ``c``."""
    if not face_rays:
        return True
    tight = [f for f in c.facet_normals if all(dot(f, r) == 0 for r in face_rays)]
    generated = {r for r in c.rays if all(dot(f, r) == 0 for f in tight)}
    span_face = cone_from_rays(face_rays, c.ambient)
    return set(span_face.rays) == generated


def intersect(a: Cone, b: Cone) -> Optional[Cone]:
    n = a.ambient
    normals = list(a.facet_normals) + list(b.facet_normals)
    for e in a.equations + b.equations:
        normals += [e, tuple(-x for x in e)]
    return cone_from_inequalities(normals, n)


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    """A fan given by its maximal cones, sorted by ray tuple."""

    cones: tuple
    ambient: int

    @classmethod
    def from_cones(cls, cones: Iterable[Cone], ambient: Optional[int] = None) -> "Fan":
        cones = list(dict.fromkeys(cones))
        if ambient is None:
            if not cones:
                raise ConeError("ambient rank needed for an empty fan")
            ambient = cones[0].ambient
        if any(c.ambient != ambient for c in cones):
            raise ConeError("cones of mixed ambient rank")
        maximal = [
            c for c in cones if not any(o is not c and o.contains_cone(c) for o in cones)
        ]
        return cls(tuple(sorted(maximal, key=lambda c: c.rays)), ambient)

    @property
    def rays(self) -> tuple:
        return _sort_rays(r for c in self.cones for r in c.rays)

    def cones_in(self, tau: Cone) -> list:
        return [c for c in self.cones if tau.contains_cone(c)]

    def containing(self, v) -> list:
        return [c for c in self.cones if cone_contains(c, v)]

    def is_valid(self) -> bool:
        """Pairwise intersections of maximal cones are faces of both."""
        for a, b in combinations(self.cones, 2):
            meet = intersect(a, b)
            rays = meet.rays if meet is not None else ()
            if not (is_face(rays, a) and is_face(rays, b)):
                return False
        return True


def fan_equal(a: Fan, b: Fan) -> bool:
    return a.ambient == b.ambient and {c.rays for c in a.cones} == {c.rays for c in b.cones}


def triangulate(c: Cone) -> list:
    """Split a pointed cone into simplicial cones (lists of rays) by pulling its first ray."""
    if c.is_simplicial:
        return [list(c.rays)]
    apex = c.rays[0]
    out = []
    for f, rays in c.facets():
        if dot(f, apex) == 0:
            continue
        for simplex in triangulate(cone_from_rays(rays, c.ambient)):
            out.append([apex] + simplex)
    return out


def _projection_coords(c: Cone) -> tuple:
    basis = [vec(r) for r in c.rays]
    for coords in combinations(range(c.ambient), c.dim):
        if rank([[r[i] for i in coords] for r in basis]) == c.dim:
            return coords
    raise AssertionError("no coordinate projection is injective on the span")


def _volume(c: Cone, height: Sequence, coords: Sequence) -> object:
    total = 0
    for simplex in triangulate(c):
        cols = [[r[i] / dot(height, r) for i in coords] for r in map(vec, simplex)]
        total += abs(_det(cols))
    return total


def refines(fine: Fan, coarse: Fan) -> bool:
    """Whether ``fine`` subdivides ``coarse``.

    Every fine cone must sit inside a coarse cone, and each coarse cone's
    truncated volume must equal the sum over the equidimensional fine cones it
    contains, which forces the supports to agree.
    """
    if fine.ambient != coarse.ambient:
        return False
    if not all(any(c.contains_cone(f) for c in coarse.cones) for f in fine.cones):
        return False
    for c in coarse.cones:
        height = interior_functional(c)
        coords = _projection_coords(c)
        inside = [f for f in fine.cones if f.dim == c.dim and c.contains_cone(f)]
        if _volume(c, height, coords) != sum(_volume(f, height, coords) for f in inside):
            return False
    return True


def star_subdivision(f: Fan, ray: Sequence[int]) -> Fan:
    """Insert ``ray`` and cone every cone containing it over its facets that miss it."""
    ray = tuple(ray)
    if primitive(ray) != ray:
        raise ConeError(f"{ray} is not primitive")
    hit = f.containing(ray)
    if not hit:
        raise ConeError(f"{ray} lies outside the support of the fan")
    cones = [c for c in f.cones if c not in hit]
    for c in hit:
        for normal, rays in c.facets():
            if dot(normal, ray) != 0:
                cones.append(cone_from_rays(list(rays) + [ray], f.ambient))
    return Fan.from_cones(cones, f.ambient)
