"""Polytopes in vertex and halfspace form.

Facets are found by brute force: every affinely independent subset of the
right size spans a candidate hyperplane and the supporting ones are kept.
That is exponential, and fine for the rank <= 5 inputs this package is for.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

from .exactq import ExactError, dot, kernel, primitive, rank, rref, solve_linear, sub, vec


@dataclass(frozen=True, order=True)
class HalfSpace:
    """``<normal, x> <= offset`` with ``gcd(normal, offset) == 1``."""

    normal: tuple
    offset: int

    def holds(self, x) -> bool:
        return dot(self.normal, x) <= self.offset

    def tight(self, x) -> bool:
        return dot(self.normal, x) == self.offset


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of halfspaces, inside the affine subspace cut out by ``equalities``.

    ``equalities`` is a tuple of ``(normal, offset)`` pairs meaning
    ``<normal, x> = offset``.
    """

    ambient: int
    halfspaces: tuple = ()
    equalities: tuple = ()

    def __contains__(self, x) -> bool:
        return contains(self, x)


@dataclass(frozen=True)
class VPolytope:
    ambient: int
    vertices: tuple


def affine_hull(points: Sequence[Sequence]) -> tuple:
    """Canonical equalities ``(normal, offset)`` cutting out the affine hull of ``points``."""
    pts = [vec(p) for p in points]
    rows = [p + (-1,) for p in pts]
    basis = kernel(rows)
    if not basis:
        return ()
    red, _ = rref(basis)
    out = []
    for r in red:
        r = primitive(r)
        out.append((tuple(r[:-1]), r[-1]))
    return tuple(out)


def affine_dim(points: Sequence[Sequence]) -> int:
    pts = [vec(p) for p in points]
    if not pts:
        return -1
    return rank([sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0


def _supporting(pts: list, normal, offset) -> Optional[tuple]:
    vals = [dot(normal, p) - offset for p in pts]
    if all(v <= 0 for v in vals):
        return tuple(normal) + (offset,)
    if all(v >= 0 for v in vals):
        return tuple(-x for x in normal) + (-offset,)
    return None


def facets(points: Sequence[Sequence]) -> HPolyhedron:
    """Irredundant halfspace description of ``conv(points)``.

    A polytope that is not full-dimensional gets explicit affine-hull
    equalities, and each facet normal is taken orthogonal to the equality
    normals so that the representation is unique.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise ExactError("facets of an empty point set")
    n = len(pts[0])
    eqs = affine_hull(pts)
    k = affine_dim(pts)
    found = set()
    if k > 0:
        eq_rows = [tuple(e) + (0,) for e, _ in eqs]
        for subset in combinations(range(len(pts)), k):
            rows = [pts[i] + (-1,) for i in subset] + eq_rows
            ker = kernel(rows)
            if len(ker) != 1:
                continue
            normal, offset = ker[0][:n], ker[0][n]
            sup = _supporting(pts, normal, offset)
            if sup is not None:
                found.add(primitive(sup))
    hs = tuple(sorted(HalfSpace(tuple(f[:n]), f[n]) for f in found))
    return HPolyhedron(n, hs, eqs)


def vertices(points: Sequence[Sequence]) -> VPolytope:
    """Canonical vertex set of ``conv(points)``, sorted lexicographically."""
    pts = [vec(p) for p in points]
    hp = facets(pts)
    n = hp.ambient
    eq_normals = [e for e, _ in hp.equalities]
    out = set()
    for p in pts:
        tight = [h.normal for h in hp.halfspaces if h.tight(p)]
        if rank(eq_normals + tight) == n:
            out.add(p)
    return VPolytope(n, tuple(sorted(out)))


def upper_hull(points: Sequence[Sequence], dim: Optional[int] = None) -> list:
    """Cells of the upper hull of lifted points, as sorted index tuples.

    The last coordinate of each point is its height.  A cell is the set of
    points on a facet whose outward normal has positive last coordinate.  If
    all points lie on one non-vertical hyperplane (for example equal heights)
    there is a single cell.  ``dim``, when given, is the required affine
    dimension of the projected points.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise ExactError("upper hull of an empty point set")
    base = [p[:-1] for p in pts]
    k = affine_dim(base)
    if dim is not None and k < dim:
        raise ExactError(
            f"degenerate configuration: projected points span dimension {k}, expected {dim}"
        )
    if affine_dim(pts) == k:
        return [tuple(range(len(pts)))]
    hp = facets(pts)
    cells = []
    for h in hp.halfspaces:
        if h.normal[-1] > 0:
            cells.append(tuple(i for i, p in enumerate(pts) if h.tight(p)))
    return sorted(cells)


def contains(P: HPolyhedron, x: Sequence) -> bool:
    x = vec(x)
    if len(x) != P.ambient:
        raise ExactError(f"dimension mismatch: point of length {len(x)} in ambient {P.ambient}")
    return all(dot(e, x) == c for e, c in P.equalities) and all(h.holds(x) for h in P.halfspaces)


def lattice_points_in_box(lo: Sequence[int], hi: Sequence[int], filter: HPolyhedron) -> list:
    """Integer points of the box ``[lo, hi]`` lying in ``filter``, in lexicographic order."""
    if len(lo) != len(hi):
        raise ExactError("box corners differ in length")
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [p for p in product(*ranges) if contains(filter, p)]


def equivalent_halfspaces(h: HalfSpace, g: HalfSpace, equalities: Sequence = ()) -> bool:
    """Whether ``h`` is a positive multiple of ``g`` plus a combination of ``equalities``.

    On the affine subspace cut out by ``equalities`` the two then define the
    same halfspace.
    """
    target = tuple(h.normal) + (h.offset,)
    cols = [tuple(g.normal) + (g.offset,)] + [tuple(e) + (c,) for e, c in equalities]
    A = [tuple(col[i] for col in cols) for i in range(len(target))]
    sol = solve_linear(A, target)
    if sol is None:
        return False
    # g is independent of the equalities, so its coefficient is determined
    return sol.point[0] > 0
