"""Support functions, Cartier data and the monomial ideals they define.

Two routes lead to Cartier data on a subdivision ``Sigma`` of ``Delta``:

* from ray heights (:func:`support_from_heights` then :func:`integralize`),
* from the linear system on ``{m_sigma}`` (:func:`cartier_from_subdivision`):
  agreement on shared rays, strict inequality on rays one cone has and the
  other lacks, and ``m_sigma`` nonnegative on the ``Delta`` cone around it.

The convention throughout is that ``phi(v) = min_sigma <m_sigma, v>``, so the
vector attached to ``sigma`` is the minimizer on ``sigma``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm

from .exactq import ExactError, LinSystem, clear_denominators, dot, fm_feasible, rank, solve_linear
from .fans import Cone, Fan, refines
from .pulling import ConicalSubdivision


class NotCoherentError(ExactError):
    pass


@dataclass(frozen=True)
class SupportFunction:
    """One rational functional ``u_sigma`` per maximal cone of ``fan``."""

    fan: Fan
    functionals: tuple

    def __call__(self, v) -> Fraction:
        for c, u in zip(self.fan.cones, self.functionals):
            if v in c:
                return dot(u, v)
        raise ExactError(f"{tuple(v)} is outside the support")

    def min_value(self, v) -> Fraction:
        return min(dot(u, v) for u in self.functionals)


@dataclass(frozen=True)
class CartierData:
    """Integral ``m_sigma`` per maximal cone; ``multiplier`` is the scale applied to reach them."""

    fan: Fan
    vectors: tuple
    multiplier: int = 1

    def items(self):
        return zip(self.fan.cones, self.vectors)


@dataclass(frozen=True)
class MonomialIdealData:
    """Exponent data of a monomial ideal on the affine chart of ``ambient``.

    ``closure`` marks the ideal as the integral closure of the one generated.
    """

    ambient: Cone
    generators: tuple
    closure: bool = True

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.ambient.ambient:
                raise ExactError(f"generator {g} has the wrong length")
            bad = [r for r in self.ambient.rays if dot(g, r) < 0]
            if bad:
                raise ExactError(f"generator {tuple(g)} is negative on ray {bad[0]} of the ambient cone")


def support_from_heights(sub: ConicalSubdivision) -> SupportFunction:
    """Solve ``<u_sigma, v_rho> = h(v_rho)`` over the rays of each maximal cone."""
    out = []
    for c in sub.fan.cones:
        sol = solve_linear([r for r in c.rays], [sub.height(r) for r in c.rays])
        if sol is None:
            raise AssertionError(f"heights are not linear on {c}; subdivision is corrupt")
        out.append(sol.point)
    return SupportFunction(sub.fan, tuple(out))


def integralize(sf: SupportFunction) -> CartierData:
    k = reduce(lcm, (x.denominator for u in sf.functionals for x in u), 1)
    vectors = tuple(tuple(int(x * k) for x in u) for u in sf.functionals)
    return CartierData(sf.fan, vectors, k)


def _owners(Sigma: Fan, Delta: Fan) -> list:
    return [[t for t in Delta.cones if t.contains_cone(s)] for s in Sigma.cones]


def _is_wall(a: Cone, b: Cone) -> bool:
    shared = [r for r in a.rays if r in b.rays]
    return bool(shared) and rank(shared) == a.ambient - 1


def coherence_system(Sigma: Fan, Delta: Fan, reduced: bool = False) -> LinSystem:
    """The linear system whose solutions are Cartier data on ``Sigma`` relative to ``Delta``.

    Unknown ``m_i`` occupies variables ``i*n .. i*n + n - 1``.  The strict
    inequalities are written with slack 1, which is harmless because the
    system is homogeneous.

    With ``reduced=True`` the strict inequalities are imposed only across
    walls (pairs sharing a codimension-one face) and nonnegativity only on the
    rays a cone itself contains.  When every cone is full-dimensional the
    solution set is the same, since the support of each ``Delta`` cone is convex.
    """
    n = Sigma.ambient
    cones = Sigma.cones
    N = len(cones)
    rays = Sigma.rays
    owners = _owners(Sigma, Delta)

    def functional(pairs):
        row = [0] * (N * n)
        for i, v, sign in pairs:
            for j in range(n):
                row[i * n + j] += sign * v[j]
        return tuple(row)

    members = {tau: [i for i in range(N) if tau in owners[i]] for tau in Delta.cones}
    eqs, weak = [], []
    for tau in Delta.cones:
        for i in members[tau]:
            for j in members[tau]:
                if i == j:
                    continue
                wall = not reduced or _is_wall(cones[i], cones[j])
                for r in rays:
                    in_i, in_j = r in cones[i], r in cones[j]
                    if in_i and in_j and i < j:
                        eqs.append((functional([(i, r, 1), (j, r, -1)]), 0))
                    elif in_i and not in_j and wall:
                        weak.append((functional([(i, r, 1), (j, r, -1)]), -1))
    for i in range(N):
        for tau in owners[i]:
            for r in tau.rays:
                if not reduced or r in cones[i].rays:
                    weak.append((functional([(i, r, -1)]), 0))
    # a cone alone in every Delta cone around it is unconstrained apart from m >= 0
    lone = [i for i in range(N) if all(len(members[t]) == 1 for t in owners[i])]
    for i in lone:
        for j in range(n):
            row = [0] * (N * n)
            row[i * n + j] = 1
            eqs.append((tuple(row), 0))
    return LinSystem(N * n, tuple(dict.fromkeys(eqs)), tuple(dict.fromkeys(weak)))


def cartier_from_subdivision(Sigma: Fan, Delta: Fan) -> CartierData:
    """Cartier data for ``Sigma`` from the inequality system, scaled to be integral.

    A cone of ``Sigma`` that is alone in its cone of ``Delta`` gets ``m = 0``.
    """
    if not refines(Sigma, Delta):
        raise ExactError("Sigma does not refine Delta")
    full = coherence_system(Sigma, Delta)
    if all(c.is_full_dimensional for c in Sigma.cones):
        point = fm_feasible(coherence_system(Sigma, Delta, reduced=True))
    else:
        point = fm_feasible(full)
    if point is None:
        raise NotCoherentError("subdivision is not coherent relative to Delta")
    if not full.satisfied_by(point):
        raise AssertionError("reduced coherence system admitted a point the full system rejects")
    ints, k = clear_denominators(point)
    n = Sigma.ambient
    vectors = tuple(tuple(ints[i * n:(i + 1) * n]) for i in range(len(Sigma.cones)))
    return CartierData(Sigma, vectors, k)


def check_cartier(cd: CartierData, Delta: Fan) -> list:
    """Violated conditions of ``cd`` relative to ``Delta``; empty when valid."""
    problems = []
    owners = _owners(cd.fan, Delta)
    rays = cd.fan.rays
    for i, (ci, mi) in enumerate(cd.items()):
        for tau in owners[i]:
            for r in tau.rays:
                if dot(mi, r) < 0:
                    problems.append(f"m_{i} negative on ray {r} of {tau}")
        for j, (cj, mj) in enumerate(cd.items()):
            if i == j or not set(owners[i]) & set(owners[j]):
                continue
            for r in rays:
                if r in ci and r in cj and dot(mi, r) != dot(mj, r):
                    problems.append(f"m_{i}, m_{j} disagree on shared ray {r}")
                if r in ci and r not in cj and not dot(mi, r) < dot(mj, r):
                    problems.append(f"<m_{i}, {r}> is not below <m_{j}, {r}>")
    return problems


def ideal_from_cartier(cd: CartierData, Delta: Fan) -> list:
    """``(tau, MonomialIdealData)`` for every maximal cone ``tau`` of ``Delta``."""
    out = []
    for tau in Delta.cones:
        gens = sorted({m for c, m in cd.items() if tau.contains_cone(c)})
        if not gens:
            raise ExactError(f"no cone of the subdivision lies in {tau}")
        for g in gens:
            bad = [r for r in tau.rays if dot(g, r) < 0]
            if bad:
                raise ExactError(f"m = {g} is not in the semigroup of {tau}")
        out.append((tau, MonomialIdealData(tau, tuple(gens), True)))
    return out

