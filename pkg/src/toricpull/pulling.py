"""Pulling subdivisions of a cone along a subcone.

Every ray of ``sigma`` and ``tau`` is cut with an affine hyperplane ``<a, x> = c``.
The resulting points get height 1 when they come from ``tau`` and 0
otherwise; the upper hull of the lifted configuration projects onto a
coherent subdivision of the cross-section, and coning over its cells gives
the fan.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactq import ExactError, dot, primitive, scale, vec
from .fans import Cone, ConeError, Fan, cone_contains, cone_from_rays, interior_functional
from .polyhedra import upper_hull


@dataclass(frozen=True)
class HeightedConfig:
    """Points on the hyperplane ``<a, x> = c``, each with a height.

    ``rays[i]`` is the primitive ray through ``points[i]``.
    """

    points: tuple
    heights: tuple
    hyperplane: tuple
    rays: tuple

    def lifted(self) -> list:
        return [p + (h,) for p, h in zip(self.points, self.heights)]


@dataclass(frozen=True)
class ConicalSubdivision:
    fan: Fan
    ray_heights: dict = field(hash=False)
    config: Optional[HeightedConfig] = None

    def height(self, ray) -> Fraction:
        return self.ray_heights[tuple(ray)]


def _check_pair(sigma: Cone, tau: Cone) -> None:
    if not sigma.is_full_dimensional:
        raise ConeError("sigma must be full-dimensional")
    if tau.ambient != sigma.ambient:
        raise ConeError("sigma and tau live in different ranks")
    outside = [r for r in tau.rays if not cone_contains(sigma, r)]
    if outside:
        raise ConeError(f"tau is not contained in sigma: ray {outside[0]} lies outside")


def admissible_hyperplane(sigma: Cone, tau: Cone) -> tuple:
    """``(a, 1)`` with ``a`` the primitive sum of the dual cone's extreme rays."""
    _check_pair(sigma, tau)
    return interior_functional(sigma), 1


def _check_hyperplane(sigma: Cone, tau: Cone, hyperplane) -> tuple:
    a, c = hyperplane
    a = tuple(int(x) for x in a)
    c = int(c)
    if len(a) != sigma.ambient:
        raise ConeError("hyperplane functional has the wrong length")
    if c == 0:
        raise ConeError("the hyperplane must not pass through the origin")
    for r in sigma.rays + tau.rays:
        if dot(a, r) * c <= 0:
            raise ConeError(f"hyperplane {a}.x = {c} does not meet the ray through {r}")
    return a, c


def build_config(sigma: Cone, tau: Cone, hyperplane=None) -> HeightedConfig:
    _check_pair(sigma, tau)
    if hyperplane is None:
        hyperplane = admissible_hyperplane(sigma, tau)
    a, c = _check_hyperplane(sigma, tau, hyperplane)
    lifted_rays = set(tau.rays)
    rays = list(sigma.rays) + [r for r in tau.rays if r not in sigma.rays]
    points = tuple(scale(Fraction(c, dot(a, r)), vec(r)) for r in rays)
    heights = tuple(Fraction(int(r in lifted_rays)) for r in rays)
    return HeightedConfig(points, heights, (a, c), tuple(rays))


def pull(sigma: Cone, tau: Cone, hyperplane=None) -> ConicalSubdivision:
    """The pulling subdivision of ``sigma`` along ``tau`` with homogenized ray heights."""
    config = build_config(sigma, tau, hyperplane)
    a, c = config.hyperplane
    cells = upper_hull(config.lifted(), dim=sigma.ambient - 1)
    cones = [cone_from_rays([config.rays[i] for i in cell], sigma.ambient) for cell in cells]
    fan = Fan.from_cones(cones, sigma.ambient)
    heights = {
        r: w * Fraction(dot(a, r)) / c for r, w in zip(config.rays, config.heights)
    }
    missing = set(fan.rays) - set(heights)
    if missing:
        raise ExactError(f"subdivision introduced unexpected rays {sorted(missing)}")
    return ConicalSubdivision(fan, heights, config)


def pull_rays(sigma_rays, tau_rays, hyperplane=None) -> ConicalSubdivision:
    """Convenience wrapper taking generator lists instead of cones."""
    sigma = cone_from_rays(sigma_rays)
    tau = cone_from_rays(tau_rays, sigma.ambient)
    return pull(sigma, tau, hyperplane)
