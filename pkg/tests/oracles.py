"""Brute-force reference implementations used to cross-check the library."""

from itertools import product

from toricpull.exactq import LinSystem, dot, fm_feasible


def in_newton_oracle(m, gens, tau) -> bool:
    """``m in conv(gens) + tau^dual``: convex weights with ``<m - sum w_i g_i, r> >= 0`` on tau's rays."""
    k = len(gens)
    eqs = (((1,) * k, 1),)
    weak = [(tuple(-int(i == j) for j in range(k)), 0) for i in range(k)]
    weak += [(tuple(dot(g, r) for g in gens), dot(m, r)) for r in tau.rays]
    return fm_feasible(LinSystem(k, eqs, tuple(weak))) is not None


def closure_oracle(gens, tau, box):
    """Brute force: members of the box, then the minimal ones under ``m' <= m`` iff ``m - m' in S_tau``."""
    members = [
        m for m in product(*(range(lo, hi + 1) for lo, hi in box)) if in_newton_oracle(m, gens, tau)
    ]

    def below(a, b):
        return a != b and all(dot(tuple(x - y for x, y in zip(b, a)), r) >= 0 for r in tau.rays)
    return sorted(m for m in members if not any(below(o, m) for o in members))
