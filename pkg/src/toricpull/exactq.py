"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples.  Nothing in here
ever touches floating point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rat = Fraction
RatVec = tuple  # tuple[Fraction, ...]
IntVec = tuple  # tuple[int, ...]


class ExactError(ValueError):
    """Raised on malformed exact-arithmetic input."""


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def vec(xs: Iterable) -> RatVec:
    return tuple(as_rat(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ExactError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> RatVec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> RatVec:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> RatVec:
    return tuple(c * x for x in a)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def format_rat(x) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise ExactError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactError(f"not a rational: {s!r}") from exc
    raise ExactError(f"not a rational: {s!r}")


def clear_denominators(v: Sequence) -> tuple:
    """Return ``(k*v, k)`` with ``k`` the least positive integer making ``k*v`` integral."""
    k = reduce(lcm, (as_rat(x).denominator for x in v), 1)
    return tuple(int(as_rat(x) * k) for x in v), k


def primitive(v: Sequence) -> IntVec:
    """The integer vector with coprime entries on the ray spanned by ``v``."""
    ints, _ = clear_denominators(v)
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ExactError("zero has no direction")
    return tuple(x // g for x in ints)


def primitive_row(v: Sequence) -> IntVec:
    """Like :func:`primitive` but also accepts the zero vector."""
    if is_zero(v):
        return tuple(0 for _ in v)
    return primitive(v)


# ---------------------------------------------------------------------------
# Gaussian elimination


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form with first-nonzero pivoting in column order.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    m = [list(vec(r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def kernel(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    if not rows:
        if ncols is None:
            raise ExactError("kernel of an empty matrix needs ncols")
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class LinearSolution:
    """One particular solution of ``A x = b`` plus a kernel basis of ``A``."""

    point: RatVec
    kernel: tuple


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[LinearSolution]:
    """Solve ``A x = b`` exactly; ``None`` when the system is inconsistent.

    Free variables are set to zero in the particular solution.
    """
    if len(A) != len(b):
        raise ExactError(f"dimension mismatch: {len(A)} rows but {len(b)} right-hand sides")
    if not A:
        raise ExactError("empty system")
    n = len(A[0])
    if any(len(r) != n for r in A):
        raise ExactError("ragged matrix")
    aug = [tuple(vec(r)) + (as_rat(bi),) for r, bi in zip(A, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return LinearSolution(tuple(x), tuple(kernel([r[:n] for r in red], n) if red else kernel([], n)))


# ---------------------------------------------------------------------------
# Fourier-Motzkin


@dataclass(frozen=True)
class LinSystem:
    """Equalities ``<a,x> = b``, weak ``<a,x> <= b`` and strict ``<a,x> < b``."""

    num_vars: int
    equalities: tuple = ()
    weak: tuple = ()
    strict: tuple = ()

    def __post_init__(self):
        for group in (self.equalities, self.weak, self.strict):
            for a, _ in group:
                if len(a) != self.num_vars:
                    raise ExactError(
                        f"functional of length {len(a)} in a system of {self.num_vars} variables"
                    )

    def satisfied_by(self, x: Sequence) -> bool:
        return (
            all(dot(a, x) == b for a, b in self.equalities)
            and all(dot(a, x) <= b for a, b in self.weak)
            and all(dot(a, x) < b for a, b in self.strict)
        )


@dataclass
class _Row:
    coeffs: list
    rhs: Fraction
    strict: bool
    history: frozenset = field(default_factory=frozenset)


def _key(coeffs: Sequence) -> tuple:
    lead = next(abs(c) for c in coeffs if c != 0)
    return tuple(c / lead for c in coeffs), lead


def _dominates(a: tuple, b: tuple) -> bool:
    """``a`` is at least as tight as ``b`` and its history is contained in ``b``'s."""
    (ra, ra_strict, ha), (rb, rb_strict, hb) = a, b
    tighter = ra < rb or (ra == rb and (ra_strict or not rb_strict))
    return tighter and ha <= hb


def _dedupe(rows: list) -> list:
    # A parallel constraint may only be dropped when another one is at least as
    # tight with a smaller history; otherwise the Chernikov test below could
    # discard combinations nothing else replaces.
    groups = {}
    for r in rows:
        k, lead = _key(r.coeffs)
        groups.setdefault(k, []).append(((r.rhs / lead, r.strict, r.history), r))
    out = []
    for members in groups.values():
        kept = []
        for i, (sig, r) in enumerate(members):
            beaten = any(
                _dominates(other, sig) and (not _dominates(sig, other) or j < i)
                for j, (other, _) in enumerate(members)
                if j != i
            )
            if not beaten:
                kept.append(r)
        out.extend(kept)
    return out


def _trivially_violated(r: _Row) -> bool:
    return r.rhs < 0 or (r.strict and r.rhs == 0)


def fm_feasible(sys: LinSystem, order: Optional[Sequence[int]] = None) -> Optional[RatVec]:
    """Find a point of the system or return ``None`` if there is none.

    Equalities are substituted out first (pivot on the first nonzero
    coefficient), then the remaining variables are eliminated one at a time in
    ``order`` (index order by default).  Back-substitution chooses the
    midpoint of a bounded interval, ``lower + 1`` / ``upper - 1`` for a
    half-line and ``0`` for a free variable, so the result is deterministic.
    """
    n = sys.num_vars
    # equality substitution: x_p = (rhs - sum_{j != p} a_j x_j) / a_p
    subs = []
    eqs = [(list(vec(a)), as_rat(b)) for a, b in sys.equalities]
    rows = [_Row(list(vec(a)), as_rat(b), False, frozenset([i])) for i, (a, b) in enumerate(sys.weak)]
    off = len(rows)
    rows += [_Row(list(vec(a)), as_rat(b), True, frozenset([off + i])) for i, (a, b) in enumerate(sys.strict)]

    while eqs:
        a, b = eqs.pop(0)
        p = next((j for j, c in enumerate(a) if c != 0), None)
        if p is None:
            if b != 0:
                return None
            continue
        subs.append((p, a, b))
        ap = a[p]
        new_eqs = []
        for c, d in eqs:
            if c[p] != 0:
                f = c[p] / ap
                c = [ci - f * ai for ci, ai in zip(c, a)]
                d = d - f * b
            new_eqs.append((c, d))
        eqs = new_eqs
        for r in rows:
            if r.coeffs[p] != 0:
                f = r.coeffs[p] / ap
                r.coeffs = [ci - f * ai for ci, ai in zip(r.coeffs, a)]
                r.rhs = r.rhs - f * b

    pivots = {p for p, _, _ in subs}
    if order is None:
        order = range(n)
    order = [j for j in order if j not in pivots]
    if sorted(order) != sorted(set(range(n)) - pivots):
        raise ExactError("order must be a permutation of the variable indices")

    def settle(rs):
        live = []
        for r in rs:
            if all(c == 0 for c in r.coeffs):
                if _trivially_violated(r):
                    return None
            else:
                live.append(r)
        return _dedupe(live)

    current = settle(rows)
    if current is None:
        return None
    stages = []
    for step, j in enumerate(order):
        stages.append((j, current))
        upper = [r for r in current if r.coeffs[j] > 0]
        lower = [r for r in current if r.coeffs[j] < 0]
        nxt = [r for r in current if r.coeffs[j] == 0]
        for u in upper:
            for lo in lower:
                fu, fl = u.coeffs[j], -lo.coeffs[j]
                coeffs = [cu / fu + cl / fl for cu, cl in zip(u.coeffs, lo.coeffs)]
                coeffs[j] = Fraction(0)
                strict = u.strict or lo.strict
                hist = u.history | lo.history
                # Chernikov: a weak combination of more than step+2 originals is redundant
                if not strict and len(hist) > step + 2:
                    continue
                nxt.append(_Row(coeffs, u.rhs / fu + lo.rhs / fl, strict, hist))
        current = settle(nxt)
        if current is None:
            return None

    x = [Fraction(0)] * n
    for j, rs in reversed(stages):
        lo_b, hi_b = None, None
        for r in rs:
            c = r.coeffs[j]
            if c == 0:
                continue
            rest = r.rhs - sum((ci * xi for i, (ci, xi) in enumerate(zip(r.coeffs, x)) if i != j), Fraction(0))
            bound = rest / c
            if c > 0:
                hi_b = bound if hi_b is None else min(hi_b, bound)
            else:
                lo_b = bound if lo_b is None else max(lo_b, bound)
        if lo_b is not None and hi_b is not None:
            x[j] = (lo_b + hi_b) / 2
        elif lo_b is not None:
            x[j] = lo_b + 1
        elif hi_b is not None:
            x[j] = hi_b - 1
        else:
            x[j] = Fraction(0)
    for p, a, b in reversed(subs):
        x[p] = (b - sum((ai * xi for i, (ai, xi) in enumerate(zip(a, x)) if i != p), Fraction(0))) / a[p]

    x = tuple(x)
    if not sys.satisfied_by(x):
        raise AssertionError("Fourier-Motzkin back-substitution produced an infeasible point")
    return x
