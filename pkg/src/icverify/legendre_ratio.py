"""Legendre polynomials at t >= 1 and the ratio u_n = P_n'/P_n.

The ratio is produced by the forward recurrence
u_{n+1} = (n+1) (n+1 + t u_n) / ((n+1) t + (t^2-1) u_n), u_1 = 1/t,
and compared against the upper bound
B_n(t) = 2n^2 / (sqrt(4n^2 (t^2-1) + s^2) + s),  s = t - sqrt(t^2-1).
Comparisons against B_n go through outward-rounded intervals.
"""
from dataclasses import dataclass
from fractions import Fraction
import math

from . import exact_core
from .exact_core import DomainError
from .grids import describe, sample
from .intervals import DEFAULT_PRECISION, certify_le, iv, iv_precision, to_iv
from .report import Tally


@dataclass(frozen=True)
class TPoint:
    t: Fraction
    s: Fraction | None
    sqrt_t2m1: Fraction | None


@dataclass(frozen=True)
class RatioValue:
    u: Fraction
    n: int
    t: Fraction


def exact_sqrt(q):
    """Square root of a nonnegative rational if it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    rp, rq = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rp * rp == q.numerator and rq * rq == q.denominator:
        return Fraction(rp, rq)
    return None


def t_point(t):
    t = Fraction(t)
    if t < 1:
        raise DomainError(f"t={t} < 1")
    r = exact_sqrt(t * t - 1)
    return TPoint(t, None if r is None else t - r, r)


def legendre_eval(n, t):
    """P_n(t) by the three-term recursion (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}."""
    if n < 0:
        raise DomainError("n must be >= 0")
    t = Fraction(t)
    p_prev, p = Fraction(1), t
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
    return p


def legendre_with_derivative(n, t):
    """(P_n(t), P_n'(t)) using P'_{k+1} = P'_{k-1} + (2k+1) P_k.

    Independent of the u-recurrence; serves as its oracle.
    """
    t = Fraction(t)
    p = [Fraction(1), t]
    d = [Fraction(0), Fraction(1)]
    for k in range(1, n):
        p.append(((2 * k + 1) * t * p[k] - k * p[k - 1]) / (k + 1))
        d.append(d[k - 1] + (2 * k + 1) * p[k])
    return p[n], d[n]


def ratio_sequence(n, t):
    """[u_1(t), ..., u_n(t)] from the forward recurrence."""
    t = Fraction(t)
    if t < 1:
        raise DomainError(f"t={t} < 1; the recurrence is used on t >= 1 only")
    out = [1 / t]
    t2m1 = t * t - 1
    for k in range(1, n):
        u = out[-1]
        out.append((k + 1) * (k + 1 + t * u) / ((k + 1) * t + t2m1 * u))
    return out


def ratio_u(n, t):
    if n < 1:
        raise DomainError("n must be >= 1")
    t = Fraction(t)
    return RatioValue(ratio_sequence(n, t)[-1], n, t)


def _bound_iv(n, t):
    """B_n(t) as an interval at the active precision (t exact rational)."""
    ti = to_iv(t)
    t2m1 = to_iv(t * t - 1)
    r = iv.sqrt(t2m1)
    s = ti - r
    return 2 * n * n / (iv.sqrt(4 * n * n * t2m1 + s * s) + s)


def ratio_bound(n, t, precision=None):
    """Enclosure of B_n(t) as an ``mpmath.iv`` interval."""
    t = Fraction(t)
    if t < 1:
        raise DomainError(f"t={t} < 1")
    with iv_precision(precision or DEFAULT_PRECISION):
        return _bound_iv(n, t)


def check_ratio_bound(n_max, t_grid, precision=None, u_transform=None):
    """0 <= u_n(t) <= B_n(t) for all n <= n_max and t in the grid.

    ``u_transform`` perturbs u before comparison (negative controls).
    """
    tally = Tally("ratio_bound", sampler=describe(t_grid))
    for t in sample(t_grid):
        if t < 1:
            raise DomainError(f"grid point t={t} < 1")
        for n, u in enumerate(ratio_sequence(n_max, t), start=1):
            if u_transform is not None:
                u = u_transform(u)
            if u < 0:
                tally.record(False, n, t, 0, u, note="u < 0")
                continue
            d = certify_le(lambda: (u, _bound_iv(n, t)), precision)
            ok = d.verdict is True
            rhs = None if ok else float(ratio_bound(n, t, d.precision).mid)
            tally.record(ok, n, t, u, rhs, margin=d.slack,
                         note="" if d.verdict is not None else "undecided", value=u)
    return tally.report()


def _middle_iv(n, t):
    """Middle expression of the induction chain as an interval."""
    ti = to_iv(t)
    t2m1 = to_iv(t * t - 1)
    r = iv.sqrt(t2m1)
    s = ti - r
    br = iv.sqrt(4 * n * n * t2m1 + s * s) + s
    num = (n + 1) * br + 2 * n * n * ti
    den = (n + 1) * ti * br + 2 * n * n * t2m1
    return (n + 1) * num / den


def induction_sides(n, t):
    """Exact (middle, B_{n+1}) when sqrt(t^2-1) is rational (e.g. t = 1)."""
    tp = t_point(t)
    if tp.sqrt_t2m1 is None:
        return None
    t, s = tp.t, tp.s
    root = exact_sqrt(4 * n * n * (t * t - 1) + s * s)
    root1 = exact_sqrt(4 * (n + 1) ** 2 * (t * t - 1) + s * s)
    if root is None or root1 is None:
        return None
    br = root + s
    mid = (n + 1) * ((n + 1) * br + 2 * n * n * t) / ((n + 1) * t * br + 2 * n * n * (t * t - 1))
    return mid, 2 * (n + 1) ** 2 / (root1 + s)


def check_induction_step(n_max, t_grid, precision=None, rhs_offset=1):
    """Middle expression <= B_{n+offset}(t) for n = 1..n_max (offset 1 is the claim).

    Points whose square roots are rational (t = 1 in particular) are decided
    in exact arithmetic; all others by certified interval comparison.
    """
    tally = Tally("induction_step", sampler=describe(t_grid))
    for t in sample(t_grid):
        if t < 1:
            raise DomainError(f"grid point t={t} < 1")
        for n in range(1, n_max + 1):
            exact = induction_sides(n, t) if rhs_offset == 1 else None
            if exact is not None:
                lhs, rhs = exact
                tally.record(lhs <= rhs, n, t, lhs, rhs)
                continue
            m = n + rhs_offset
            d = certify_le(lambda: (_middle_iv(n, t), _bound_iv(m, t)), precision)
            ok = d.verdict is True
            lhs = rhs = None
            if not ok:
                with iv_precision(d.precision):
                    lhs, rhs = float(_middle_iv(n, t).mid), float(_bound_iv(m, t).mid)
            tally.record(ok, n, t, lhs, rhs, margin=d.slack,
                         note="" if d.verdict is not None else "undecided")
    return tally.report()


def x_to_t(x):
    """t = (2x^2 - 2x + 1)/(1 - 2x) with sqrt(t^2-1) = 2X/X' and s = X' in closed form."""
    x = Fraction(x)
    if not 0 <= x < Fraction(1, 2):
        raise DomainError(f"x={x} outside [0, 1/2)")
    X, Xp = x * (1 - x), 1 - 2 * x
    return TPoint((2 * x * x - 2 * x + 1) / Xp, Xp, 2 * X / Xp)


def log_derivative_via_legendre(n, x):
    """F_n'(x)/F_n(x) from u_n(t); at x = 0 the limit value -2n is returned."""
    x = Fraction(x)
    tp = x_to_t(x)
    if x == 0:
        return Fraction(-2 * n)
    r, s = tp.sqrt_t2m1, tp.s
    return 2 * r / s * (ratio_u(n, tp.t).u - n / r)


def legendre_cross_identity(n, x):
    """F_n(x) == (1-2x)^n P_n(t(x)) exactly."""
    x = Fraction(x)
    t = Tally("legendre_cross_identity", sampler=f"explicit:{x}")
    lhs = exact_core.eval_bundle(n, x).f
    rhs = (1 - 2 * x) ** n * legendre_eval(n, x_to_t(x).t)
    t.record(lhs == rhs, n, x, lhs, rhs, margin=-abs(lhs - rhs), value=lhs)
    return t.report()


def check_cross_identity(n_max, x_grid):
    pts = [x for x in sample(x_grid) if x < Fraction(1, 2)]
    tally = Tally("legendre_cross_identity", sampler=describe(x_grid) + " restricted to [0,1/2)")
    for x in pts:
        tp = x_to_t(x)
        p = [Fraction(1), tp.t]
        for n in range(1, n_max + 1):
            if n >= 2:
                k = n - 1
                p.append(((2 * k + 1) * tp.t * p[k] - k * p[k - 1]) / (k + 1))
            lhs = exact_core.eval_bundle(n, x).f
            rhs = (1 - 2 * x) ** n * p[n]
            tally.record(lhs == rhs, n, x, lhs, rhs, margin=-abs(lhs - rhs), value=lhs)
    return tally.report()


def check_log_derivative(n_max, x_grid):
    """Legendre-side log-derivative equals exact F'/F on [0, 1/2)."""
    pts = [x for x in sample(x_grid) if x < Fraction(1, 2)]
    tally = Tally("log_derivative_identity", sampler=describe(x_grid) + " restricted to [0,1/2)")
    for x in pts:
        tp = x_to_t(x)
        us = ratio_sequence(n_max, tp.t)
        for n in range(1, n_max + 1):
            b = exact_core.eval_bundle(n, x)
            exact = b.f1 / b.f
            if x == 0:
                via = Fraction(-2 * n)
            else:
                r, s = tp.sqrt_t2m1, tp.s
                via = 2 * r / s * (us[n - 1] - n / r)
            tally.record(via == exact, n, x, via, exact, margin=-abs(via - exact), value=via)
    return tally.report()
