"""Order-2 Renyi and Tsallis entropies of the binomial law.

R_n = -log F_n (natural log; concavity does not depend on the base) and
T_n = 1 - F_n. Concavity of R_n and log-concavity of T_n reduce to sign conditions:
R_n'' = -(F'' F - F'^2)/F^2 <= 0 and (1 - F) F'' + F'^2 >= 0.
"""
from dataclasses import dataclass
from fractions import Fraction

from . import exact_core
from .grids import as_specs, describe, sample
from .intervals import DEFAULT_PRECISION, iv, iv_precision, to_iv
from .report import Tally


@dataclass(frozen=True)
class EntropyPoint:
    x: Fraction
    renyi2: object  # mpmath interval
    tsallis2: Fraction


def entropies(n, x, precision=None):
    x = Fraction(x)
    f = exact_core.eval_bundle(n, x).f
    with iv_precision(precision or DEFAULT_PRECISION):
        renyi = -iv.log(to_iv(f))
    return EntropyPoint(x, renyi, 1 - f)


def renyi_second_derivative(n, x):
    b = exact_core.eval_bundle(n, x)
    return -(b.f2 * b.f - b.f1 * b.f1) / (b.f * b.f)


def check_renyi_concavity(n_max, x_grid, negate=False):
    """R_n'' <= 0 exactly at grid points, plus exact discrete concavity.

    Discrete concavity on the uniform component of the grid is
    R(x-h) - 2R(x) + R(x+h) <= 0, i.e. F(x-h) F(x+h) >= F(x)^2, which is
    checked in rational arithmetic. ``negate`` checks -R_n instead.
    """
    sign = -1 if negate else 1
    name = "renyi_concavity" + ("_negated" if negate else "")
    pts = sample(x_grid)
    tally = Tally(name, sampler=describe(x_grid))
    for n in range(1, n_max + 1):
        for x in pts:
            d2 = sign * renyi_second_derivative(n, x)
            tally.record(d2 <= 0, n, x, d2, 0, value=d2)

    disc = Tally(name + "_discrete", sampler=describe(x_grid) + " (uniform part)")
    for spec in as_specs(x_grid):
        if spec.kind != "uniform":
            continue
        upts = spec.points()
        for n in range(1, n_max + 1):
            poly = exact_core.build_squared_binomial_poly(n)
            fs = [poly(x) for x in upts]
            for i in range(1, len(fs) - 1):
                # log(F_{i-1} F_{i+1} / F_i^2) >= 0 <=> discrete concavity of R
                lhs, rhs = fs[i] * fs[i], fs[i - 1] * fs[i + 1]
                if negate:
                    lhs, rhs = rhs, lhs
                disc.record(lhs <= rhs, n, upts[i], lhs, rhs)
    tally.links = [disc.report()]
    if not tally.links[0].passed:
        tally.record(False, None, None, tally.links[0].name, None, note="link failed")
    return tally.report()


def tsallis_logconcavity_value(n, x):
    """(1 - F) F'' + F'^2, which is -(T T'' - T'^2); nonnegative iff log-concave at x."""
    b = exact_core.eval_bundle(n, x)
    return (1 - b.f) * b.f2 + b.f1 * b.f1


def check_tsallis_logconcavity(n_max, x_grid):
    """(1 - F) F'' + F'^2 >= 0 on the open interval (0, 1)."""
    pts = [x for x in sample(x_grid) if 0 < x < 1]
    tally = Tally("tsallis_logconcavity", sampler=describe(x_grid) + " restricted to (0,1)")
    for n in range(1, n_max + 1):
        for x in pts:
            v = tsallis_logconcavity_value(n, x)
            tally.record(v >= 0, n, x, 0, v, value=v)
    return tally.report()
