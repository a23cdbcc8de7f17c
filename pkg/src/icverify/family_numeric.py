"""Index of coincidence for the binomial (c=-1), Poisson (c=0) and negative
binomial (c=1) laws, with certified truncation and floating-point scans.

Floating-point sums are accumulated in the log domain; squared masses
underflow long before the sums they belong to do.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import math

import mpmath

from . import exact_core, kernels
from .exact_core import DomainError
from .grids import GridSpec, as_specs, describe, sample
from .report import Tally

EPS = 2.0 ** -52
DEFAULT_X_MAX = Fraction(10)
DEFAULT_TRUNC_TOL = 1e-13
MAX_TERMS = 10**6


class TruncationError(ArithmeticError):
    """The tail of an infinite sum could not be certified within the term cap."""


def _real(v):
    if isinstance(v, (Fraction, int)):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return v


@dataclass(frozen=True)
class FamilyConfig:
    c: int
    n: object
    x_max: Fraction = DEFAULT_X_MAX
    trunc_tol: float = DEFAULT_TRUNC_TOL
    max_terms: int = MAX_TERMS

    def __post_init__(self):
        object.__setattr__(self, "n", _real(self.n))
        object.__setattr__(self, "x_max", Fraction(self.x_max))
        if self.c not in (-1, 0, 1):
            raise DomainError(f"c={self.c} not in {{-1, 0, 1}}")
        if self.c == -1 and (not isinstance(self.n, int) or isinstance(self.n, bool)):
            if isinstance(self.n, Fraction) and self.n.denominator == 1:
                object.__setattr__(self, "n", int(self.n))
            else:
                raise DomainError("the binomial case needs an integer n")
        if not self.n > 0:
            raise DomainError("n must be positive")
        if not 0 < self.trunc_tol <= 1e-6:
            raise DomainError("trunc_tol must lie in (0, 1e-6]")

    @property
    def domain(self):
        return (Fraction(0), Fraction(1)) if self.c == -1 else (Fraction(0), self.x_max)

    def check_x(self, x):
        lo, hi = self.domain
        if not lo <= _real(x) <= hi:
            raise DomainError(f"x={x} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class ICValue:
    value: float
    terms_used: int
    tail_bound: float
    exact: Fraction | None = None
    rel_error: float = field(default=0.0, compare=False)


def pmf(cfg, k, x):
    """Probability of k; exact Fraction for the binomial law at rational x."""
    x = _real(x)
    cfg.check_x(x)
    if k < 0:
        raise DomainError("k must be >= 0")
    n = cfg.n
    if cfg.c == -1:
        if k > n:
            raise DomainError(f"k={k} > n={n}")
        if isinstance(x, (Fraction, int)):
            x = Fraction(x)
            return math.comb(n, k) * x**k * (1 - x) ** (n - k)
        return math.comb(n, k) * x**k * (1.0 - x) ** (n - k)
    x, n = float(x), float(n)
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    if cfg.c == 0:
        lam = n * x
        return math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1.0))
    return math.exp(math.lgamma(n + k) - math.lgamma(n) - math.lgamma(k + 1.0)
                    + k * (math.log(x) - math.log1p(x)) - n * math.log1p(x))


def log_index_of_coincidence(cfg, x):
    """(log S, relative error bound, terms used, tail bound relative).

    The error bound covers truncation plus rounding of the log-domain
    accumulation: tail + 2^-52 (4 M + 2 K + 8), with M the largest log
    magnitude rounded along the way and K the number of terms.
    """
    x = _real(x)
    cfg.check_x(x)
    if cfg.c == -1:
        lv, terms, mag = kernels.log_ic_binomial(cfg.n, float(x))
        tail = 0.0
    else:
        lv, terms, tail, mag, ok = kernels.log_ic_series(
            cfg.c, float(cfg.n), float(x), cfg.trunc_tol, cfg.max_terms)
        if not ok:
            raise TruncationError(f"no certified tail for c={cfg.c}, n={cfg.n}, x={x} "
                                  f"within {cfg.max_terms} terms")
    return lv, tail + EPS * (4 * mag + 2 * terms + 8), terms, tail


def index_of_coincidence(cfg, x):
    x = _real(x)
    lv, err, terms, tail = log_index_of_coincidence(cfg, x)
    value = math.exp(lv)
    exact = None
    if cfg.c == -1 and isinstance(x, (Fraction, int)):
        exact = exact_core.build_squared_binomial_poly(cfg.n, max(cfg.n, exact_core.N_MAX))(x)
    return ICValue(value, terms, tail * value, exact, err)


def poisson_ic_oracle(n, x, precision=113):
    """exp(-2nx) I_0(2nx) = exp(-2nx) sum_k (nx)^(2k)/(k!)^2, series-summed in mpmath."""
    x = _real(x)
    if x < 0:
        raise DomainError("x must be >= 0")
    with mpmath.workprec(precision):
        lam = _mp(_real(n)) * _mp(x)
        lam2 = lam * lam
        term = mpmath.mpf(1)
        total = mpmath.mpf(0)
        eps = mpmath.mpf(2) ** (-precision)
        k = 0
        while True:
            total += term
            k += 1
            ratio = lam2 / (k * k)
            term = term * ratio
            # ratios decrease, so once below 1/2 the tail is under 2*term
            if ratio < 0.5 and 2 * term < eps * total:
                break
        return +(mpmath.exp(-2 * lam) * total)


def _mp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def _float_grid(grid):
    specs = as_specs(grid)
    if len(specs) != 1 or specs[0].kind != "uniform":
        raise DomainError("second-difference scans need a single uniform grid")
    return specs[0], sample(grid)


def scan_logconvexity_numeric(cfg, x_grid):
    """Second differences of log S on a uniform grid, all >= -tolerance.

    Point tolerance: w_{i-1} + 2 w_i + w_{i+1} with
    w_j = err_j + |dL/dx|_j |x_j - fl(x_j)|, err_j from log_index_of_coincidence
    and the slope taken from neighbouring differences. Evidence, not proof.
    """
    spec, pts = _float_grid(x_grid)
    lo, hi = cfg.domain
    if pts[0] < lo or pts[-1] > hi:
        raise DomainError("grid leaves the parameter domain")
    xs = [float(x) for x in pts]
    logs, errs = [], []
    for x in xs:
        lv, err, _, _ = log_index_of_coincidence(cfg, x)
        logs.append(lv)
        errs.append(err)
    m = len(xs)
    h = float(spec.hi - spec.lo) / (m - 1)
    w = []
    for j in range(m):
        a, b = max(j - 1, 0), min(j + 1, m - 1)
        slope = abs(logs[b] - logs[a]) / ((b - a) * h)
        w.append(errs[j] + slope * abs(float(Fraction(xs[j]) - pts[j])))
    tally = Tally(f"scan_c{cfg.c}_n{cfg.n}", sampler=describe(x_grid), note="numeric scan")
    for i in range(1, m - 1):
        d2 = logs[i - 1] - 2 * logs[i] + logs[i + 1]
        tol = w[i - 1] + 2 * w[i] + w[i + 1]
        tally.record(d2 >= -tol, cfg.n, pts[i], -d2, tol, margin=d2 + tol, value=d2)
    return tally.report()


def check_poisson_oracle(n, x_grid, rel_tol=1e-12, trunc_tol=DEFAULT_TRUNC_TOL):
    """Direct truncated Poisson sums against the Bessel-series oracle."""
    cfg = FamilyConfig(0, n, x_max=max(sample(x_grid)[-1], DEFAULT_X_MAX), trunc_tol=trunc_tol)
    tally = Tally(f"poisson_oracle_n{cfg.n}", sampler=describe(x_grid))
    for x in sample(x_grid):
        direct = index_of_coincidence(cfg, x).value
        oracle = poisson_ic_oracle(cfg.n, x)
        rel = float(abs(direct - oracle) / oracle)
        tally.record(rel < rel_tol, cfg.n, x, rel, rel_tol, value=direct)
    return tally.report()


def check_normalization(cfg, x_grid):
    """sum_k pmf = 1 exactly (binomial) or within the truncation tolerance."""
    tally = Tally(f"normalization_c{cfg.c}_n{cfg.n}", sampler=describe(x_grid))
    for x in sample(x_grid):
        if cfg.c == -1:
            total = sum(pmf(cfg, k, x) for k in range(cfg.n + 1))
            tally.record(total == 1, cfg.n, x, total, 1, margin=-abs(total - 1), value=total)
            continue
        terms = []
        k = 0
        while True:
            p = pmf(cfg, k, x)
            terms.append(p)
            k += 1
            if k > cfg.max_terms:
                raise TruncationError("normalization sum did not settle")
            if p == 0.0 and float(x) == 0.0:
                break
            mean = float(cfg.n) * float(x)
            if k > mean and p < cfg.trunc_tol * 1e-3:
                break
        total = math.fsum(terms)
        dev = abs(total - 1.0)
        tol = cfg.trunc_tol + 64 * k * EPS
        tally.record(dev <= tol, cfg.n, x, dev, tol, value=total)
    return tally.report()
