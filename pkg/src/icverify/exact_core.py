"""Exact integer polynomial engine for F_n(x) = sum_k (C(n,k) x^k (1-x)^(n-k))^2.

Everything here is exact: coefficients are Python ints, evaluation points
are Fractions, and evaluation clears denominators so that one big-integer
Horner pass replaces hundreds of Fraction normalizations.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .grids import describe, sample
from .report import Tally

N_MAX = 200


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with integer coefficients; ``coeffs[i]`` multiplies x**i."""

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @property
    def degree(self):
        # the zero polynomial reports -1
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        x = Fraction(x)
        if not self.coeffs:
            return Fraction(0)
        num = kernels.homogeneous_eval(list(self.coeffs), x.numerator, x.denominator)
        return Fraction(num, x.denominator ** self.degree)

    def scaled_eval(self, a, b, total_degree):
        """Return b**total_degree * p(a/b) as an int (total_degree >= degree)."""
        if not self.coeffs:
            return 0
        return kernels.homogeneous_eval(list(self.coeffs), a, b) * b ** (total_degree - self.degree)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(u + v for u, v in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-v for v in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            if u:
                for j, v in enumerate(other.coeffs):
                    out[i + j] += u * v
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def compose_one_minus_x(self):
        """p(1 - x), by Horner in the polynomial ring."""
        one_minus_x = IntPolynomial((1, -1))
        acc = IntPolynomial(())
        for c in reversed(self.coeffs):
            acc = acc * one_minus_x + c
        return acc


def _lift(v):
    if isinstance(v, IntPolynomial):
        return v
    return IntPolynomial((int(v),))


X_POLY = IntPolynomial((0, 1))


def _check_n(n, n_max=N_MAX):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an int")
    if n < 1:
        raise DomainError("n must be >= 1 (F_0 is constant)")
    if n > n_max:
        raise DomainError(f"n={n} exceeds the cap n_max={n_max}")


def _check_unit(x):
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x={x} outside [0, 1]")
    return x


def build_squared_binomial_poly(n, n_max=N_MAX):
    """F_n expanded in the monomial basis; degree exactly 2n."""
    _check_n(n, n_max)
    return _cached_poly(n)


@lru_cache(maxsize=None)
def _cached_poly(n):
    return IntPolynomial(tuple(kernels.squared_binomial_coeffs(n)))


def poly_derivative(p):
    return IntPolynomial(tuple(i * c for i, c in enumerate(p.coeffs) if i))


@lru_cache(maxsize=None)
def _derivatives(n):
    f = _cached_poly(n)
    f1 = poly_derivative(f)
    return f, f1, poly_derivative(f1)


@dataclass(frozen=True)
class EvalBundle:
    x: Fraction
    f: Fraction
    f1: Fraction
    f2: Fraction
    X: Fraction
    Xp: Fraction


def _scaled_values(n, x):
    """(b**2n F, b**(2n-1) F', b**(2n-2) F'') as ints for x = a/b."""
    f, f1, f2 = _derivatives(n)
    a, b = x.numerator, x.denominator
    return (f.scaled_eval(a, b, 2 * n),
            f1.scaled_eval(a, b, 2 * n - 1),
            f2.scaled_eval(a, b, 2 * n - 2))


def eval_bundle(n, x, n_max=N_MAX):
    _check_n(n, n_max)
    x = _check_unit(x)
    s0, s1, s2 = _scaled_values(n, x)
    b = x.denominator
    return EvalBundle(
        x=x,
        f=Fraction(s0, b ** (2 * n)),
        f1=Fraction(s1, b ** (2 * n - 1)),
        f2=Fraction(s2, b ** (2 * n - 2)),
        X=x * (1 - x),
        Xp=1 - 2 * x,
    )


def check_poly_symmetry(p, name="symmetry", n=None):
    """Pass iff p(1-x) - p(x) is the zero polynomial."""
    t = Tally(name, sampler="coefficient-level")
    diff = p.compose_one_minus_x() - p
    padded = diff.coeffs + (0,) * (max(p.degree, 0) + 1 - len(diff.coeffs))
    for i, c in enumerate(padded):
        t.record(c == 0, n, i, c, 0, margin=-abs(c), value=c)
    return t.report()


def check_symmetry(n, n_max=N_MAX):
    _check_n(n, n_max)
    return check_poly_symmetry(build_squared_binomial_poly(n, n_max), n=n)


def heun_residual(n, x, n_max=N_MAX):
    """X X' F'' + (1 + 4(n-1) X) F' + 2n X' F at x, exactly."""
    _check_n(n, n_max)
    x = _check_unit(x)
    s0, s1, s2 = _scaled_values(n, x)
    a, b = x.numerator, x.denominator
    # every term carries denominator b**(2n+1)
    num = (a * (b - a) * (b - 2 * a) * s2
           + (b * b + 4 * (n - 1) * a * (b - a)) * s1
           + 2 * n * (b - 2 * a) * s0)
    return Fraction(num, b ** (2 * n + 1))


def logconvexity_gap(n, x, n_max=N_MAX):
    """F''(x) F(x) - F'(x)**2, exactly."""
    _check_n(n, n_max)
    x = _check_unit(x)
    s0, s1, s2 = _scaled_values(n, x)
    return Fraction(s2 * s0 - s1 * s1, x.denominator ** (4 * n - 2))


def heun_polynomial(n, n_max=N_MAX):
    """The left side of the Heun equation as a polynomial in x; zero for every n."""
    _check_n(n, n_max)
    f, f1, f2 = _derivatives(n)
    X = X_POLY * (1 - X_POLY)
    Xp = 1 - 2 * X_POLY
    return X * Xp * f2 + (1 + 4 * (n - 1) * X) * f1 + 2 * n * Xp * f


def check_heun(n_max, x_grid, points=None):
    """Residual of the Heun equation is exactly zero on the grid for n <= n_max."""
    pts = sample(x_grid) if points is None else points
    t = Tally("heun_residual", sampler=describe(x_grid))
    for n in range(1, n_max + 1):
        for x in pts:
            r = heun_residual(n, x)
            t.record(r == 0, n, x, r, 0, margin=-abs(r), value=r)
    return t.report()


def check_gap(n_max, x_grid, points=None):
    """F'' F - F'^2 >= 0 exactly on the grid for n <= n_max."""
    pts = sample(x_grid) if points is None else points
    t = Tally("logconvexity_gap", sampler=describe(x_grid))
    for n in range(1, n_max + 1):
        for x in pts:
            g = logconvexity_gap(n, x)
            t.record(g >= 0, n, x, 0, g, value=g)
    return t.report()
