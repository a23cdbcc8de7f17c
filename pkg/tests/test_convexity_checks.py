from fractions import Fraction

from hypothesis import given, settings, strategies as st
import mpmath
import pytest

from icverify.convexity_checks import (
    assemble_logconvexity_verdict, check_eq3, check_sandwich, eq3_value, quadratic_roots,
    sandwich_quadratic,
)
from icverify.exact_core import DomainError, eval_bundle, logconvexity_gap
from icverify.grids import GridSpec, default_x_grid
from icverify.intervals import endpoints

open_half = st.builds(lambda b, a: Fraction(a % (b - 1) + 1, 2 * b),
                      st.integers(2, 10**5), st.integers(0, 10**6))


def _contains(interval, value):
    lo, hi = endpoints(interval)
    return (mpmath.mpf(lo.numerator) / lo.denominator <= value
            <= mpmath.mpf(hi.numerator) / hi.denominator)


class TestQuadratic:
    def test_n1_quarter_coefficients(self):
        q = sandwich_quadratic(1, Fraction(1, 4))
        assert (q.a, q.b, q.c) == (Fraction(3, 32), 1, 1)

    def test_n1_quarter_roots(self):
        z1, z2 = quadratic_roots(1, Fraction(1, 4), precision=200)
        with mpmath.workprec(300):
            r = mpmath.sqrt(mpmath.mpf(5) / 8)
            assert _contains(z1, mpmath.mpf(16) / 3 * (-1 - r))
            assert _contains(z2, mpmath.mpf(16) / 3 * (-1 + r))
        assert abs(float(z1.mid) + 9.5497) < 1e-4 and abs(float(z2.mid) + 1.1170) < 1e-4

    def test_degenerate_at_zero(self):
        assert quadratic_roots(1, 0) == (-2, -2)
        assert quadratic_roots(6, 0) == (-12, -12)

    def test_discriminant_formula_at_quarter_X(self):
        # X = 1/4 is x = 1/2, where the formula gives 1 - 2 + 2 = 1
        q = sandwich_quadratic(1, Fraction(1, 2))
        assert q.discriminant == 1

    @pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(2, 3)])
    def test_rejects(self, x):
        with pytest.raises(DomainError):
            quadratic_roots(2, x)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 200), open_half)
    def test_discriminant_and_signs(self, n, x):
        q = sandwich_quadratic(n, x)
        X = x * (1 - x)
        assert q.discriminant == 1 - 8 * X + 16 * (n * n + 1) * X * X
        assert q.discriminant > 0
        assert q.a > 0 and q.b >= 1 and q.c > 0  # so -b/a < 0 and c/a > 0

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 40), open_half)
    def test_roots_negative_and_ordered(self, n, x):
        z1, z2 = quadratic_roots(n, x)
        assert endpoints(z1)[1] < endpoints(z2)[0] and endpoints(z2)[1] < 0


class TestSandwich:
    def test_n1_quarter(self):
        rep = check_sandwich(1, GridSpec("explicit", values=(Fraction(1, 4),)))
        assert rep.passed and rep.extremal_margin.value == Fraction(-8, 5)

    def test_default_grid(self):
        rep = check_sandwich(30, default_x_grid())
        assert rep.passed

    def test_shifted_ratio_fails(self):
        rep = check_sandwich(2, default_x_grid(uniform=17, randoms=5), ratio_shift=10)
        assert not rep.passed and rep.violations == rep.points_checked


class TestQuadraticSign:
    def test_zero_endpoint(self):
        assert eq3_value(1, 0) == 0
        assert all(eq3_value(n, 0) == 0 for n in range(1, 31))

    def test_n1_quarter(self):
        assert eq3_value(1, Fraction(1, 4)) == Fraction(-9, 40)

    def test_n4_third(self):
        # frozen from sympy on the brute-force polynomial
        assert eq3_value(4, Fraction(1, 3)) == Fraction(-5840048, 37811043)

    def test_check(self):
        rep = check_eq3(30, default_x_grid())
        assert rep.passed and rep.extremal_margin.margin == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 40), open_half)
    def test_equals_F_times_quadratic(self, n, x):
        b = eval_bundle(n, x)
        q = sandwich_quadratic(n, x)
        v = eq3_value(n, x)
        assert v == b.f * q(b.f1 / b.f)
        assert v <= 0
        if v == 0:
            z1, z2 = quadratic_roots(n, x, precision=256)
            r = mpmath.mpf((b.f1 / b.f).numerator) / (b.f1 / b.f).denominator
            assert _contains(z1, r) or _contains(z2, r)


class TestVerdict:
    def test_n1(self):
        grid = default_x_grid(uniform=33, randoms=10)
        rep = assemble_logconvexity_verdict(1, grid, uniform_count=33)
        assert rep.passed
        assert [link.name for link in rep.links] == [
            "eq3_sign", "heun_residual", "logconvexity_gap", "gap_symmetry", "log_second_differences"]
        for x in (Fraction(1, 4), Fraction(2, 3), Fraction(17, 19)):
            assert logconvexity_gap(1, x) == 8 * x * (1 - x)

    def test_localizes_failure(self, monkeypatch):
        from icverify import convexity_checks, exact_core
        real = exact_core.heun_residual

        def broken(n, x):
            return real(n, x) + (1 if (n, x) == (2, Fraction(3, 8)) else 0)

        monkeypatch.setattr(convexity_checks.exact_core, "heun_residual", broken)
        grid = GridSpec("uniform", 0, 1, 9)
        rep = assemble_logconvexity_verdict(3, grid, uniform_count=9)
        assert not rep.passed
        assert [(w.n, w.x) for w in rep.witnesses] == [(2, Fraction(3, 8))]
        failed = [link.name for link in rep.links if not link.passed]
        assert failed == ["heun_residual"]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 60), open_half)
    def test_symmetry_reduction(self, n, x):
        assert logconvexity_gap(n, 1 - x) == logconvexity_gap(n, x)
