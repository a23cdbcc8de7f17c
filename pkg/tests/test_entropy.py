from fractions import Fraction

from hypothesis import given, settings, strategies as st
import mpmath
import pytest

from icverify.entropy import (
    check_renyi_concavity, check_tsallis_logconcavity, entropies, renyi_second_derivative,
    tsallis_logconcavity_value,
)
from icverify.exact_core import eval_bundle, logconvexity_gap
from icverify.grids import default_x_grid
from icverify.intervals import endpoints

unit = st.builds(lambda b, a: Fraction(a % (b + 1), b), st.integers(1, 10**5), st.integers(0, 10**6))


def test_endpoint():
    pt = entropies(1, 0)
    assert pt.tsallis2 == 0 and endpoints(pt.renyi2) == (0, 0)


def test_n1_half():
    pt = entropies(1, Fraction(1, 2))
    assert pt.tsallis2 == Fraction(1, 2)
    lo, hi = endpoints(pt.renyi2)
    with mpmath.workprec(200):
        ln2 = mpmath.log(2)
        assert mpmath.mpf(lo.numerator) / lo.denominator <= ln2 <= mpmath.mpf(hi.numerator) / hi.denominator


def test_n2_half():
    assert entropies(2, Fraction(1, 2)).tsallis2 == Fraction(5, 8)


def test_renyi_certified():
    pt = entropies(7, Fraction(2, 9), precision=200)
    lo, hi = endpoints(pt.renyi2)
    with mpmath.workprec(300):
        f = eval_bundle(7, Fraction(2, 9)).f
        want = -mpmath.log(mpmath.mpf(f.numerator) / f.denominator)
        assert mpmath.mpf(lo.numerator) / lo.denominator <= want <= mpmath.mpf(hi.numerator) / hi.denominator


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), unit)
def test_symmetry(n, x):
    a, b = entropies(n, x), entropies(n, 1 - x)
    assert a.tsallis2 == b.tsallis2
    assert abs(float(a.renyi2.mid) - float(b.renyi2.mid)) < 1e-15
    assert 0 <= a.tsallis2 < 1 and (a.tsallis2 == 0) == (x in (0, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), unit)
def test_renyi_sign_matches_gap(n, x):
    d2 = renyi_second_derivative(n, x)
    g = logconvexity_gap(n, x)
    assert (d2 <= 0) == (g >= 0)
    assert d2 * eval_bundle(n, x).f ** 2 == -g


def test_renyi_n1():
    x = Fraction(1, 3)
    f = 2 * x * x - 2 * x + 1
    assert renyi_second_derivative(1, x) == -8 * x * (1 - x) / f**2
    assert check_renyi_concavity(1, default_x_grid(uniform=33, randoms=10)).passed


def test_renyi_negated_fails():
    rep = check_renyi_concavity(2, default_x_grid(uniform=17, randoms=5), negate=True)
    assert not rep.passed


@pytest.mark.parametrize("n,x,want", [(1, Fraction(1, 4), Fraction(5, 2)), (1, Fraction(1, 2), 2)])
def test_tsallis_values(n, x, want):
    assert tsallis_logconcavity_value(n, x) == want


def test_tsallis_check_excludes_endpoints():
    rep = check_tsallis_logconcavity(3, default_x_grid(uniform=11, randoms=0))
    assert rep.passed and rep.points_checked == 3 * 9
