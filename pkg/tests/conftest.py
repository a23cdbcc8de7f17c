from fractions import Fraction
import math

import pytest


def brute_force_F(n, x):
    """Direct sum of squared binomial masses; shares nothing with the package."""
    x = Fraction(x)
    return sum((math.comb(n, k) * x**k * (1 - x) ** (n - k)) ** 2 for k in range(n + 1))


def brute_force_dF(n, x):
    """Exact derivative by the product rule on each binomial mass."""
    x = Fraction(x)
    total = Fraction(0)
    for k in range(n + 1):
        c = math.comb(n, k)
        p = c * x**k * (1 - x) ** (n - k)
        dp = c * ((k * x ** (k - 1) if k else 0) * (1 - x) ** (n - k)
                  - (n - k) * x**k * ((1 - x) ** (n - k - 1) if n - k else 0))
        total += 2 * p * dp
    return total


@pytest.fixture
def small_rationals():
    return [Fraction(0), Fraction(1, 7), Fraction(1, 4), Fraction(1, 3), Fraction(2, 5),
            Fraction(1, 2), Fraction(3, 5), Fraction(5, 6), Fraction(999, 1000), Fraction(1)]
