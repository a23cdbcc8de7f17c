"""Pure-Python reference kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature. Integer kernels agree exactly; float kernels agree to a few ulps
(the C ``lgamma`` differs from CPython's). ``icverify.kernels`` picks one at
import.
"""
import math

NAME = "python"


def squared_binomial_coeffs(n):
    """Monomial coefficients of sum_k C(n,k)^2 x^(2k) (1-x)^(2(n-k))."""
    m = 2 * n
    coeffs = [0] * (m + 1)
    # rows[j] = C(2(n-k), j) for the current k
    for k in range(n + 1):
        w = math.comb(n, k) ** 2
        e = 2 * (n - k)
        c = 1
        for j in range(e + 1):
            if j & 1:
                coeffs[2 * k + j] -= w * c
            else:
                coeffs[2 * k + j] += w * c
            c = c * (e - j) // (j + 1)
    return coeffs


def homogeneous_eval(coeffs, a, b):
    """Return sum_i coeffs[i] * a**i * b**(d-i) with d = len(coeffs) - 1.

    This is b**d * p(a/b) as an exact integer.
    """
    d = len(coeffs) - 1
    if d < 0:
        return 0
    acc = coeffs[d]
    bp = 1
    for i in range(d - 1, -1, -1):
        bp *= b
        acc = acc * a + coeffs[i] * bp
    return acc


def _lse_push(m, s, v):
    if v == -math.inf:
        return m, s
    if v <= m:
        return m, s + math.exp(v - m)
    return v, s * math.exp(m - v) + 1.0


def log_ic_binomial(n, x):
    """log of sum_k p_k^2 for the binomial(n, x) law, log-sum-exp accumulated.

    Returns (log_value, terms_used, log_magnitude) where log_magnitude bounds
    the size of the logs that were rounded (used for error budgets).
    """
    if x == 0.0 or x == 1.0:
        return 0.0, 1, 0.0
    lx = math.log(x)
    l1x = math.log1p(-x)
    m = -math.inf
    s = 0.0
    mag = 0.0
    for k in range(n + 1):
        c = float(math.comb(n, k))
        lin = c * math.pow(x, k) * math.pow(1.0 - x, n - k)
        if lin > 1e-290:
            lp = math.log(lin)
            mg = abs(lp) + 4.0
        else:
            lc = math.log(c)
            lp = lc + k * lx + (n - k) * l1x
            mg = lc + abs(k * lx) + abs((n - k) * l1x)
        m, s = _lse_push(m, s, 2.0 * lp)
        if mg > mag:
            mag = mg
    return m + math.log(s), n + 1, mag


def log_ic_series(kind, n, x, trunc_tol, max_terms):
    """Truncated sum_k p_k^2 for Poisson (kind 0) or negative binomial (kind 1).

    Stops once the certified geometric tail bound falls below
    trunc_tol * partial_sum. Returns
    (log_value, terms_used, tail_bound_relative, log_magnitude, converged).
    """
    if x == 0.0:
        return 0.0, 1, 0.0, 0.0, True
    if kind == 0:
        lam = n * x
        llam = math.log(lam)
        rho2 = 0.0
    else:
        lq = math.log(x) - math.log1p(x)
        l0 = -n * math.log1p(x)
        lgn = math.lgamma(n)
        rho = x / (1.0 + x)
        rho2 = rho * rho
    m = -math.inf
    s = 0.0
    mag = 0.0
    for k in range(max_terms):
        if kind == 0:
            a1 = k * llam
            a2 = math.lgamma(k + 1.0)
            lp = -lam + a1 - a2
            mg = lam + abs(a1) + a2
            r = lam / (k + 1.0)
            r2 = r * r
        else:
            a1 = math.lgamma(n + k) - lgn - math.lgamma(k + 1.0)
            a2 = k * lq
            lp = a1 + a2 + l0
            mg = abs(math.lgamma(n + k)) + abs(lgn) + math.lgamma(k + 1.0) + abs(a2) + abs(l0)
            r = (n + k) / (k + 1.0) * rho
            r2 = r * r
        m, s = _lse_push(m, s, 2.0 * lp)
        if mg > mag:
            mag = mg
        q = r2 if r2 > rho2 else rho2
        if q < 1.0:
            # tail relative to partial sum, both in the shifted scale
            tail = math.exp(2.0 * lp - m) * q / (1.0 - q) / s
            if tail < trunc_tol:
                return m + math.log(s), k + 1, tail, mag, True
    return m + math.log(s), max_terms, math.inf, mag, False
