# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""
from libc.math cimport log, log1p, exp, pow, lgamma, fabs, INFINITY
from math import comb

NAME = "cython"


def squared_binomial_coeffs(Py_ssize_t n):
    cdef Py_ssize_t m = 2 * n, k, j, e
    cdef list coeffs = [0] * (m + 1)
    cdef object w, c, wc
    for k in range(n + 1):
        w = comb(n, k) ** 2
        e = 2 * (n - k)
        c = 1
        for j in range(e + 1):
            wc = w * c
            if j & 1:
                coeffs[2 * k + j] = coeffs[2 * k + j] - wc
            else:
                coeffs[2 * k + j] = coeffs[2 * k + j] + wc
            c = c * (e - j) // (j + 1)
    return coeffs


def homogeneous_eval(list coeffs, object a, object b):
    cdef Py_ssize_t d = len(coeffs) - 1, i
    cdef object acc, bp
    if d < 0:
        return 0
    acc = coeffs[d]
    bp = 1
    for i in range(d - 1, -1, -1):
        bp = bp * b
        acc = acc * a + coeffs[i] * bp
    return acc


cdef inline void _lse_push(double *m, double *s, double v) noexcept nogil:
    if v == -INFINITY:
        return
    if v <= m[0]:
        s[0] += exp(v - m[0])
    else:
        s[0] = s[0] * exp(m[0] - v) + 1.0
        m[0] = v


def log_ic_binomial(long n, double x):
    cdef double lx, l1x, m = -INFINITY, s = 0.0, mag = 0.0, c, lin, lp, lc, mg
    cdef long k
    if x == 0.0 or x == 1.0:
        return 0.0, 1, 0.0
    lx = log(x)
    l1x = log1p(-x)
    for k in range(n + 1):
        c = <double>comb(n, k)
        lin = c * pow(x, <double>k) * pow(1.0 - x, <double>(n - k))
        if lin > 1e-290:
            lp = log(lin)
            mg = fabs(lp) + 4.0
        else:
            lc = log(c)
            lp = lc + k * lx + (n - k) * l1x
            mg = lc + fabs(k * lx) + fabs((n - k) * l1x)
        _lse_push(&m, &s, 2.0 * lp)
        if mg > mag:
            mag = mg
    return m + log(s), n + 1, mag


def log_ic_series(int kind, double n, double x, double trunc_tol, long max_terms):
    cdef double lam = 0.0, llam = 0.0, rho2 = 0.0, lq = 0.0, l0 = 0.0, lgn = 0.0, rho = 0.0
    cdef double m = -INFINITY, s = 0.0, mag = 0.0
    cdef double a1, a2, lp, mg, r, r2, q, tail, lgk
    cdef long k
    if x == 0.0:
        return 0.0, 1, 0.0, 0.0, True
    if kind == 0:
        lam = n * x
        llam = log(lam)
    else:
        lq = log(x) - log1p(x)
        l0 = -n * log1p(x)
        lgn = lgamma(n)
        rho = x / (1.0 + x)
        rho2 = rho * rho
    for k in range(max_terms):
        if kind == 0:
            a1 = k * llam
            a2 = lgamma(k + 1.0)
            lp = -lam + a1 - a2
            mg = lam + fabs(a1) + a2
            r = lam / (k + 1.0)
        else:
            lgk = lgamma(n + k)
            a1 = lgk - lgn - lgamma(k + 1.0)
            a2 = k * lq
            lp = a1 + a2 + l0
            mg = fabs(lgk) + fabs(lgn) + lgamma(k + 1.0) + fabs(a2) + fabs(l0)
            r = (n + k) / (k + 1.0) * rho
        r2 = r * r
        _lse_push(&m, &s, 2.0 * lp)
        if mg > mag:
            mag = mg
        q = r2 if r2 > rho2 else rho2
        if q < 1.0:
            tail = exp(2.0 * lp - m) * q / (1.0 - q) / s
            if tail < trunc_tol:
                return m + log(s), k + 1, tail, mag, True
    return m + log(s), max_terms, INFINITY, mag, False
