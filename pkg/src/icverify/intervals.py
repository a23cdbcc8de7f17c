"""Outward-rounded interval helpers on top of ``mpmath.iv``.

Comparisons against irrational quantities are decided by evaluating both
sides as intervals and escalating the working precision until the
intervals separate or the precision ceiling is hit.
"""
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
import os

from mpmath import iv, libmp

DEFAULT_PRECISION = int(os.environ.get("ICVERIFY_PRECISION", "64"))
MAX_PRECISION = 8192


@contextmanager
def iv_precision(bits):
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def to_iv(q):
    """Enclose an exact rational (or int) in an interval at current precision."""
    q = Fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def endpoints(v):
    """Exact rational endpoints of an interval (infinite ends become None)."""
    out = []
    for raw in v._mpi_:
        if raw in (libmp.finf, libmp.fninf, libmp.fnan):
            out.append(None)
        else:
            p, q = libmp.to_rational(raw)
            out.append(Fraction(int(p), int(q)))
    return tuple(out)


@dataclass(frozen=True)
class Decision:
    """Outcome of a certified ``lhs <= rhs`` comparison.

    ``verdict`` is True/False when decided and None when the precision
    ceiling was reached with overlapping enclosures. ``slack`` is a lower
    bound on rhs - lhs (as a float) at the deciding precision.
    """

    verdict: bool | None
    slack: float
    precision: int


def certify_le(build, precision=None, max_precision=MAX_PRECISION):
    """Decide lhs <= rhs where ``build()`` returns the pair of intervals.

    ``build`` is called under the active ``mpmath.iv`` precision; it may also
    return exact Fractions for either side.
    """
    bits = precision or DEFAULT_PRECISION
    while True:
        with iv_precision(bits):
            lhs, rhs = build()
            lhs = lhs if not isinstance(lhs, (Fraction, int)) else to_iv(lhs)
            rhs = rhs if not isinstance(rhs, (Fraction, int)) else to_iv(rhs)
            _, lhs_hi = endpoints(lhs)
            rhs_lo, _ = endpoints(rhs)
            lhs_lo, _ = endpoints(lhs)
            _, rhs_hi = endpoints(rhs)
        if lhs_hi is not None and rhs_lo is not None and lhs_hi <= rhs_lo:
            return Decision(True, float(rhs_lo - lhs_hi), bits)
        if lhs_lo is not None and rhs_hi is not None and lhs_lo > rhs_hi:
            return Decision(False, float(rhs_hi - lhs_lo), bits)
        if bits >= max_precision:
            if None in (lhs_lo, lhs_hi, rhs_lo, rhs_hi):
                return Decision(None, float("-inf"), bits)
            return Decision(None, float(rhs_lo - lhs_hi), bits)
        bits *= 2
