"""Kernel backend selection.

The compiled extension is used when it imports cleanly; set
``ICVERIFY_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

if os.environ.get("ICVERIFY_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.NAME
squared_binomial_coeffs = _impl.squared_binomial_coeffs
homogeneous_eval = _impl.homogeneous_eval
log_ic_binomial = _impl.log_ic_binomial
log_ic_series = _impl.log_ic_series
