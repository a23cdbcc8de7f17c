"""Exact verification of log-convexity for the binomial index of coincidence."""
from .kernels import BACKEND

__version__ = "0.1.0"
