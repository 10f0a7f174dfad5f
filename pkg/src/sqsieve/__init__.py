"""sqsieve: verification toolkit for the large sieve with square moduli.

Measures the extremal constant of the sieve quadratic form over Farey points
with square denominators, counts those points in short windows, and checks
the measurements against the analytic majorants, kernel identities, Gauss-sum
transforms, oscillatory-integral evaluations and congruence counts that back
them up.
"""

from .backend import HAVE_COMPILED, active_backend

__version__ = "0.1.0"

__all__ = ["__version__", "HAVE_COMPILED", "active_backend"]
