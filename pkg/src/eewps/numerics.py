"""Small numerical helpers used throughout the package."""

import math

import numpy as np
from scipy.optimize import brentq

from .exceptions import DomainError

_LN2 = math.log(2.0)


def log1mexp(a):
    """log(1 - exp(-a)) for a >= 0, accurate over the whole range.

    Uses expm1 below log(2) and log1p above, the usual split point.
    Accepts scalars or arrays; a = 0 maps to -inf, a = inf to 0.
    """
    a = np.asarray(a, dtype=float)
    small = a <= _LN2
    lo = np.where(small, a, 1.0)
    hi = np.where(small, 1.0, a)
    with np.errstate(divide="ignore"):
        out = np.where(small, np.log(-np.expm1(-lo)), np.log1p(-np.exp(-hi)))
    return out[()] if out.ndim == 0 else out


def bracketed_root(f, lo, hi, *, expand_lo=None, expand_hi=None, xtol=1e-14,
                   rtol=4e-16, max_expand=200):
    """Root of a scalar function, expanding the bracket until the sign flips.

    `expand_lo`/`expand_hi` move an endpoint outward (e.g. lambda v: v / 2);
    endpoints where no expander is given are treated as hard limits.
    """
    flo, fhi = f(lo), f(hi)
    n = 0
    while flo * fhi > 0.0 and n < max_expand:
        moved = False
        if expand_lo is not None:
            new_lo = expand_lo(lo)
            if new_lo != lo:
                lo, flo = new_lo, f(new_lo)
                moved = True
        if flo * fhi > 0.0 and expand_hi is not None:
            new_hi = expand_hi(hi)
            if new_hi != hi:
                hi, fhi = new_hi, f(new_hi)
                moved = True
        if not moved:
            break
        n += 1
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise DomainError("could not bracket a root in [%g, %g]" % (lo, hi))
    return brentq(f, lo, hi, xtol=xtol, rtol=max(rtol, 4e-16))


def as_positive_array(x, what="x"):
    """Coerce to a float array, rejecting nonpositive or non-finite entries."""
    arr = np.asarray(x, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr <= 0.0)):
        raise DomainError(f"{what} must be positive and finite")
    return arr
