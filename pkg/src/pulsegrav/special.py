"""Integral sine and cosine.

Backed by the Cephes routines in :mod:`scipy.special` (power series below
x=4, rational Chebyshev/asymptotic forms above), which are accurate to a few
ulp over the whole positive axis. An independent series/asymptotic oracle
lives in :mod:`pulsegrav.oracles`.
"""
from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import DomainError


def si(x):
    """Si(x) = int_0^x sin(t)/t dt, any real x."""
    out = _sp.sici(np.asarray(x, dtype=float))[0]
    return out[()] if np.ndim(out) == 0 else out


def ci(x):
    """Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt, for x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("Ci(x) requires x > 0")
    out = _sp.sici(x)[1]
    return out[()] if out.ndim == 0 else out


def si_ci(x):
    """Return ``(Si(x), Ci(x))``; raises DomainError for x <= 0."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("Ci(x) requires x > 0")
    s, c = _sp.sici(x)
    if s.ndim == 0:
        return float(s), float(c)
    return s, c
