"""Numerical building blocks: regularized incomplete beta and golden-section search."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import betaln

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_TINY = 1e-300


def _betacf(a: float, b: float, x: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Continued fraction for I_x(a, b) (modified Lentz), vectorized over x."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _TINY, _TINY, d)
    d = 1.0 / d
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        h = np.where(active, h * d * c, h)
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > tol
        if not active.any():
            break
    return h


def betainc(a: float, b: float, x, tol: float = 1e-15, max_iter: int = 500):
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].

    The continued fraction converges quickly for x < (a+1)/(a+b+2); beyond
    that point the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) is used.
    """
    if not (a > 0 and b > 0):
        raise ValueError("betainc needs a, b > 0")
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)):
        raise ValueError("betainc needs x in [0, 1]")
    out = np.empty_like(xa)
    edge0, edge1 = xa == 0.0, xa == 1.0
    out[edge0], out[edge1] = 0.0, 1.0
    inner = ~(edge0 | edge1)
    xi = xa[inner]
    log_front = lambda aa, bb, xx: aa * np.log(xx) + bb * np.log1p(-xx) - betaln(aa, bb)
    direct = xi < (a + 1.0) / (a + b + 2.0)
    res = np.empty_like(xi)
    if direct.any():
        xd = xi[direct]
        res[direct] = np.exp(log_front(a, b, xd)) * _betacf(a, b, xd, tol, max_iter) / a
    if (~direct).any():
        xs = 1.0 - xi[~direct]
        res[~direct] = 1.0 - np.exp(log_front(b, a, xs)) * _betacf(b, a, xs, tol, max_iter) / b
    out[inner] = res
    return float(out) if np.ndim(out) == 0 else out


class Minimum(NamedTuple):
    x: float
    fx: float
    iterations: int
    converged: bool


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200) -> Minimum:
    """Minimize a unimodal f on [lo, hi]; the endpoints are candidates too."""
    a, b = float(lo), float(hi)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while it < max_iter and (b - a) > tol * max(1.0, abs(a) + abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
        it += 1
    x, fx = (c, fc) if fc <= fd else (d, fd)
    converged = it < max_iter
    for edge in (lo, hi):
        fe = f(edge)
        if fe < fx:
            x, fx = edge, fe
    return Minimum(float(x), float(fx), it, converged)


def bracket_by_doubling(f: Callable[[float], float], start: float = 1e-4, limit: float = 1e8) -> tuple[float, float]:
    """Interval [lo, hi] in [0, limit] containing the minimizer of a convex f on [0, inf).

    Steps t = start, 2*start, ... until f stops decreasing; non-finite values
    shrink the step back toward the last finite point.
    """
    prev_t, prev_f = 0.0, f(0.0)
    t = start
    ft = f(t)
    if not math.isfinite(ft) or ft >= prev_f:
        return 0.0, t
    while t < limit:
        nt = 2.0 * t
        fn = f(nt)
        while not math.isfinite(fn) and nt > t * (1.0 + 1e-6):
            nt = 0.5 * (t + nt)
            fn = f(nt)
        if not math.isfinite(fn) or fn >= ft:
            return prev_t, nt
        prev_t, t, ft = t, nt, fn
    return prev_t, t


def sample_variance(x) -> tuple[float, float]:
    """Unbiased sample variance and its standard error.

    Uses the finite-sample identity Var(s^2) = (mu4 - sigma^4 (m-3)/(m-1)) / m,
    which stays positive for two-point laws where mu4 = sigma^4.
    """
    x = np.asarray(x, dtype=float).ravel()
    m = x.size
    if m < 4:
        raise ValueError("need at least four values")
    c = x - x.mean()
    m2 = float(np.dot(c, c)) / m
    m4 = float(np.mean(c**4))
    # plug in the biased m2 here: the unbiased square cancels the O(1/m) term
    return m2 * m / (m - 1), math.sqrt(max(m4 - m2 * m2 * (m - 3) / (m - 1), 0.0) / m)
