"""Order-statistic variance bounds and deterministic sample inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .moments import IneqCheck
from .numerics import betainc, golden_section

GRID = 1024
EDGE = 1e-12


@dataclass(frozen=True)
class SortedSample:
    values: tuple

    def __post_init__(self):
        vals = tuple(sorted(float(v) for v in self.values))
        if len(vals) < 2:
            raise InvalidInput("a sorted sample needs at least two values")
        if any(not math.isfinite(v) for v in vals):
            raise InvalidInput("sample values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        return math.fsum(self.values) / self.n

    def _ss(self) -> float:
        m = self.mean
        return math.fsum((v - m) ** 2 for v in self.values)

    @property
    def biased_sd(self) -> float:
        return math.sqrt(self._ss() / self.n)

    @property
    def unbiased_sd(self) -> float:
        return math.sqrt(self._ss() / (self.n - 1))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


def _check_nk(n: int, k: int) -> None:
    if int(n) != n or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n}")
    if int(k) != k or not 1 <= k <= n:
        raise InvalidInput(f"k must be an integer in [1, {n}], got {k}")


def _ratio(n: int, k: int, x):
    x = np.asarray(x, dtype=float)
    g = betainc(k, n + 1 - k, x)
    # 1 - I_x(k, m) = I_{1-x}(m, k): avoids cancellation when G is near 1
    one_minus_g = betainc(n + 1 - k, k, 1.0 - x)
    return g * one_minus_g / (x * (1.0 - x))


def papadatos_factor(n: int, k: int, tol: float = 1e-8) -> float:
    """sup over 0 < x < 1 of G(x)(1 - G(x)) / (x(1 - x)), G the Beta(k, n+1-k) CDF.

    The interior maximum is seeded on a 1024-point grid and refined by
    golden-section search. The limits at the edges are n when k = 1 (x -> 0)
    or k = n (x -> 1) and zero otherwise.
    """
    _check_nk(n, k)
    if n == 1:
        return 1.0
    grid = np.linspace(EDGE, 1.0 - EDGE, GRID)
    vals = _ratio(n, k, grid)
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, GRID - 1)]
    best = golden_section(lambda x: -float(_ratio(n, k, x)), lo, hi, tol=min(tol, 1e-10))
    interior = max(-best.fx, float(vals[i]))
    edge = float(n) if k in (1, n) else 0.0
    return max(interior, edge)


def papadatos_bound(n: int, k: int, sigma2: float) -> float:
    """Var(X_(k)) <= factor(n, k) * sigma^2."""
    if sigma2 < 0:
        raise InvalidInput("sigma2 must be nonnegative")
    return papadatos_factor(n, k) * sigma2


def _coerce(s) -> SortedSample:
    return s if isinstance(s, SortedSample) else SortedSample(tuple(s))


def _check_r(n: int, r: int, lo: int) -> None:
    if int(r) != r or not lo <= r <= n - 1:
        raise InvalidInput(f"r must be an integer in [{lo}, {n - 1}], got {r}")


def hurlimann_upper_average(s, r: int) -> IneqCheck:
    """Mean of the top n - r values <= mean + S_b sqrt(r / (n - r))."""
    s = _coerce(s)
    n = s.n
    _check_r(n, r, 0)
    x = s.as_array()
    lhs = math.fsum(x[r:]) / (n - r)
    rhs = s.mean + s.biased_sd * math.sqrt(r / (n - r))
    return IneqCheck("hurlimann_upper_average", lhs, rhs, {"r": r})


def hurlimann_average_excess(s, r: int) -> IneqCheck:
    """(1/(n-r)) sum_{i>r} (X_(i) - X_(r)) <= S_b n / sqrt(r (n - r))."""
    s = _coerce(s)
    n = s.n
    _check_r(n, r, 1)
    x = s.as_array()
    lhs = math.fsum(x[r:] - x[r - 1]) / (n - r)
    rhs = s.biased_sd * n / math.sqrt(r * (n - r))
    return IneqCheck("hurlimann_average_excess", lhs, rhs, {"r": r})


def hurlimann_stop_loss(s, r: int, d: float) -> IneqCheck:
    """sum_{i>r} (X_(i) - d) <= (n - r)(mean - d + S_b sqrt(r / (n - r))) for X_(r) <= d <= X_(r+1)."""
    s = _coerce(s)
    n = s.n
    _check_r(n, r, 0)
    x = s.as_array()
    lower = -math.inf if r == 0 else x[r - 1]
    if not lower <= d <= x[r]:
        raise InvalidInput(f"d={d} must lie in [{lower}, {x[r]}]")
    lhs = math.fsum(x[r:] - d)
    rhs = (n - r) * (s.mean - d + s.biased_sd * math.sqrt(r / (n - r)))
    return IneqCheck("hurlimann_stop_loss", lhs, rhs, {"r": r, "d": d})


def samuelson_interval(s) -> tuple[float, float, bool]:
    """[mean - S_u sqrt(n-1), mean + S_u sqrt(n-1)] contains every sample value."""
    s = _coerce(s)
    half = s.unbiased_sd * math.sqrt(s.n - 1)
    lo, hi = s.mean - half, s.mean + half
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    inside = s.values[0] >= lo - slack and s.values[-1] <= hi + slack
    return lo, hi, bool(inside)
