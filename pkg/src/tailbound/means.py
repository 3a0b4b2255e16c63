"""Power means of finite sets of positive numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput

_SMALL_P = 1e-8


@dataclass(frozen=True)
class PositiveSample:
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise InvalidInput("power means need a nonempty set")
        if any(not (v > 0 and math.isfinite(v)) for v in vals):
            raise InvalidInput("power means are defined for strictly positive finite values")
        object.__setattr__(self, "values", vals)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


def _coerce(s) -> np.ndarray:
    if not isinstance(s, PositiveSample):
        s = PositiveSample(tuple(s))
    return s.as_array()


def geometric_mean(s) -> float:
    x = _coerce(s)
    return math.exp(math.fsum(np.log(x)) / x.size)


def power_mean(s, p: float) -> float:
    """(mean of x^p)^(1/p), with the p -> 0 and p -> +/-inf limits.

    Small |p| uses the log-domain geometric mean; otherwise the max (p > 0)
    or min (p < 0) is factored out so the powers cannot overflow.
    """
    x = _coerce(s)
    if p == math.inf:
        return float(x.max())
    if p == -math.inf:
        return float(x.min())
    if abs(p) < _SMALL_P:
        return min(max(geometric_mean(x), float(x.min())), float(x.max()))
    # factor out the extreme value on the side p points to; ratios then
    # lie in (0, 1] raised to a positive power or [1, inf) to a negative one
    m = x.max() if p > 0 else x.min()
    val = float(m * np.mean((x / m) ** p) ** (1.0 / p))
    return min(max(val, float(x.min())), float(x.max()))


def classical_means(s) -> tuple[float, float, float]:
    """(harmonic, geometric, arithmetic)."""
    x = _coerce(s)
    harmonic = x.size / math.fsum(1.0 / x)
    arithmetic = math.fsum(x) / x.size
    return harmonic, geometric_mean(x), arithmetic
