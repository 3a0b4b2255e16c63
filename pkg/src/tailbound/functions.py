"""Tagged real functions used by the moment checks and g-Markov.

Shape tags (monotonicity, convexity, Lipschitz constant) are asserted by the
caller and spot-checked on a 64-point grid over the domain where the function
is used; a failed spot check rejects the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidInput

GRID_POINTS = 64
MONOTONICITY = ("nondecreasing", "nonincreasing", "none")


@dataclass(frozen=True)
class FunctionSpec:
    evaluator: Callable
    monotonicity: str = "none"
    convexity: str = "none"
    lipschitz_constant: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        if self.monotonicity not in MONOTONICITY:
            raise InvalidInput(f"monotonicity tag must be one of {MONOTONICITY}")
        if self.convexity not in ("convex", "none"):
            raise InvalidInput("convexity tag must be 'convex' or 'none'")
        if self.lipschitz_constant is not None and not self.lipschitz_constant > 0:
            raise InvalidInput("Lipschitz constant must be positive")

    def __call__(self, x):
        return self.evaluator(x)

    def spot_check(self, lo: float, hi: float, tol: float = 1e-9) -> None:
        """Raise InvalidInput if a tag is contradicted on [lo, hi]."""
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidInput("spot-check domain must be finite")
        if hi <= lo:
            return
        x = np.linspace(lo, hi, GRID_POINTS)
        y = np.asarray(self.evaluator(x), dtype=float) * np.ones_like(x)
        scale = tol * max(1.0, float(np.max(np.abs(y))))
        dy = np.diff(y)
        label = self.name or "function"
        if self.monotonicity == "nondecreasing" and np.any(dy < -scale):
            raise InvalidInput(f"{label} tagged nondecreasing decreases on [{lo:g}, {hi:g}]")
        if self.monotonicity == "nonincreasing" and np.any(dy > scale):
            raise InvalidInput(f"{label} tagged nonincreasing increases on [{lo:g}, {hi:g}]")
        if self.convexity == "convex" and np.any(np.diff(dy) < -scale):
            raise InvalidInput(f"{label} tagged convex fails a second-difference check on [{lo:g}, {hi:g}]")
        if self.lipschitz_constant is not None:
            slopes = np.abs(dy) / np.diff(x)
            if np.any(slopes > self.lipschitz_constant * (1.0 + 1e-9) + scale):
                raise InvalidInput(f"{label} exceeds Lipschitz constant {self.lipschitz_constant:g}")


def _const(c: float) -> Callable:
    return lambda x: c + 0.0 * np.asarray(x, dtype=float)


def named_function(name: str) -> FunctionSpec:
    """Look up a function by name: identity, neg, square, cube, exp, abs,
    sqrt, const:<c>, scale:<c> (x -> c*x), pow:<p> (x -> x^p on x >= 0)."""
    fixed = {
        "identity": FunctionSpec(lambda x: np.asarray(x, dtype=float) * 1.0, "nondecreasing", "convex", 1.0, "identity"),
        "neg": FunctionSpec(lambda x: -np.asarray(x, dtype=float), "nonincreasing", "convex", 1.0, "neg"),
        "square": FunctionSpec(lambda x: np.asarray(x, dtype=float) ** 2, "nondecreasing", "convex", None, "square"),
        "cube": FunctionSpec(lambda x: np.asarray(x, dtype=float) ** 3, "nondecreasing", "none", None, "cube"),
        "exp": FunctionSpec(np.exp, "nondecreasing", "convex", None, "exp"),
        "abs": FunctionSpec(np.abs, "none", "convex", 1.0, "abs"),
        "sqrt": FunctionSpec(np.sqrt, "nondecreasing", "none", None, "sqrt"),
    }
    if name in fixed:
        return fixed[name]
    kind, _, arg = name.partition(":")
    try:
        c = float(arg)
    except ValueError:
        raise InvalidInput(f"unknown function {name!r}") from None
    if kind == "const":
        return FunctionSpec(_const(c), "nondecreasing", "convex", None, name)
    if kind == "scale":
        mono = "nondecreasing" if c >= 0 else "nonincreasing"
        lip = abs(c) if c != 0 else None
        return FunctionSpec(lambda x: c * np.asarray(x, dtype=float), mono, "convex", lip, name)
    if kind == "pow" and c > 0:
        conv = "convex" if c >= 1 else "none"
        return FunctionSpec(lambda x: np.asarray(x, dtype=float) ** c, "nondecreasing", conv, None, name)
    raise InvalidInput(f"unknown function {name!r}")
