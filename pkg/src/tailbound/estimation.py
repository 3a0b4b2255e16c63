"""Variance lower bounds for estimators: Cramer-Rao, Chapman-Robbins, Rao-Blackwell.

Regularity (exchange of derivative and integral) is assumed for the three
built-in families and not verified.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy import integrate, stats

from . import dist
from .errors import InvalidInput
from .numerics import sample_variance

FISHER_H = 1e-5
FISHER_RTOL = 1e-4
DEFAULT_DELTAS = (1e-3, 1e-2, 0.05, 0.1)
RB_INNER = 64
RB_EXACT_MAX_N = 16


@dataclass(frozen=True)
class ParametricFamily:
    family: str
    theta: float
    sigma: float = 1.0

    def __post_init__(self):
        if self.family not in ("bernoulli", "normal-mean", "poisson"):
            raise InvalidInput(f"unknown parametric family {self.family!r}")
        if not self.contains(self.theta):
            raise InvalidInput(f"theta={self.theta} is not interior for {self.family}")
        if self.family == "normal-mean" and not self.sigma > 0:
            raise InvalidInput("sigma must be positive")

    def contains(self, theta: float) -> bool:
        if not math.isfinite(theta):
            return False
        if self.family == "bernoulli":
            return 0.0 < theta < 1.0
        if self.family == "poisson":
            return theta > 0.0
        return True

    def logpdf(self, x, theta: float):
        x = np.asarray(x, dtype=float)
        if self.family == "bernoulli":
            return x * math.log(theta) + (1.0 - x) * math.log1p(-theta)
        if self.family == "poisson":
            return stats.poisson.logpmf(x, theta)
        return stats.norm.logpdf(x, theta, self.sigma)

    def atoms(self, *thetas: float) -> np.ndarray:
        """Support points carrying all but a negligible tail of the mass for each theta."""
        if self.family == "bernoulli":
            return np.array([0.0, 1.0])
        if self.family == "poisson":
            top = max(t + 12.0 * math.sqrt(t) + 60.0 for t in thetas)
            return np.arange(0.0, math.ceil(top) + 1.0)
        raise InvalidInput("normal-mean has no atoms")

    def draw(self, shape: tuple, seed: int, stream: int = 0) -> np.ndarray:
        u = dist.uniforms(seed, math.prod(shape), stream).reshape(shape)
        if self.family == "bernoulli":
            return (u > 1.0 - self.theta).astype(float)
        if self.family == "poisson":
            return stats.poisson.ppf(u, self.theta)
        return stats.norm.ppf(u, self.theta, self.sigma)


@dataclass(frozen=True)
class EstimatorSpec:
    """statistic maps an (m, n) array of samples to m estimates."""

    statistic: Callable
    target: Callable
    unbiased: bool = True


def _closed_form_information(fam: ParametricFamily) -> float:
    if fam.family == "bernoulli":
        return 1.0 / (fam.theta * (1.0 - fam.theta))
    if fam.family == "poisson":
        return 1.0 / fam.theta
    return 1.0 / fam.sigma**2


def numeric_fisher_information(fam: ParametricFamily, h: float = FISHER_H) -> float:
    """E[(d/dtheta log f)^2] with a central-difference score."""
    th = fam.theta

    def score(x):
        return (fam.logpdf(x, th + h) - fam.logpdf(x, th - h)) / (2.0 * h)

    if fam.family == "normal-mean":
        f = lambda x: float(score(x)) ** 2 * math.exp(float(fam.logpdf(x, th)))
        s = fam.sigma
        val, _ = integrate.quad(f, th - 40 * s, th + 40 * s, points=[th], limit=200, epsrel=1e-10)
        return val
    xs = fam.atoms(th)
    return math.fsum(score(xs) ** 2 * np.exp(fam.logpdf(xs, th)))


def fisher_information(fam: ParametricFamily) -> float:
    """Per-observation Fisher information, cross-checked numerically."""
    closed = _closed_form_information(fam)
    numeric = numeric_fisher_information(fam)
    if abs(numeric - closed) > FISHER_RTOL * closed:
        raise ArithmeticError(f"Fisher information cross-check failed: {closed} vs {numeric}")
    return closed


def cramer_rao_bound(fam: ParametricFamily, n: int, tau_prime: float = 1.0, joint_information: Optional[float] = None) -> float:
    """(tau'(theta))^2 / (n I(theta)).

    A non-iid sample is handled by passing its total information as
    ``joint_information`` with n = 1.
    """
    if int(n) != n or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n}")
    if joint_information is not None:
        if n != 1:
            raise InvalidInput("joint_information already covers the whole sample; use n=1")
        if not joint_information > 0:
            raise InvalidInput("joint information must be positive")
        return tau_prime**2 / joint_information
    return tau_prime**2 / (n * fisher_information(fam))


def chi_square_divergence(fam: ParametricFamily, delta: float) -> float:
    """E_theta[(p(X, theta + delta) / p(X, theta) - 1)^2] for one observation."""
    th, alt = fam.theta, fam.theta + delta
    if fam.family == "normal-mean":
        return math.expm1(delta**2 / fam.sigma**2)
    xs = fam.atoms(th, alt)
    lp = fam.logpdf(xs, th)
    ratio_m1 = np.expm1(fam.logpdf(xs, alt) - lp)
    return math.fsum(np.exp(lp) * ratio_m1**2)


def chapman_robbins_bound(
    fam: ParametricFamily,
    tau: Callable[[float], float],
    delta_grid: Optional[Sequence[float]] = None,
    n: int = 1,
) -> float:
    """max over the grid of (tau(theta + d) - tau(theta))^2 / chi2(d).

    For n iid observations the divergence is (1 + chi2_1)^n - 1.
    """
    if int(n) != n or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n}")
    if delta_grid is None:
        grid = [s * d for d in DEFAULT_DELTAS for s in (1, -1) if fam.contains(fam.theta + s * d)]
    else:
        grid = [float(d) for d in delta_grid]
        if not grid or any(d == 0 for d in grid):
            raise InvalidInput("delta grid must be nonempty and free of zeros")
        bad = [d for d in grid if not fam.contains(fam.theta + d)]
        if bad:
            raise InvalidInput(f"theta + delta leaves the parameter space for delta in {bad}")
    t0 = tau(fam.theta)
    best = 0.0
    for d in grid:
        chi1 = chi_square_divergence(fam, d)
        chi = math.expm1(n * math.log1p(chi1))
        best = max(best, (tau(fam.theta + d) - t0) ** 2 / chi)
    return best


class RaoBlackwellResult(NamedTuple):
    var_u: float
    var_phi: float
    bound_ok: bool
    var_u_se: float
    phi_mean: float
    phi_mean_se: float
    seed: int


def _bernoulli_phi_table(statistic: Callable, n: int) -> np.ndarray:
    """E(U | T = t) for t = 0..n, averaging U over every arrangement with sum t."""
    table = np.empty(n + 1)
    for t in range(n + 1):
        rows = []
        for ones in itertools.combinations(range(n), t):
            r = np.zeros(n)
            r[list(ones)] = 1.0
            rows.append(r)
        table[t] = float(np.mean(statistic(np.array(rows))))
    return table


def _conditional_draws(fam: ParametricFamily, x: np.ndarray, k: int, seed: int) -> np.ndarray:
    """k samples of the full sample given its sum, per row; shape (m * k, n)."""
    m, n = x.shape
    t = x.sum(axis=1)
    if fam.family == "normal-mean":
        z = stats.norm.ppf(dist.uniforms(seed, m * k * n, 7)).reshape(m * k, n) * fam.sigma
        z -= z.mean(axis=1, keepdims=True)
        return np.repeat(t / n, k)[:, None] + z
    if fam.family == "poisson":
        rng = np.random.Generator(np.random.Philox(key=(7 << 64) | (int(seed) & 0xFFFFFFFFFFFFFFFF)))
        counts = np.repeat(t.astype(np.int64), k)
        return rng.multinomial(counts, np.full(n, 1.0 / n)).astype(float)
    # bernoulli beyond the exact range: random placement of the ones
    rng = np.random.Generator(np.random.Philox(key=(7 << 64) | (int(seed) & 0xFFFFFFFFFFFFFFFF)))
    keys = rng.random((m * k, n))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    return (ranks < np.repeat(t, k)[:, None]).astype(float)


def rao_blackwell_check(fam: ParametricFamily, n: int, u: EstimatorSpec, n_mc: int, seed: int, inner: int = RB_INNER) -> RaoBlackwellResult:
    """Var(U) against Var(phi(T)) with T the sample sum and phi(T) = E(U | T).

    Bernoulli uses the exact conditional mean for n <= 16. Other cases average
    ``inner`` conditional draws, and the variance of that average is corrected
    by subtracting the mean inner variance over ``inner``.
    """
    if int(n) != n or n < 1:
        raise InvalidInput("n must be a positive integer")
    if n_mc < 100:
        raise InvalidInput("n_mc must be at least 100")
    if not u.unbiased:
        raise InvalidInput("Rao-Blackwell needs an estimator asserted unbiased")
    x = fam.draw((n_mc, n), seed)
    uu = np.asarray(u.statistic(x), dtype=float)
    target = float(u.target(fam.theta))
    se_mean = float(np.std(uu, ddof=1)) / math.sqrt(n_mc)
    if abs(uu.mean() - target) > 4.0 * se_mean + 1e-12:
        raise InvalidInput(f"estimator looks biased: mean {uu.mean():.6g} vs target {target:.6g}")
    if fam.family == "bernoulli" and n <= RB_EXACT_MAX_N:
        phi = _bernoulli_phi_table(u.statistic, n)[x.sum(axis=1).astype(int)]
        var_phi = float(np.var(phi, ddof=1))
    else:
        rep = np.asarray(u.statistic(_conditional_draws(fam, x, inner, seed)), dtype=float).reshape(n_mc, inner)
        phi = rep.mean(axis=1)
        noise = float(np.mean(np.var(rep, axis=1, ddof=1))) / inner
        var_phi = max(float(np.var(phi, ddof=1)) - noise, 0.0)
    var_u, var_u_se = sample_variance(uu)
    phi_se = float(np.std(phi, ddof=1)) / math.sqrt(n_mc)
    ok = var_phi <= var_u + 3.0 * var_u_se and abs(phi.mean() - target) <= 4.0 * phi_se + 1e-12
    return RaoBlackwellResult(var_u, var_phi, bool(ok), var_u_se, float(phi.mean()), phi_se, int(seed))
