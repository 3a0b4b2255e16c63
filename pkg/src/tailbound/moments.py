"""Two-sided moment and entropy inequality checks.

Each ``*_check`` evaluates both sides so the slack is visible. Orientation is
normalized: ``slack = rhs - lhs`` and the inequality holds when the slack is
nonnegative up to a relative tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from . import dist
from .dist import DistributionSpec, MomentProfile
from .errors import InvalidInput
from .functions import FunctionSpec
from .numerics import sample_variance

CHECK_RTOL = 1e-12
MAX_ENUMERATION = 2**20
HAN_MAX_ATOMS = 2**12
ES_INNER = 64
NORMAL_SPAN = 8.0


@dataclass(frozen=True)
class IneqCheck:
    inequality_id: str
    lhs: float
    rhs: float
    slack: float = field(init=False)
    holds: bool = field(init=False)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        slack = self.rhs - self.lhs
        tol = CHECK_RTOL * max(1.0, abs(self.lhs), abs(self.rhs))
        object.__setattr__(self, "slack", slack)
        object.__setattr__(self, "holds", bool(slack >= -tol))


@dataclass(frozen=True)
class JointFiniteDistribution:
    """Finite law of a pair (X, Y) as atoms ((x, y), prob)."""

    atoms: tuple

    def __post_init__(self):
        rows = []
        for item in self.atoms:
            (x, y), p = item
            rows.append(((float(x), float(y)), float(p)))
        if not rows:
            raise InvalidInput("joint distribution needs at least one atom")
        probs = [p for _, p in rows]
        if any(p < 0 or not math.isfinite(p) for p in probs):
            raise InvalidInput("atom probabilities must be nonnegative")
        if abs(math.fsum(probs) - 1.0) > dist.PROB_TOL:
            raise InvalidInput(f"atom probabilities sum to {math.fsum(probs)!r}, not 1")
        if any(not (math.isfinite(x) and math.isfinite(y)) for (x, y), _ in rows):
            raise InvalidInput("atoms must be finite")
        object.__setattr__(self, "atoms", tuple(rows))

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.array([a[0][0] for a in self.atoms])
        y = np.array([a[0][1] for a in self.atoms])
        p = np.array([a[1] for a in self.atoms])
        return x, y, p

    def expect(self, fn: Callable) -> float:
        x, y, p = self.arrays
        return math.fsum(np.asarray(fn(x, y), dtype=float) * p)

    def marginal_x(self) -> DistributionSpec:
        x, _, p = self.arrays
        return DistributionSpec.finite(zip(x, p))

    def marginal_y(self) -> DistributionSpec:
        _, y, p = self.arrays
        return DistributionSpec.finite(zip(y, p))

    @classmethod
    def independent(cls, a: DistributionSpec, b: DistributionSpec) -> "JointFiniteDistribution":
        xa, pa = a.support_atoms()
        xb, pb = b.support_atoms()
        return cls(tuple(((x, y), p * q) for x, p in zip(xa, pa) for y, q in zip(xb, pb)))


def _lp_norm(j: JointFiniteDistribution, fn: Callable, p: float) -> float:
    return j.expect(lambda x, y: np.abs(fn(x, y)) ** p) ** (1.0 / p)


def holder_check(j: JointFiniteDistribution, p: float, q: float) -> IneqCheck:
    if not (p > 1 and q > 1):
        raise InvalidInput("Hoelder needs p, q > 1")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-9:
        raise InvalidInput(f"p={p} and q={q} are not conjugate")
    lhs = j.expect(lambda x, y: np.abs(x * y))
    rhs = _lp_norm(j, lambda x, y: x, p) * _lp_norm(j, lambda x, y: y, q)
    exy = j.expect(lambda x, y: x * y)
    return IneqCheck("holder", lhs, rhs, {"abs_E_xy": abs(exy), "abs_E_xy_le_lhs": abs(exy) <= lhs * (1 + CHECK_RTOL), "p": p, "q": q})


def cauchy_schwarz_check(j: JointFiniteDistribution) -> IneqCheck:
    """E|XY| <= sqrt(E X^2 E Y^2); details carry Cov^2 <= Var X Var Y."""
    base = holder_check(j, 2.0, 2.0)
    mx = j.expect(lambda x, y: x)
    my = j.expect(lambda x, y: y)
    cov = j.expect(lambda x, y: (x - mx) * (y - my))
    vx = j.expect(lambda x, y: (x - mx) ** 2)
    vy = j.expect(lambda x, y: (y - my) ** 2)
    centered = IneqCheck("covariance", cov * cov, vx * vy)
    details = dict(base.details, cov=cov, var_x=vx, var_y=vy, covariance_holds=centered.holds, covariance_slack=centered.slack)
    return IneqCheck("cauchy_schwarz", base.lhs, base.rhs, details)


def _check_domain(spec: DistributionSpec) -> tuple[float, float]:
    lo, hi = spec.support
    if spec.family == "normal":
        lo, hi = spec.mu - NORMAL_SPAN * spec.sigma, spec.mu + NORMAL_SPAN * spec.sigma
    return lo, hi


def jensen_check(spec: DistributionSpec, g: FunctionSpec) -> IneqCheck:
    """g(EX) <= E g(X) for convex g."""
    if g.convexity != "convex":
        raise InvalidInput("Jensen needs g tagged convex")
    g.spot_check(*_check_domain(spec))
    lhs = float(g(spec.mean))
    rhs = dist.expect(spec, g)
    return IneqCheck("jensen", lhs, rhs, {"g": g.name})


def liapounov_check(spec: DistributionSpec, r: float, s: float) -> IneqCheck:
    """(E|X|^r)^{1/r} <= (E|X|^s)^{1/s}; details add E|X| <= (E|X|^r)^{1/r}."""
    if not (s > r > 1):
        raise InvalidInput(f"need s > r > 1, got r={r}, s={s}")
    lr = dist.moment(spec, r, absolute=True) ** (1.0 / r)
    ls = dist.moment(spec, s, absolute=True) ** (1.0 / s)
    l1 = dist.moment(spec, 1, absolute=True)
    return IneqCheck("liapounov", lr, ls, {"l1": l1, "l1_le_lhs": l1 <= lr * (1 + CHECK_RTOL), "r": r, "s": s})


def minkowski_check(j: JointFiniteDistribution, p: float) -> IneqCheck:
    if not p >= 1:
        raise InvalidInput(f"Minkowski needs p >= 1, got {p}")
    lhs = _lp_norm(j, lambda x, y: x + y, p)
    rhs = _lp_norm(j, lambda x, y: x, p) + _lp_norm(j, lambda x, y: y, p)
    return IneqCheck("minkowski", lhs, rhs, {"p": p})


def association_check(spec: DistributionSpec, g: FunctionSpec, h: FunctionSpec) -> IneqCheck:
    """Chebyshev association: E(gh) vs Eg Eh for monotone g, h.

    Same direction gives E(gh) >= Eg Eh, opposite directions the reverse.
    """
    if g.monotonicity == "none" or h.monotonicity == "none":
        raise InvalidInput("association needs both functions tagged monotone")
    dom = _check_domain(spec)
    g.spot_check(*dom)
    h.spot_check(*dom)
    egh = dist.expect(spec, lambda x: g(x) * h(x))
    eg_eh = dist.expect(spec, g) * dist.expect(spec, h)
    same = g.monotonicity == h.monotonicity
    if same:
        return IneqCheck("association", eg_eh, egh, {"direction": "same", "E_gh": egh, "Eg_Eh": eg_eh})
    return IneqCheck("association", egh, eg_eh, {"direction": "opposite", "E_gh": egh, "Eg_Eh": eg_eh})


def variance_range_bounds(profile: MomentProfile) -> tuple[float, float]:
    """(Bhatia-Davis, Popoviciu) upper bounds on the variance."""
    m, big_m, mu = profile.support_min, profile.support_max, profile.mean
    if not (math.isfinite(m) and math.isfinite(big_m)):
        raise InvalidInput("range bounds need a bounded support")
    return (big_m - mu) * (mu - m), (big_m - m) ** 2 / 4.0


# ---------------------------------------------------------------------------
# functions of several coordinates


def evaluate_rows(g: Callable, x: np.ndarray) -> np.ndarray:
    """Apply g to each row of x; g may be vectorized over rows or scalar."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    try:
        out = np.asarray(g(x), dtype=float)
        if out.shape == (x.shape[0],):
            return out
        if out.ndim == 0:
            return np.full(x.shape[0], float(out))
    except (TypeError, ValueError, IndexError):
        pass
    return np.array([float(g(row)) for row in x])


class EfronSteinResult(NamedTuple):
    var_estimate: float
    es_bound: float
    conditional_bound: float
    var_se: float
    es_se: float
    conditional_se: float
    seed: int


def efron_stein_bound(g: Callable, coord_specs: Sequence[DistributionSpec], n_mc: int, seed: int, inner: int = ES_INNER) -> EfronSteinResult:
    """Monte Carlo Var(Z), sum E(Z - Z_i)^2 and sum E(Z - E(Z | X_-i))^2.

    Z_i swaps coordinate i for an independent copy. The conditional mean is
    estimated from ``inner`` fresh draws of coordinate i; given X_-i the inner
    mean is independent of Z, so E(Z - m_hat)^2 = (1 + 1/inner) E(Z - m)^2
    and dividing by that factor removes the bias exactly.
    """
    if n_mc < 100:
        raise InvalidInput(f"n_mc must be at least 100, got {n_mc}")
    n = len(coord_specs)
    if n < 1:
        raise InvalidInput("need at least one coordinate")
    x = np.column_stack([dist.draw(s, n_mc, seed, stream=i) for i, s in enumerate(coord_specs)])
    xp = np.column_stack([dist.draw(s, n_mc, seed, stream=n + i) for i, s in enumerate(coord_specs)])
    z = evaluate_rows(g, x)
    swap = np.zeros(n_mc)
    cond = np.zeros(n_mc)
    for i, s in enumerate(coord_specs):
        xi = x.copy()
        xi[:, i] = xp[:, i]
        swap += (z - evaluate_rows(g, xi)) ** 2
        fresh = dist.draw(s, n_mc * inner, seed, stream=2 * n + i).reshape(n_mc, inner)
        rep = np.repeat(x, inner, axis=0)
        rep[:, i] = fresh.ravel()
        m_hat = evaluate_rows(g, rep).reshape(n_mc, inner).mean(axis=1)
        cond += (z - m_hat) ** 2 / (1.0 + 1.0 / inner)
    var, var_se = sample_variance(z)
    se = lambda a: float(np.std(a, ddof=1) / math.sqrt(n_mc))
    return EfronSteinResult(var, float(swap.mean()), float(cond.mean()), var_se, se(swap), se(cond), int(seed))


def _entropy_of(p: np.ndarray) -> float:
    p = p[p > 0]
    return -math.fsum(p * np.log(p))


def han_check(joint) -> tuple[float, float, float]:
    """(H(X), (1/(n-1)) sum H(X^(i)), sum H(X^(i))) for an n-dimensional pmf array."""
    pmf = np.asarray(joint, dtype=float)
    n = pmf.ndim
    if n < 2:
        raise InvalidInput("Han's inequality needs at least two coordinates")
    if pmf.size > HAN_MAX_ATOMS:
        raise InvalidInput(f"joint has {pmf.size} cells; the limit is {HAN_MAX_ATOMS}")
    if np.any(pmf < 0) or abs(pmf.sum() - 1.0) > dist.PROB_TOL:
        raise InvalidInput("joint pmf must be nonnegative and sum to 1")
    h = _entropy_of(pmf.ravel())
    loo = math.fsum(_entropy_of(pmf.sum(axis=i).ravel()) for i in range(n))
    return h, loo / (n - 1), loo


def _coord_tables(coords: Sequence) -> list[tuple[np.ndarray, np.ndarray]]:
    tables = []
    for c in coords:
        if isinstance(c, DistributionSpec):
            if not c.is_discrete:
                raise InvalidInput("enumeration needs finite coordinate laws")
            v, p = c.support_atoms()
        else:
            v, p = (np.asarray(a, dtype=float) for a in zip(*c))
        keep = p > 0
        tables.append((v[keep], p[keep]))
    return tables


def _enumerate(tables) -> tuple[np.ndarray, np.ndarray]:
    size = math.prod(len(v) for v, _ in tables)
    if size > MAX_ENUMERATION:
        raise InvalidInput(f"enumeration of {size} outcomes exceeds {MAX_ENUMERATION}")
    grids = np.meshgrid(*[v for v, _ in tables], indexing="ij")
    pgrids = np.meshgrid(*[p for _, p in tables], indexing="ij")
    x = np.column_stack([gr.ravel() for gr in grids])
    w = np.prod(np.column_stack([pg.ravel() for pg in pgrids]), axis=1)
    return x, w


def _psi(u: np.ndarray) -> np.ndarray:
    # e^u - u - 1 without cancellation near zero
    return np.expm1(u) - u


def log_sobolev_check(
    coords: Sequence,
    g: Callable,
    s: float,
    variant: str = "symmetrized",
    g_i: Optional[Sequence[Callable]] = None,
) -> IneqCheck:
    """Modified log-Sobolev inequality by exact enumeration.

    lhs = s E(Z e^{sZ}) - E e^{sZ} log E e^{sZ}
    rhs = sum_i E[e^{sZ} psi(-s (Z - Z_i))],  psi(u) = e^u - u - 1.

    ``coords`` lists finite coordinate laws (DistributionSpec or (value, prob)
    pairs). In the symmetrized variant Z_i replaces X_i by an independent
    copy. In the conditional variant Z_i = g_i(X) where g_i must ignore
    coordinate i; by default g_i is the conditional mean E(Z | X_-i).
    Both sides are computed for Z - EZ and rescaled by e^{s EZ}, which keeps
    the exponentials in range and leaves the comparison unchanged.
    """
    if not s > 0:
        raise InvalidInput("s must be positive")
    if variant not in ("conditional", "symmetrized"):
        raise InvalidInput("variant must be 'conditional' or 'symmetrized'")
    tables = _coord_tables(coords)
    x, w = _enumerate(tables)
    z_raw = evaluate_rows(g, x)
    shift = float(np.dot(w, z_raw))
    z = z_raw - shift
    sz = s * z
    log_ew = float(logsumexp(sz, b=w))
    v = sz - log_ew
    # Ent(e^{sZ}) = E e^{sZ} * E_tilted[h(v)], h(v) = e^v (v - 1) + 1 >= 0
    h = v * np.exp(v) - np.expm1(v)
    lhs = math.exp(log_ew) * math.fsum(w * h)
    ew = np.exp(sz)
    rhs = 0.0
    dims = [len(t[0]) for t in tables]
    for i, (vals, probs) in enumerate(tables):
        if variant == "symmetrized":
            acc = np.zeros_like(z)
            for val, q in zip(vals, probs):
                xi = x.copy()
                xi[:, i] = val
                zi = evaluate_rows(g, xi) - shift
                acc += q * _psi(-s * (z - zi))
        else:
            if g_i is not None:
                zi = evaluate_rows(g_i[i], x) - shift
            else:
                zr = z.reshape(dims)
                pr = probs.reshape([-1 if k == i else 1 for k in range(len(dims))])
                zi = np.broadcast_to((zr * pr).sum(axis=i, keepdims=True), zr.shape).ravel()
            acc = _psi(-s * (z - zi))
        rhs += math.fsum(w * ew * acc)
    scale = math.exp(s * shift)
    return IneqCheck("log_sobolev", lhs * scale, rhs * scale, {"variant": variant, "s": s})


def contraction_check(t_set: Sequence[Sequence[float]], phis: Sequence[FunctionSpec], f: FunctionSpec) -> IneqCheck:
    """Contraction principle by enumeration over all Rademacher sign vectors.

    lhs = E f(sup_t |sum X_i phi_i(t_i)| / 2), rhs = E f(L sup_t |sum X_i t_i|)
    with L the largest Lipschitz constant among the phi_i.
    """
    t = np.atleast_2d(np.asarray(t_set, dtype=float))
    n = t.shape[1]
    if len(phis) != n:
        raise InvalidInput(f"need {n} contraction functions, got {len(phis)}")
    if n > 16:
        raise InvalidInput("contraction check enumerates 2^n sign vectors; n must be <= 16")
    if any(p.lipschitz_constant is None for p in phis):
        raise InvalidInput("every phi_i needs a Lipschitz constant")
    if f.convexity != "convex" or f.monotonicity != "nondecreasing":
        raise InvalidInput("f must be tagged convex and nondecreasing")
    for i, p in enumerate(phis):
        if abs(float(p(0.0))) > 1e-12:
            raise InvalidInput(f"phi_{i} must vanish at 0")
        col = t[:, i]
        p.spot_check(min(0.0, col.min()), max(0.0, col.max()))
    big_l = max(p.lipschitz_constant for p in phis)
    mapped = np.column_stack([np.asarray(p(t[:, i]), dtype=float) * np.ones(len(t)) for i, p in enumerate(phis)])
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=n)))
    sup_phi = np.max(np.abs(signs @ mapped.T), axis=1)
    sup_t = np.max(np.abs(signs @ t.T), axis=1)
    top = max(0.5 * sup_phi.max(), big_l * sup_t.max())
    f.spot_check(0.0, top)
    lhs = float(np.mean(f(0.5 * sup_phi)))
    rhs = float(np.mean(f(big_l * sup_t)))
    return IneqCheck("contraction", lhs, rhs, {"L": big_l})


def entropy_power(spec: DistributionSpec) -> float:
    return math.exp(2.0 * dist.entropy(spec)) / (2.0 * math.pi * math.e)


def entropy_power_check(sigma_x: float, sigma_y: float) -> IneqCheck:
    """N(X) + N(Y) <= N(X + Y) for independent centered normals (equality)."""
    if not (sigma_x > 0 and sigma_y > 0):
        raise InvalidInput("standard deviations must be positive")
    nx = entropy_power(DistributionSpec.normal(0.0, sigma_x))
    ny = entropy_power(DistributionSpec.normal(0.0, sigma_y))
    nxy = entropy_power(DistributionSpec.normal(0.0, math.hypot(sigma_x, sigma_y)))
    return IneqCheck("entropy_power", nx + ny, nxy, {"N_x": nx, "N_y": ny, "N_sum": nxy})


def expectation_from_tail(c1: float, c2: float, n: int) -> float:
    """sqrt((1 + log c1) / (n c2)) from a tail of the form c1 e^{-n c2 t^2}."""
    if not c1 > 0:
        raise InvalidInput("c1 must be positive")
    if not c2 > 1.0 / math.e:
        raise InvalidInput("c2 must exceed 1/e")
    if int(n) != n or n < 1:
        raise InvalidInput("n must be a positive integer")
    num = 1.0 + math.log(c1)
    if num < 0:
        raise InvalidInput("1 + log c1 is negative; the bound is undefined")
    return math.sqrt(num / (n * c2))
