"""Closed-form tail bounds and Chernoff exponent optimization.

Every bound returns a :class:`BoundResult`. ``raw_value`` is the formula as
written; ``value`` is clamped to ``[0, cap]`` (cap is 1 for probabilities).
Hypotheses that cannot be checked from the numeric inputs (independence,
martingale structure, zero means) are the caller's responsibility.

A few functions are prefixed ``printed_``. They reproduce statements whose
literal form is false and exist so the verification suite can show that its
oracles catch them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import dist
from .dist import DistributionSpec
from .errors import InvalidInput
from .functions import FunctionSpec
from .numerics import bracket_by_doubling, golden_section

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
T_LIMIT = 1e8


@dataclass(frozen=True)
class BoundResult:
    inequality_id: str
    raw_value: float
    inputs: dict = field(default_factory=dict)
    free_params: dict = field(default_factory=dict)
    preconditions_ok: bool = True
    messages: tuple = ()
    cap: float = 1.0
    value: float = field(init=False)

    def __post_init__(self):
        raw = self.raw_value
        v = 0.0 if math.isnan(raw) else min(self.cap, max(0.0, raw))
        object.__setattr__(self, "value", v)


def _positive(name: str, x: float) -> None:
    if not x > 0:
        raise InvalidInput(f"{name} must be positive, got {x}")


def _exp(x: float) -> float:
    return math.exp(x) if x < 700 else math.inf


# ---------------------------------------------------------------------------
# elementary


def markov(mean: float, t: float) -> BoundResult:
    """P[X >= t] <= EX / t for X >= 0."""
    if mean < 0:
        raise InvalidInput(f"Markov needs a nonnegative mean, got {mean}")
    _positive("t", t)
    return BoundResult("markov", mean / t, {"mean": mean, "t": t})


def g_markov(spec: DistributionSpec, g: FunctionSpec, t: float) -> BoundResult:
    """P[X >= t] <= E g(X) / g(t) for nondecreasing nonnegative g."""
    lo, hi = spec.support
    if lo < 0:
        raise InvalidInput("g-Markov needs a law supported on [0, inf)")
    if g.monotonicity != "nondecreasing":
        raise InvalidInput("g-Markov needs g tagged nondecreasing")
    top = max(t, hi if math.isfinite(hi) else t)
    g.spot_check(0.0, top)
    gt = float(g(t))
    if not gt > 0:
        raise InvalidInput(f"g(t) must be positive, got {gt}")
    eg = dist.expect(spec, g)
    return BoundResult("g_markov", eg / gt, {"spec": spec.to_dict(), "g": g.name, "t": t}, {"E_g": eg})


def chebyshev(variance: float, t: float) -> BoundResult:
    """P[|X - EX| >= t] <= Var(X) / t^2."""
    if variance < 0:
        raise InvalidInput(f"variance must be nonnegative, got {variance}")
    _positive("t", t)
    return BoundResult("chebyshev", variance / t**2, {"variance": variance, "t": t})


def normal_tail_bounds(t: float) -> tuple[BoundResult, float]:
    """Mills-ratio sandwich for P[|Z| >= t], Z standard normal.

    Returns the upper bound as a BoundResult and the lower bound as a float.
    """
    _positive("t", t)
    core = SQRT_2_OVER_PI * math.exp(-0.5 * t * t)
    upper = BoundResult("normal_upper", core / t, {"t": t})
    return upper, core * t / (1.0 + t * t)


def normal_lower(t: float) -> BoundResult:
    _, lower = normal_tail_bounds(t)
    return BoundResult("normal_lower", lower, {"t": t})


# ---------------------------------------------------------------------------
# Chernoff family


def _side_sign(side: str) -> int:
    if side not in ("upper", "lower"):
        raise InvalidInput(f"side must be 'upper' or 'lower', got {side!r}")
    return 1 if side == "upper" else -1


def chernoff_point(spec: DistributionSpec, a: float, t: float, side: str = "upper") -> BoundResult:
    """e^{-at} M_X(t) at a caller-chosen t (t > 0 upper tail, t < 0 lower tail)."""
    sign = _side_sign(side)
    if sign * t <= 0:
        raise InvalidInput(f"side={side} needs {'t > 0' if sign > 0 else 't < 0'}, got t={t}")
    log_b = -a * t + dist.log_mgf(spec, t)
    return BoundResult(
        f"chernoff_{side}", _exp(log_b), {"spec": spec.to_dict(), "a": a, "t": t, "side": side}, {"t": t}
    )


def _minimize_log_bound(spec: DistributionSpec, a: float, sign: int, n: int) -> tuple[float, float]:
    """min over s >= 0 of -a*(sign*s) + n*log M(sign*s); returns (s*, value)."""

    def f(s: float) -> float:
        return -a * sign * s + n * dist.log_mgf(spec, sign * s)

    def df(s: float) -> float:
        return sign * (-a + n * dist.dlog_mgf(spec, sign * s))

    lo, hi = bracket_by_doubling(f, start=1e-4, limit=T_LIMIT)
    best = golden_section(f, lo, hi, tol=1e-12, max_iter=200)
    s_star, f_star = best.x, best.fx
    # golden section resolves s only to ~sqrt(machine eps); finish on the
    # monotone derivative when it brackets a root
    d_lo, d_hi = df(lo), df(hi)
    if d_lo < 0 < d_hi:
        a_, b_ = lo, hi
        for _ in range(200):
            mid = 0.5 * (a_ + b_)
            if mid in (a_, b_):
                break
            if df(mid) < 0:
                a_ = mid
            else:
                b_ = mid
        s_pol = 0.5 * (a_ + b_)
        f_pol = f(s_pol)
        if f_pol <= f_star + 1e-12 * max(1.0, abs(f_star)):
            s_star, f_star = s_pol, min(f_pol, f_star)
    return s_star, min(f_star, 0.0)


def chernoff_optimize(spec: DistributionSpec, a: float, side: str = "upper", n_iid: int = 1) -> BoundResult:
    """inf_t e^{-at} M_X(t)^n for the sum of n iid copies of X.

    Upper side bounds P[S >= a] over t > 0, lower side P[S <= a] over t < 0.
    The exponent is convex in t; the minimizer is bracketed by doubling from
    t = 1e-4 and located by golden-section search.
    """
    sign = _side_sign(side)
    if int(n_iid) != n_iid or n_iid < 1:
        raise InvalidInput(f"n_iid must be a positive integer, got {n_iid}")
    n = int(n_iid)
    inputs = {"spec": spec.to_dict(), "a": a, "side": side, "n": n}
    ident = f"chernoff_sum_{side}"
    center = n * spec.mean
    if (sign > 0 and a <= center) or (sign < 0 and a >= center):
        return BoundResult(ident, 1.0, inputs, {"t": 0.0}, messages=("threshold on the mean side: trivial bound",))
    s, log_b = _minimize_log_bound(spec, a, sign, n)
    msgs = ("optimum at the search limit; bound is the limiting value",) if s >= T_LIMIT else ()
    return BoundResult(ident, math.exp(log_b), inputs, {"t": sign * s, "log_bound": log_b}, messages=msgs)


def chernoff_mean_constant(spec: DistributionSpec, epsilon: float) -> tuple[float, float, float]:
    """(c, t_u, t_v) with P[|mean_n - EX| > eps] <= 2 c^n.

    c_U = min_{t>0} E e^{t(X - EX - eps)} and c_V = min_{t>0} E e^{t(EX - X - eps)};
    c = max(c_U, c_V). ``t_v`` is reported as the exponent applied to X, so it
    is negative and a symmetric law gives t_u = -t_v.
    """
    _positive("epsilon", epsilon)
    mu = spec.mean
    s_u, log_u = _minimize_log_bound(spec, mu + epsilon, +1, 1)
    s_v, log_v = _minimize_log_bound(spec, mu - epsilon, -1, 1)
    c = math.exp(max(log_u, log_v))
    if not c < 1.0:
        raise InvalidInput("no MGF contraction found near zero; the MGF may be unbounded")
    return c, s_u, -s_v


def chernoff_mean(spec: DistributionSpec, epsilon: float, n: int) -> BoundResult:
    c, t_u, t_v = chernoff_mean_constant(spec, epsilon)
    raw = 2.0 * c**n
    return BoundResult(
        "chernoff_mean", raw, {"spec": spec.to_dict(), "epsilon": epsilon, "n": n}, {"c": c, "t_u": t_u, "t_v": t_v}
    )


POISSON_VARIANTS = ("I", "II", "III", "IV", "V")


def chernoff_poisson_trials(mu: float, variant: str, param: float) -> BoundResult:
    """Bounds for a sum of independent Bernoulli(p_i) trials with mean mu.

    I, II bound P[X >= (1+d) mu]; III bounds P[X >= R] for R >= 6 mu;
    IV, V bound P[X <= (1-d) mu].
    """
    _positive("mu", mu)
    if variant not in POISSON_VARIANTS:
        raise InvalidInput(f"variant must be one of {POISSON_VARIANTS}")
    d = param
    if variant == "I":
        _positive("delta", d)
        log_b = mu * (d - (1.0 + d) * math.log1p(d))
    elif variant == "II":
        if not 0 < d <= 1:
            raise InvalidInput(f"variant II needs 0 < delta <= 1, got {d}")
        log_b = -mu * d * d / 3.0
    elif variant == "III":
        if not d >= 6.0 * mu:
            raise InvalidInput(f"variant III needs R >= 6*mu = {6 * mu:g}, got {d}")
        log_b = -d * math.log(2.0)
    else:
        if not 0 < d < 1:
            raise InvalidInput(f"variant {variant} needs 0 < delta < 1, got {d}")
        if variant == "IV":
            log_b = mu * (-d - (1.0 - d) * math.log1p(-d))
        else:
            log_b = -d * d * mu / 2.0
    key = "R" if variant == "III" else "delta"
    ident = f"ptrials_{POISSON_VARIANTS.index(variant) + 1}"
    return BoundResult(ident, math.exp(log_b), {"mu": mu, "variant": variant, key: d})


def chernoff_rademacher(n: int, a: float, two_sided: bool = False) -> BoundResult:
    """P[S >= a] <= e^{-a^2/2n} for a sum of n Rademacher signs (doubled for |S|)."""
    _positive("n", n)
    _positive("a", a)
    raw = math.exp(-a * a / (2.0 * n)) * (2.0 if two_sided else 1.0)
    ident = "rademacher_two" if two_sided else "rademacher_one"
    return BoundResult(ident, raw, {"n": n, "a": a, "two_sided": two_sided})


BERNOULLI_VARIANTS = ("I", "II", "III", "IV")


def chernoff_bernoulli(n: int, variant: str, param: float) -> BoundResult:
    """Bounds for X ~ Binomial(n, 1/2).

    I:   P[X <= n/2 - a]        <= 2 e^{-2a^2/n},   0 < a < n/2
    II:  P[X <= (n/2)(1 - d)]   <= 2 e^{-n d^2/2},  0 < d < 1
    III: P[X >= n/2 + a]        <= 2 e^{-2a^2/n},   a > 0
    IV:  P[X >= (n/2)(1 + d)]   <= 2 e^{-n d^2/2},  d > 0
    """
    _positive("n", n)
    if variant not in BERNOULLI_VARIANTS:
        raise InvalidInput(f"variant must be one of {BERNOULLI_VARIANTS}")
    x = param
    if variant == "I" and not 0 < x < n / 2:
        raise InvalidInput(f"variant I needs 0 < a < n/2, got {x}")
    if variant == "II" and not 0 < x < 1:
        raise InvalidInput(f"variant II needs 0 < delta < 1, got {x}")
    if variant in ("III", "IV"):
        _positive("a" if variant == "III" else "delta", x)
    if variant in ("I", "III"):
        raw, key = 2.0 * math.exp(-2.0 * x * x / n), "a"
    else:
        raw, key = 2.0 * math.exp(-n * x * x / 2.0), "delta"
    ident = f"bernoulli_{BERNOULLI_VARIANTS.index(variant) + 1}"
    return BoundResult(ident, raw, {"n": n, "variant": variant, key: x})


# ---------------------------------------------------------------------------
# Hoeffding, unimodal and sample-based


def hoeffding_general(ranges: Sequence[Sequence[float]], epsilon: float, t: Optional[float] = None) -> BoundResult:
    """P[sum Y_i >= eps] <= e^{-t eps} prod e^{t^2 (b_i - a_i)^2 / 8}, zero-mean Y_i in [a_i, b_i].

    Without ``t`` the exponent is minimized analytically at t = 4 eps / sum (b_i - a_i)^2.
    """
    _positive("epsilon", epsilon)
    ranges = [(float(a), float(b)) for a, b in ranges]
    if not ranges:
        raise InvalidInput("need at least one range")
    if any(b < a for a, b in ranges):
        raise InvalidInput("each range needs a_i <= b_i")
    width2 = math.fsum((b - a) ** 2 for a, b in ranges)
    inputs = {"ranges": [list(r) for r in ranges], "epsilon": epsilon}
    msgs: tuple = ()
    if width2 == 0:
        msgs = ("all ranges are degenerate: the sum is identically zero",)
    if t is not None:
        _positive("t", t)
        return BoundResult("hoeffding_1", _exp(-t * epsilon + t * t * width2 / 8.0), inputs, {"t": t}, messages=msgs)
    if width2 == 0:
        return BoundResult("hoeffding_1", 0.0, inputs, {"t": math.inf}, messages=msgs)
    t_star = 4.0 * epsilon / width2
    return BoundResult("hoeffding_1", math.exp(-2.0 * epsilon**2 / width2), inputs, {"t": t_star})


def hoeffding_bernoulli_mean(n: int, epsilon: float) -> BoundResult:
    """P[|mean - p| >= eps] <= 2 e^{-2 n eps^2} for n iid Bernoulli(p)."""
    _positive("n", n)
    _positive("epsilon", epsilon)
    msgs = ("epsilon >= 1: the event is empty",) if epsilon >= 1 else ()
    return BoundResult("hoeffding_2", 2.0 * math.exp(-2.0 * n * epsilon**2), {"n": n, "epsilon": epsilon}, messages=msgs)


def printed_hoeffding_bernoulli_sum(n: int, epsilon: float) -> BoundResult:
    """Known-false control: 2 e^{-2 n eps^2} claimed for |sum - np| >= eps."""
    _positive("n", n)
    _positive("epsilon", epsilon)
    return BoundResult("hoeffding_2_printed", 2.0 * math.exp(-2.0 * n * epsilon**2), {"n": n, "epsilon": epsilon})


def gauss_unimodal(tau: float, epsilon: float) -> BoundResult:
    """P[|X - mode| > eps] for unimodal X with tau^2 = E(X - mode)^2."""
    _positive("tau", tau)
    if epsilon < 0:
        raise InvalidInput("epsilon must be nonnegative")
    if epsilon >= math.sqrt(4.0 / 3.0) * tau:
        raw, branch = 4.0 * tau**2 / (9.0 * epsilon**2), "tail"
    else:
        raw, branch = 1.0 - epsilon / (tau * math.sqrt(3.0)), "center"
    return BoundResult("gauss", raw, {"tau": tau, "epsilon": epsilon}, {"branch": branch})


def vysochanskii_petunin(xi: float, epsilon: float) -> BoundResult:
    """P[|X - alpha| > eps] for unimodal X with xi^2 = E(X - alpha)^2.

    Below eps = sqrt(8/3) xi the bound is 4 xi^2 / (3 eps^2) - 1/3, which
    meets the tail branch 4 xi^2 / (9 eps^2) continuously at the threshold.
    """
    _positive("xi", xi)
    _positive("epsilon", epsilon)
    if epsilon >= math.sqrt(8.0 / 3.0) * xi:
        raw, branch = 4.0 * xi**2 / (9.0 * epsilon**2), "tail"
    else:
        raw, branch = 4.0 * xi**2 / (3.0 * epsilon**2) - 1.0 / 3.0, "center"
    return BoundResult("vp", raw, {"xi": xi, "epsilon": epsilon}, {"branch": branch})


def printed_vysochanskii_petunin(xi: float, epsilon: float) -> BoundResult:
    """Known-false control: center branch written as 4 xi^2 / (9 eps^2) - 1/3."""
    _positive("xi", xi)
    _positive("epsilon", epsilon)
    raw = 4.0 * xi**2 / (9.0 * epsilon**2)
    if epsilon < math.sqrt(8.0 / 3.0) * xi:
        raw -= 1.0 / 3.0
    return BoundResult("vp_printed", raw, {"xi": xi, "epsilon": epsilon})


def _saw_recipe(n: int, beta: float) -> tuple[float, int, float]:
    nu = math.ceil((n + 1) / beta) - 1  # largest integer strictly below (n+1)/beta
    alpha = (n + 1) * (n + 1 - nu) / (1 + nu * (n + 1 - nu))
    count = nu - 1 if (nu % 2 == 1 and beta > alpha) else nu
    return count / (n + 1), nu, alpha


def _saw_args(n, k) -> int:
    if int(n) != n or n < 2:
        raise InvalidInput(f"n must be an integer >= 2, got {n}")
    _positive("k", k)
    return int(n)


def saw_bound(n: int, k: float) -> BoundResult:
    """Chebyshev-type bound with estimated mean and deviation.

    Bounds P[|X - mean_n| >= k S_n] for a fresh draw X from a continuous
    parent, independent of the sample, with S_n the 1/(n-1) sample deviation.
    Writing e_i for deviations from the mean of all n+1 values, X triggers the
    event iff e_{n+1}^2 >= (beta/(n+1)) sum e_i^2 with
    beta = n^2 k^2 / (n^2 - 1 + n k^2); the parity rule then caps how many of
    the n+1 exchangeable values can do so at once.
    """
    n = _saw_args(n, k)
    beta = n * n * k * k / (n * n - 1 + n * k * k)
    raw, nu, alpha = _saw_recipe(n, beta)
    return BoundResult("saw", raw, {"n": n, "k": k}, {"beta": beta, "nu": nu, "alpha": alpha})


def printed_saw_bound(n: int, k: float) -> BoundResult:
    """Known-false control: the same recipe with beta = n(n+1)k^2 / (n-1 + (n+1)k^2)."""
    n = _saw_args(n, k)
    beta = n * (n + 1) * k * k / (n - 1 + (n + 1) * k * k)
    raw, nu, alpha = _saw_recipe(n, beta)
    return BoundResult("saw_printed", raw, {"n": n, "k": k}, {"beta": beta, "nu": nu, "alpha": alpha})


# ---------------------------------------------------------------------------
# martingales and bounded differences


def azuma(c: Sequence[float], lam: float, side: str = "one", printed: bool = False) -> BoundResult:
    """P[X_n - X_0 >= lam] <= e^{-lam^2 / (2 sum c_i^2)} for a c-Lipschitz martingale.

    side='two' doubles the bound for |X_n - X_0| >= lam; ``printed`` keeps the
    one-sided event but carries the factor 2.
    """
    c = [float(x) for x in c]
    if not c or any(not x > 0 for x in c):
        raise InvalidInput("increment bounds c_i must be positive")
    _positive("lambda", lam)
    if side not in ("one", "two"):
        raise InvalidInput("side must be 'one' or 'two'")
    core = math.exp(-lam * lam / (2.0 * math.fsum(x * x for x in c)))
    factor = 2.0 if (side == "two" or printed) else 1.0
    return BoundResult("azuma", factor * core, {"c": c, "lambda": lam, "side": side, "printed": printed})


def bennett_h(u: float) -> float:
    return (1.0 + u) * math.log1p(u) - u


def bennett(n: int, sigma2: float, t: float) -> BoundResult:
    """P[sum X_i > t] <= exp(-n s2 h(t / (n s2))) for zero-mean X_i <= 1."""
    _positive("n", n)
    _positive("sigma2", sigma2)
    _positive("t", t)
    v = n * sigma2
    return BoundResult("bennett", math.exp(-v * bennett_h(t / v)), {"n": n, "sigma2": sigma2, "t": t})


def bernstein(n: int, sigma2: float, epsilon: float) -> BoundResult:
    """P[mean X_i > eps] <= exp(-n eps^2 / (2 (s2 + eps/3))) for zero-mean X_i <= 1."""
    _positive("n", n)
    if sigma2 < 0:
        raise InvalidInput("sigma2 must be nonnegative")
    _positive("epsilon", epsilon)
    raw = math.exp(-n * epsilon**2 / (2.0 * (sigma2 + epsilon / 3.0)))
    return BoundResult("bernstein", raw, {"n": n, "sigma2": sigma2, "epsilon": epsilon})


def _sum_sq(c: Sequence[float]) -> float:
    c = [float(x) for x in c]
    if not c or any(not x > 0 for x in c):
        raise InvalidInput("bounded-difference constants c_i must be positive")
    return math.fsum(x * x for x in c)


def mcdiarmid(c: Sequence[float], t: float, side: str = "upper") -> BoundResult:
    """P[f - Ef >= t] (upper) or P[f - Ef <= -t] (lower) <= e^{-2t^2 / sum c_i^2}."""
    _side_sign(side)
    _positive("t", t)
    s = _sum_sq(c)
    return BoundResult(f"mcdiarmid_{side}", math.exp(-2.0 * t * t / s), {"c": list(c), "t": t, "side": side})


def printed_mcdiarmid(c: Sequence[float], t: float) -> BoundResult:
    """Known-false control: P[f - Ef >= t] >= e^{-t^2 / sum c_i^2} (a lower bound)."""
    _positive("t", t)
    s = _sum_sq(c)
    return BoundResult("mcdiarmid_printed", math.exp(-t * t / s), {"c": list(c), "t": t})


def dkw_threshold(n: int) -> float:
    return math.sqrt(math.log(2.0) / (2.0 * n))


def dkw(n: int, epsilon: float, side: str = "two") -> BoundResult:
    """P[sup (F_n - F) > eps] <= e^{-2 n eps^2}; two-sided |F_n - F| doubles it."""
    _positive("n", n)
    _positive("epsilon", epsilon)
    if side not in ("one", "two"):
        raise InvalidInput("side must be 'one' or 'two'")
    if side == "one" and not epsilon > dkw_threshold(n):
        raise InvalidInput(f"one-sided DKW needs epsilon > sqrt(log 2 / 2n) = {dkw_threshold(n):.6g}")
    raw = math.exp(-2.0 * n * epsilon**2) * (2.0 if side == "two" else 1.0)
    return BoundResult(f"dkw_{side}", raw, {"n": n, "epsilon": epsilon, "side": side})


# ---------------------------------------------------------------------------
# maximal inequalities and misc


def etemadi_combinator(per_k_tails: Sequence[float]) -> BoundResult:
    """P[max_k |S_k| >= 3 eps] <= 3 max_k P[|S_k| >= eps]."""
    tails = [float(x) for x in per_k_tails]
    if not tails:
        raise InvalidInput("need at least one partial-sum tail probability")
    if any(not 0 <= x <= 1 for x in tails):
        raise InvalidInput("per-k tails must be probabilities")
    return BoundResult("etemadi_1", 3.0 * max(tails), {"per_k_tails": tails})


def etemadi_variance(var_sn: float, epsilon: float) -> BoundResult:
    """P[max_k |S_k| >= eps] <= 27 Var(S_n) / eps^2."""
    if var_sn < 0:
        raise InvalidInput("variance must be nonnegative")
    _positive("epsilon", epsilon)
    return BoundResult("etemadi_2", 27.0 * var_sn / epsilon**2, {"var_sn": var_sn, "epsilon": epsilon})


def kolmogorov_maximal(variances: Sequence[float], epsilon: float) -> BoundResult:
    """P[max_k |S_k| >= eps] <= sum Var(X_i) / eps^2 for independent zero-mean X_i."""
    v = [float(x) for x in variances]
    if not v or any(x < 0 for x in v):
        raise InvalidInput("variances must be a nonempty list of nonnegative numbers")
    _positive("epsilon", epsilon)
    return BoundResult("kolmogorov", math.fsum(v) / epsilon**2, {"variances": v, "epsilon": epsilon})


def multidim_chebyshev(dim: int, t: float) -> BoundResult:
    """P[sqrt((X - EX)' V^-1 (X - EX)) >= t] <= dim / t^2."""
    if int(dim) != dim or dim < 1:
        raise InvalidInput(f"dim must be a positive integer, got {dim}")
    _positive("t", t)
    return BoundResult("chebyshev_multi", dim / t**2, {"dim": int(dim), "t": t})


def lecam_tv_bound(p: Sequence[float]) -> BoundResult:
    """L1 distance between Poisson-binomial(p) and Poisson(sum p) is <= 2 sum p_i^2."""
    p = [float(x) for x in p]
    if not p or any(not 0 <= x <= 1 for x in p):
        raise InvalidInput("success probabilities must lie in [0, 1]")
    return BoundResult("lecam", 2.0 * math.fsum(x * x for x in p), {"p": p}, cap=2.0)


def doob_maximal(expectation_xn_p: float, C: float, p: float = 1.0) -> BoundResult:
    """P[max_i X_i >= C] <= E X_n^p / C^p for a nonnegative submartingale."""
    if expectation_xn_p < 0:
        raise InvalidInput("E X_n^p must be nonnegative")
    _positive("C", C)
    if not p >= 1:
        raise InvalidInput(f"p must be >= 1, got {p}")
    return BoundResult("doob", expectation_xn_p / C**p, {"expectation": expectation_xn_p, "C": C, "p": p})


# ---------------------------------------------------------------------------


def invert_threshold(bound: Callable[[float], BoundResult], level: float, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Smallest threshold in [lo, hi] at which a nonincreasing bound drops to ``level``."""
    if not 0 < level < 1:
        raise InvalidInput("level must lie in (0, 1)")
    if bound(hi).value > level:
        raise InvalidInput(f"bound at hi={hi} is still above {level}")
    if bound(lo).value <= level:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if bound(mid).value > level:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(hi)):
            break
    return hi
