"""Named inequalities: parameter parsing and a uniform BoundResult interface.

Each entry says whether its value is an upper or a lower bound on the true
quantity, so the verification suite can orient the comparison. Entries with
``control=True`` reproduce statements known to be false.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

from . import estimation, events, orderstats, tails
from .dist import DistributionSpec, parse_spec
from .errors import InvalidInput
from .functions import named_function
from .moments import variance_range_bounds
from .tails import BoundResult


def _to_float(v) -> float:
    try:
        out = float(v)
    except (TypeError, ValueError):
        raise InvalidInput(f"expected a number, got {v!r}") from None
    if math.isnan(out):
        raise InvalidInput("NaN is not a valid parameter")
    return out


def _to_int(v) -> int:
    f = _to_float(v)
    if f != int(f):
        raise InvalidInput(f"expected an integer, got {v!r}")
    return int(f)


def _maybe_json(v):
    if isinstance(v, str):
        try:
            return json.loads(v)
        except json.JSONDecodeError:
            return v
    return v


def _to_floats(v) -> list:
    v = _maybe_json(v)
    if isinstance(v, str):
        v = [x for x in v.replace(";", ",").split(",") if x.strip()]
    if isinstance(v, (int, float)):
        v = [v]
    return [_to_float(x) for x in v]


def _to_pairs(v) -> list:
    v = _maybe_json(v)
    if not isinstance(v, list) or not all(isinstance(p, (list, tuple)) and len(p) == 2 for p in v):
        raise InvalidInput("expected a list of [a, b] pairs")
    return [(_to_float(a), _to_float(b)) for a, b in v]


def _to_spec(v) -> DistributionSpec:
    if isinstance(v, DistributionSpec):
        return v
    if isinstance(v, dict):
        return DistributionSpec.from_dict(v)
    return parse_spec(str(v))


def _to_space(v):
    text = v if isinstance(v, str) else json.dumps(v)
    return events.space_from_json(text)


def _to_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes"):
        return True
    if s in ("0", "false", "no"):
        return False
    raise InvalidInput(f"expected a boolean, got {v!r}")


CONVERTERS = {
    "float": _to_float,
    "int": _to_int,
    "floats": _to_floats,
    "pairs": _to_pairs,
    "spec": _to_spec,
    "func": lambda v: named_function(str(v)),
    "str": str,
    "bool": _to_bool,
    "space": _to_space,
}


@dataclass(frozen=True)
class Entry:
    ident: str
    fn: Callable[..., BoundResult]
    params: dict
    optional: dict = field(default_factory=dict)
    direction: str = "upper"
    control: bool = False
    summary: str = ""
    aliases: dict = field(default_factory=dict)

    def parse(self, raw: dict) -> dict:
        raw = {self.aliases.get(k, k): v for k, v in raw.items()}
        unknown = set(raw) - set(self.params) - set(self.optional)
        if unknown:
            raise InvalidInput(f"{self.ident}: unknown parameters {sorted(unknown)}")
        missing = [k for k in self.params if k not in raw]
        if missing:
            raise InvalidInput(f"{self.ident}: missing required parameter {missing[0]!r}")
        kinds = {**self.params, **self.optional}
        return {k: CONVERTERS[kinds[k]](v) for k, v in raw.items()}

    def evaluate(self, raw: dict) -> BoundResult:
        return self.fn(**self.parse(raw))


REGISTRY: dict[str, Entry] = {}


def register(ident, fn, params, optional=None, direction="upper", control=False, summary="", aliases=None):
    REGISTRY[ident] = Entry(ident, fn, dict(params), dict(optional or {}), direction, control, summary, dict(aliases or {}))


def _result(ident, raw, inputs, cap=1.0, **free):
    return BoundResult(ident, raw, inputs, free, cap=cap)


# elementary and Chernoff -----------------------------------------------------

register("markov", tails.markov, {"mean": "float", "t": "float"}, summary="P[X >= t] <= EX/t, X >= 0")
register(
    "g_markov",
    lambda spec, g, t: tails.g_markov(spec, g, t),
    {"spec": "spec", "g": "func", "t": "float"},
    summary="P[X >= t] <= E g(X)/g(t), g nondecreasing",
)
register(
    "chebyshev",
    lambda variance, t: tails.chebyshev(variance, t),
    {"variance": "float", "t": "float"},
    summary="P[|X - EX| >= t] <= Var/t^2",
    aliases={"var": "variance"},
)
register("normal_upper", lambda t: tails.normal_tail_bounds(t)[0], {"t": "float"}, summary="P[|Z| >= t] <= sqrt(2/pi) e^{-t^2/2}/t")
register("normal_lower", tails.normal_lower, {"t": "float"}, direction="lower", summary="P[|Z| >= t] >= sqrt(2/pi) e^{-t^2/2} t/(1+t^2)")
register("chernoff_upper", lambda spec, a, t: tails.chernoff_point(spec, a, t, "upper"), {"spec": "spec", "a": "float", "t": "float"}, summary="P[X >= a] <= e^{-at} M(t), t > 0")
register("chernoff_lower", lambda spec, a, t: tails.chernoff_point(spec, a, t, "lower"), {"spec": "spec", "a": "float", "t": "float"}, summary="P[X <= a] <= e^{-at} M(t), t < 0")
register(
    "chernoff_sum_upper",
    lambda spec, a, n=1: tails.chernoff_optimize(spec, a, "upper", n),
    {"spec": "spec", "a": "float"},
    {"n": "int"},
    summary="P[S_n >= a] <= inf_t e^{-at} M(t)^n",
)
register(
    "chernoff_sum_lower",
    lambda spec, a, n=1: tails.chernoff_optimize(spec, a, "lower", n),
    {"spec": "spec", "a": "float"},
    {"n": "int"},
    summary="P[S_n <= a] <= inf_t e^{-at} M(t)^n",
)
register(
    "chernoff_mean",
    tails.chernoff_mean,
    {"spec": "spec", "epsilon": "float", "n": "int"},
    summary="P[|mean_n - EX| > eps] <= 2 c^n",
    aliases={"eps": "epsilon"},
)
for _i, _v in enumerate(tails.POISSON_VARIANTS, start=1):
    _key = "R" if _v == "III" else "delta"
    register(
        f"ptrials_{_i}",
        (lambda v, key: (lambda mu, **kw: tails.chernoff_poisson_trials(mu, v, kw[key])))(_v, _key),
        {"mu": "float", _key: "float"},
        summary=f"Poisson trials, variant {_v}",
    )
register("rademacher_one", lambda n, a: tails.chernoff_rademacher(n, a, False), {"n": "int", "a": "float"}, summary="P[S >= a] <= e^{-a^2/2n}")
register("rademacher_two", lambda n, a: tails.chernoff_rademacher(n, a, True), {"n": "int", "a": "float"}, summary="P[|S| >= a] <= 2 e^{-a^2/2n}")
for _i, _v in enumerate(tails.BERNOULLI_VARIANTS, start=1):
    _key = "a" if _v in ("I", "III") else "delta"
    register(
        f"bernoulli_{_i}",
        (lambda v, key: (lambda n, **kw: tails.chernoff_bernoulli(n, v, kw[key])))(_v, _key),
        {"n": "int", _key: "float"},
        summary=f"Binomial(n, 1/2), variant {_v}",
    )
register(
    "bernoulli_4_printed",
    lambda n, delta: _result("bernoulli_4_printed", 2.0 * math.exp(-n * delta * delta / 2.0), {"n": n, "delta": delta}),
    {"n": "int", "delta": "float"},
    control=True,
    summary="control: 2e^{-n d^2/2} claimed for P[X <= (n/2)(1+d)]",
)

# Hoeffding, unimodal, sample-based ------------------------------------------

register(
    "hoeffding_1",
    lambda ranges, epsilon, t=None: tails.hoeffding_general(ranges, epsilon, t),
    {"ranges": "pairs", "epsilon": "float"},
    {"t": "float"},
    summary="P[sum Y_i >= eps] <= e^{-2 eps^2 / sum (b_i-a_i)^2}",
    aliases={"eps": "epsilon"},
)
register("hoeffding_2", tails.hoeffding_bernoulli_mean, {"n": "int", "epsilon": "float"}, summary="P[|mean - p| >= eps] <= 2e^{-2n eps^2}", aliases={"eps": "epsilon"})
register(
    "hoeffding_2_printed",
    tails.printed_hoeffding_bernoulli_sum,
    {"n": "int", "epsilon": "float"},
    control=True,
    summary="control: 2e^{-2n eps^2} claimed for |sum - np| >= eps",
    aliases={"eps": "epsilon"},
)
register("gauss", tails.gauss_unimodal, {"tau": "float", "epsilon": "float"}, summary="unimodal, about the mode", aliases={"eps": "epsilon"})
register("vp", tails.vysochanskii_petunin, {"xi": "float", "epsilon": "float"}, summary="unimodal, about any point", aliases={"eps": "epsilon"})
register("vp_printed", tails.printed_vysochanskii_petunin, {"xi": "float", "epsilon": "float"}, control=True, summary="control: center branch 4xi^2/(9eps^2) - 1/3", aliases={"eps": "epsilon"})
register("saw", tails.saw_bound, {"n": "int", "k": "float"}, summary="P[|X - mean_n| >= k S_n], fresh X")
register("saw_printed", tails.printed_saw_bound, {"n": "int", "k": "float"}, control=True, summary="control: recipe with beta = n(n+1)k^2/(n-1+(n+1)k^2)")

# martingales, bounded differences, maximal ----------------------------------

register(
    "azuma",
    lambda c, lam, side="one", printed=False: tails.azuma(c, lam, side, printed),
    {"c": "floats", "lam": "float"},
    {"side": "str", "printed": "bool"},
    summary="P[X_n - X_0 >= lam] <= e^{-lam^2 / 2 sum c^2}",
    aliases={"lambda": "lam"},
)
register("bennett", tails.bennett, {"n": "int", "sigma2": "float", "t": "float"}, summary="P[sum X > t] <= e^{-n s2 h(t/(n s2))}")
register("bernstein", tails.bernstein, {"n": "int", "sigma2": "float", "epsilon": "float"}, summary="P[mean X > eps] <= e^{-n eps^2/(2(s2 + eps/3))}", aliases={"eps": "epsilon"})
register("mcdiarmid_upper", lambda c, t: tails.mcdiarmid(c, t, "upper"), {"c": "floats", "t": "float"}, summary="P[f - Ef >= t] <= e^{-2t^2/sum c^2}")
register("mcdiarmid_lower", lambda c, t: tails.mcdiarmid(c, t, "lower"), {"c": "floats", "t": "float"}, summary="P[f - Ef <= -t] <= e^{-2t^2/sum c^2}")
register(
    "mcdiarmid_printed",
    tails.printed_mcdiarmid,
    {"c": "floats", "t": "float"},
    direction="lower",
    control=True,
    summary="control: P[f - Ef >= t] >= e^{-t^2/sum c^2}",
)
register("dkw_one", lambda n, epsilon: tails.dkw(n, epsilon, "one"), {"n": "int", "epsilon": "float"}, summary="P[sup(F_n - F) > eps] <= e^{-2n eps^2}", aliases={"eps": "epsilon"})
register("dkw_two", lambda n, epsilon: tails.dkw(n, epsilon, "two"), {"n": "int", "epsilon": "float"}, summary="P[sup|F_n - F| > eps] <= 2e^{-2n eps^2}", aliases={"eps": "epsilon"})
register("etemadi_1", tails.etemadi_combinator, {"per_k_tails": "floats"}, summary="P[max|S_k| >= 3eps] <= 3 max P[|S_k| >= eps]", aliases={"tails": "per_k_tails"})
register("etemadi_2", tails.etemadi_variance, {"var_sn": "float", "epsilon": "float"}, summary="P[max|S_k| >= eps] <= 27 Var(S_n)/eps^2", aliases={"var": "var_sn", "eps": "epsilon"})
register("kolmogorov", tails.kolmogorov_maximal, {"variances": "floats", "epsilon": "float"}, summary="P[max|S_k| >= eps] <= sum Var/eps^2", aliases={"eps": "epsilon"})
register("chebyshev_multi", tails.multidim_chebyshev, {"dim": "int", "t": "float"}, summary="P[Mahalanobis radius >= t] <= dim/t^2")
register("lecam", tails.lecam_tv_bound, {"p": "floats"}, summary="L1(PoissonBinomial, Poisson) <= 2 sum p^2")
register(
    "doob",
    lambda expectation, C, p=1.0: tails.doob_maximal(expectation, C, p),
    {"expectation": "float", "C": "float"},
    {"p": "float"},
    summary="P[max X_i >= C] <= E X_n^p / C^p",
)

# events -------------------------------------------------------------------


def _union_upper(space):
    sp, evs = space
    lo, hi = events.boole_union_bounds(sp, evs)
    return _result("boole_union", hi, {"events": len(evs)})


def _union_lower(space):
    sp, evs = space
    lo, hi = events.boole_union_bounds(sp, evs)
    return _result("union_lower", lo, {"events": len(evs)})


def _bonferroni(space):
    sp, evs = space
    return _result("bonferroni", events.bonferroni_intersection(sp, evs), {"events": len(evs)})


def _karlin_ost(space, depth, side):
    sp, evs = space
    lo, hi = events.karlin_ost_truncation(sp, evs, depth)
    return _result(f"karlin_ost_{side}", hi if side == "upper" else lo, {"events": len(evs), "depth": depth})


register("boole_union", _union_upper, {"space": "space"}, summary="P[union] <= sum P[A_i]")
register("union_lower", _union_lower, {"space": "space"}, direction="lower", summary="P[union] >= max P[A_i]")
register("bonferroni", _bonferroni, {"space": "space"}, direction="lower", summary="P[intersection] >= sum P[A_i] - (n-1)")
register("karlin_ost_upper", lambda space, depth: _karlin_ost(space, depth, "upper"), {"space": "space", "depth": "int"}, summary="truncated inclusion-exclusion, upper side")
register(
    "karlin_ost_lower",
    lambda space, depth: _karlin_ost(space, depth, "lower"),
    {"space": "space", "depth": "int"},
    direction="lower",
    summary="truncated inclusion-exclusion, lower side",
)

# variances ------------------------------------------------------------------

register(
    "bhatia_davis",
    lambda spec: _result("bhatia_davis", variance_range_bounds(spec.profile())[0], {"spec": spec.to_dict()}, math.inf),
    {"spec": "spec"},
    summary="Var <= (M - mu)(mu - m)",
)
register(
    "popoviciu",
    lambda spec: _result("popoviciu", variance_range_bounds(spec.profile())[1], {"spec": spec.to_dict()}, math.inf),
    {"spec": "spec"},
    summary="Var <= (M - m)^2 / 4",
)


def _papadatos(n, k, spec=None, sigma2=None):
    if (spec is None) == (sigma2 is None):
        raise InvalidInput("papadatos needs exactly one of spec or sigma2")
    s2 = spec.variance if spec is not None else sigma2
    factor = orderstats.papadatos_factor(n, k)
    return _result("papadatos", factor * s2, {"n": n, "k": k, "sigma2": s2}, math.inf, factor=factor)


register("papadatos", _papadatos, {"n": "int", "k": "int"}, {"spec": "spec", "sigma2": "float"}, summary="Var(X_(k)) <= factor(n, k) sigma^2")


def _family(family, theta, sigma=1.0):
    return estimation.ParametricFamily(family, theta, sigma)


register(
    "cramer_rao",
    lambda family, theta, n, sigma=1.0: _result(
        "cramer_rao", estimation.cramer_rao_bound(_family(family, theta, sigma), n), {"family": family, "theta": theta, "n": n}, math.inf
    ),
    {"family": "str", "theta": "float", "n": "int"},
    {"sigma": "float"},
    direction="lower",
    summary="Var(unbiased estimator of theta) >= 1/(n I(theta))",
)
register(
    "chapman_robbins",
    lambda family, theta, n, sigma=1.0, grid=None: _result(
        "chapman_robbins",
        estimation.chapman_robbins_bound(_family(family, theta, sigma), lambda x: x, grid, n),
        {"family": family, "theta": theta, "n": n},
        math.inf,
    ),
    {"family": "str", "theta": "float", "n": "int"},
    {"sigma": "float", "grid": "floats"},
    direction="lower",
    summary="Var(unbiased estimator of theta) >= sup_d d^2 / chi2(d)",
)


def bound_ids(include_controls: bool = True) -> list:
    return sorted(k for k, e in REGISTRY.items() if include_controls or not e.control)
