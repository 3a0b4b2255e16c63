"""Default verification corpus.

Every scenario pairs a registered inequality with a truth oracle that does not
reuse the bound's own formula: closed-form laws from scipy, exhaustive
enumeration of a finite product space, or Monte Carlo.
"""

from __future__ import annotations

import json
import math

import numpy as np
from scipy import stats

from .dist import parse_spec


def _d(text: str) -> dict:
    return parse_spec(text).to_dict()


def value(law, relation, threshold, center=0.0, **kw):
    return {"kind": "value", "law": law, "relation": relation, "threshold": threshold, "center": center, **kw}


def quantity(name, **kw):
    return {"kind": "value", "quantity": name, **kw}


def _sampled(kind, statistic, relation=None, threshold=None, center=0.0, iid=None, n=1, coords=None, target="tail", **stat_args):
    doc = {"kind": kind, "statistic": statistic, "target": target}
    if coords is not None:
        doc["coords"] = [_d(c) for c in coords]
    else:
        doc["iid"] = _d(iid)
        doc["n"] = n
    if stat_args:
        doc["stat_args"] = stat_args
    if target == "tail":
        doc.update(relation=relation, threshold=threshold, center=center)
    return doc


def enum(*args, **kw):
    return _sampled("enumerate", *args, **kw)


def mc(*args, **kw):
    return _sampled("mc", *args, **kw)


_CORPUS: list = []


def add(ineq: str, tag: str, params: dict, oracle: dict, note: str = "", n_reps=None):
    k = sum(1 for s in _CORPUS if s["inequality"] == ineq) + 1
    doc = {"id": f"{ineq}/{k:02d}-{tag}", "inequality": ineq, "params": params, "oracle": oracle}
    if note:
        doc["note"] = note
    if n_reps is not None:
        doc["n_reps"] = n_reps
    _CORPUS.append(doc)


FIN3 = "finite(0:0.5,1:0.3,3:0.2)"
SKEW = "finite(-2:0.3333333333333333,1:0.6666666666666666)"
CBERN = "finite(-0.3:0.7,0.7:0.3)"

# markov ---------------------------------------------------------------------
add("markov", "two-point-equality", {"mean": 1.0, "t": 2.0}, enum("first", "ge", 2.0, iid="finite(0:0.5,2:0.5)"))
add("markov", "binomial", {"mean": 3.0, "t": 6.0}, value("binomial", "ge", 6.0, n=10, p=0.3))
add("markov", "bernoulli-equality", {"mean": 0.2, "t": 1.0}, enum("first", "ge", 1.0, iid="bernoulli(0.2)"))
add("markov", "uniform", {"mean": 0.5, "t": 0.75}, mc("first", "ge", 0.75, iid="uniform(0,1)"))
add("markov", "three-point", {"mean": 0.7, "t": 3.0}, enum("first", "ge", 3.0, iid="finite(0:0.7,1:0.2,5:0.1)"))
add("markov", "binomial-20", {"mean": 10.0, "t": 15.0}, value("binomial", "ge", 15.0, n=20, p=0.5))

# generalized Markov ----------------------------------------------------------
add("g_markov", "square-equality", {"spec": "finite(0:0.5,2:0.5)", "g": "square", "t": 2.0}, enum("first", "ge", 2.0, iid="finite(0:0.5,2:0.5)"))
add("g_markov", "exp", {"spec": "finite(0:0.5,2:0.5)", "g": "exp", "t": 2.0}, enum("first", "ge", 2.0, iid="finite(0:0.5,2:0.5)"))
add("g_markov", "binomial-exp", {"spec": "binomial(6,0.5)", "g": "exp", "t": 5.0}, value("binomial", "ge", 5.0, n=6, p=0.5))
add("g_markov", "uniform-square", {"spec": "uniform(0,2)", "g": "square", "t": 1.5}, mc("first", "ge", 1.5, iid="uniform(0,2)"))
add("g_markov", "cube-equality", {"spec": "bernoulli(0.2)", "g": "cube", "t": 1.0}, enum("first", "ge", 1.0, iid="bernoulli(0.2)"))
add("g_markov", "binomial-pow4", {"spec": "binomial(10,0.5)", "g": "pow:4", "t": 8.0}, value("binomial", "ge", 8.0, n=10, p=0.5))

# Chebyshev ------------------------------------------------------------------
add("chebyshev", "binomial", {"variance": 5.0, "t": 4.0}, value("binomial", "abs_ge", 4.0, 10.0, n=20, p=0.5))
add("chebyshev", "normal", {"variance": 1.0, "t": 2.0}, value("normal", "abs_ge", 2.0))
add("chebyshev", "uniform", {"variance": 1.0 / 3.0, "t": 0.9}, mc("first", "abs_ge", 0.9, iid="uniform(-1,1)"))
add("chebyshev", "three-point-equality", {"variance": 0.25, "t": 1.0}, enum("first", "abs_ge", 1.0, iid="finite(-1:0.125,0:0.75,1:0.125)"))
add("chebyshev", "rademacher-equality", {"variance": 1.0, "t": 1.0}, enum("first", "abs_ge", 1.0, iid="rademacher"))
add("chebyshev", "uniform-sum", {"variance": 5.0 / 12.0, "t": 1.0}, mc("sum", "abs_ge", 1.0, 2.5, iid="uniform(0,1)", n=5))

# Gaussian tails ---------------------------------------------------------------
for t in (0.5, 1.0, 2.0, 3.0, 5.0):
    add("normal_upper", f"t{t:g}", {"t": t}, value("normal", "abs_ge", t))
    add("normal_lower", f"t{t:g}", {"t": t}, value("normal", "abs_ge", t))

# Chernoff at a fixed t ---------------------------------------------------------
add("chernoff_upper", "rademacher", {"spec": "rademacher", "a": 0.5, "t": 0.5}, enum("first", "ge", 0.5, iid="rademacher"))
add("chernoff_upper", "normal", {"spec": "normal(0,1)", "a": 2.0, "t": 2.0}, value("normal", "ge", 2.0))
add("chernoff_upper", "binomial", {"spec": "binomial(20,0.5)", "a": 15.0, "t": 1.0}, value("binomial", "ge", 15.0, n=20, p=0.5))
add("chernoff_upper", "uniform", {"spec": "uniform(0,1)", "a": 0.9, "t": 3.0}, mc("first", "ge", 0.9, iid="uniform(0,1)"))
add("chernoff_upper", "bernoulli", {"spec": "bernoulli(0.1)", "a": 1.0, "t": 2.0}, enum("first", "ge", 1.0, iid="bernoulli(0.1)"))
add("chernoff_lower", "rademacher", {"spec": "rademacher", "a": -0.5, "t": -0.5}, enum("first", "le", -0.5, iid="rademacher"))
add("chernoff_lower", "normal", {"spec": "normal(0,1)", "a": -1.5, "t": -1.5}, value("normal", "le", -1.5))
add("chernoff_lower", "binomial", {"spec": "binomial(20,0.5)", "a": 5.0, "t": -1.0}, value("binomial", "le", 5.0, n=20, p=0.5))
add("chernoff_lower", "uniform", {"spec": "uniform(0,1)", "a": 0.1, "t": -3.0}, mc("first", "le", 0.1, iid="uniform(0,1)"))
add("chernoff_lower", "bernoulli", {"spec": "bernoulli(0.9)", "a": 0.0, "t": -2.0}, enum("first", "le", 0.0, iid="bernoulli(0.9)"))

# optimized Chernoff for sums ----------------------------------------------------
add("chernoff_sum_upper", "rademacher-100", {"spec": "rademacher", "a": 20.0, "n": 100}, value("rademacher_sum", "ge", 20.0, n=100))
add("chernoff_sum_upper", "bernoulli-20", {"spec": "bernoulli(0.3)", "a": 10.0, "n": 20}, value("binomial", "ge", 10.0, n=20, p=0.3))
add("chernoff_sum_upper", "normal-10", {"spec": "normal(0,1)", "a": 5.0, "n": 10}, value("normal", "ge", 5.0, sigma=math.sqrt(10.0)))
add("chernoff_sum_upper", "uniform-12", {"spec": "uniform(0,1)", "a": 8.0, "n": 12}, mc("sum", "ge", 8.0, iid="uniform(0,1)", n=12))
add("chernoff_sum_upper", "three-point-8", {"spec": FIN3, "a": 10.0, "n": 8}, enum("sum", "ge", 10.0, iid=FIN3, n=8))
add("chernoff_sum_upper", "binomial-single", {"spec": "binomial(5,0.4)", "a": 4.0}, value("binomial", "ge", 4.0, n=5, p=0.4))
add("chernoff_sum_lower", "rademacher-100", {"spec": "rademacher", "a": -20.0, "n": 100}, value("rademacher_sum", "le", -20.0, n=100))
add("chernoff_sum_lower", "bernoulli-20", {"spec": "bernoulli(0.3)", "a": 2.0, "n": 20}, value("binomial", "le", 2.0, n=20, p=0.3))
add("chernoff_sum_lower", "normal-10", {"spec": "normal(0,1)", "a": -5.0, "n": 10}, value("normal", "le", -5.0, sigma=math.sqrt(10.0)))
add("chernoff_sum_lower", "uniform-12", {"spec": "uniform(0,1)", "a": 4.0, "n": 12}, mc("sum", "le", 4.0, iid="uniform(0,1)", n=12))
add("chernoff_sum_lower", "three-point-8", {"spec": FIN3, "a": 2.0, "n": 8}, enum("sum", "le", 2.0, iid=FIN3, n=8))

add("chernoff_mean", "rademacher", {"spec": "rademacher", "epsilon": 0.5, "n": 10}, value("rademacher_sum", "abs_gt", 5.0, n=10))
add("chernoff_mean", "bernoulli", {"spec": "bernoulli(0.5)", "epsilon": 0.2, "n": 50}, value("binomial", "abs_gt", 10.0, 25.0, n=50, p=0.5))
add("chernoff_mean", "normal", {"spec": "normal(0,1)", "epsilon": 1.0, "n": 5}, value("normal", "abs_gt", 1.0, sigma=1.0 / math.sqrt(5.0)))
add("chernoff_mean", "uniform", {"spec": "uniform(0,1)", "epsilon": 0.2, "n": 10}, mc("mean", "abs_gt", 0.2, 0.5, iid="uniform(0,1)", n=10))
add("chernoff_mean", "three-point", {"spec": FIN3, "epsilon": 0.5, "n": 8}, enum("mean", "abs_gt", 0.5, 0.9, iid=FIN3, n=8))

# Poisson trials -----------------------------------------------------------------
_PT = {
    "p0.1x100": [0.1] * 100,
    "p0.5x20": [0.5] * 20,
    "ramp20": [0.02 * i for i in range(1, 21)],
    "p0.3x30": [0.3] * 30,
    "mixed": [0.05, 0.1, 0.2, 0.4, 0.6, 0.05, 0.1, 0.2, 0.4, 0.6, 0.3, 0.3],
}


def _ptrials(ident, cases, upper):
    for name, delta in cases:
        p = _PT[name]
        mu = math.fsum(p)
        thr = (1 + delta) * mu if upper else (1 - delta) * mu
        add(ident, f"{name}-d{delta:g}", {"mu": mu, "delta": delta}, value("poisson_binomial", "ge" if upper else "le", thr, p=p))


_ptrials("ptrials_1", [("p0.1x100", 1.0), ("p0.1x100", 0.5), ("p0.5x20", 0.6), ("ramp20", 1.0), ("p0.3x30", 2.0)], True)
_ptrials("ptrials_2", [("p0.1x100", 0.5), ("p0.5x20", 0.3), ("ramp20", 1.0), ("p0.3x30", 0.2), ("mixed", 0.8)], True)
for p, R in (([0.05] * 20, 6.0), ([0.01] * 100, 6.0), ([0.01] * 100, 8.0), ([0.1] * 10, 7.0), ([0.02] * 50, 6.0)):
    add("ptrials_3", f"mu{math.fsum(p):g}-R{R:g}-n{len(p)}", {"mu": math.fsum(p), "R": R}, value("poisson_binomial", "ge", R, p=p))
_ptrials("ptrials_4", [("p0.1x100", 0.5), ("p0.5x20", 0.4), ("ramp20", 0.9), ("p0.3x30", 0.3), ("p0.1x100", 0.2)], False)
_ptrials("ptrials_5", [("p0.1x100", 0.5), ("p0.5x20", 0.4), ("ramp20", 0.9), ("p0.3x30", 0.3), ("mixed", 0.6)], False)

# Rademacher and fair-coin sums -------------------------------------------------------
for n, a in ((100, 20.0), (2, 2.0), (10, 4.0), (50, 10.0), (20, 11.0)):
    add("rademacher_one", f"n{n}-a{a:g}", {"n": n, "a": a}, value("rademacher_sum", "ge", a, n=n))
    add("rademacher_two", f"n{n}-a{a:g}", {"n": n, "a": a}, value("rademacher_sum", "abs_ge", a, n=n))
add("rademacher_one", "enumerated", {"n": 6, "a": 3.0}, enum("sum", "ge", 3.0, iid="rademacher", n=6))

for n, a in ((100, 10.0), (10, 2.0), (50, 5.0), (20, 9.0), (30, 3.0)):
    add("bernoulli_1", f"n{n}-a{a:g}", {"n": n, "a": a}, value("binomial", "le", n / 2 - a, n=n, p=0.5))
    add("bernoulli_3", f"n{n}-a{a:g}", {"n": n, "a": a}, value("binomial", "ge", n / 2 + a, n=n, p=0.5))
for n, d in ((100, 0.2), (10, 0.5), (50, 0.1), (20, 0.9), (30, 0.3)):
    add("bernoulli_2", f"n{n}-d{d:g}", {"n": n, "delta": d}, value("binomial", "le", n / 2 * (1 - d), n=n, p=0.5))
    add("bernoulli_4", f"n{n}-d{d:g}", {"n": n, "delta": d}, value("binomial", "ge", n / 2 * (1 + d), n=n, p=0.5))
for n, d in ((100, 0.2), (50, 0.3), (20, 0.5), (10, 0.8), (200, 0.1)):
    add(
        "bernoulli_4_printed",
        f"n{n}-d{d:g}",
        {"n": n, "delta": d},
        value("binomial", "le", n / 2 * (1 + d), n=n, p=0.5),
        note="printed direction of the event; the claimed bound falls below the truth",
    )

# Hoeffding --------------------------------------------------------------------------
add("hoeffding_1", "rademacher-100", {"ranges": [[-1, 1]] * 100, "epsilon": 20.0}, value("rademacher_sum", "ge", 20.0, n=100))
add("hoeffding_1", "centered-bernoulli", {"ranges": [[-0.3, 0.7]] * 20, "epsilon": 3.0}, value("binomial", "ge", 9.0, n=20, p=0.3))
add("hoeffding_1", "uniform", {"ranges": [[-1, 1]] * 10, "epsilon": 3.0}, mc("sum", "ge", 3.0, iid="uniform(-1,1)", n=10))
add("hoeffding_1", "skewed", {"ranges": [[-2, 1]] * 8, "epsilon": 4.0}, enum("sum", "ge", 4.0, iid=SKEW, n=8))
add("hoeffding_1", "single", {"ranges": [[-0.5, 0.5]], "epsilon": 0.4}, value("uniform", "ge", 0.4, lo=-0.5, hi=0.5))
add(
    "hoeffding_1",
    "mixed-ranges",
    {"ranges": [[-1, 1]] * 4 + [[-2, 1]] * 4, "epsilon": 3.0},
    enum("sum", "ge", 3.0, coords=["rademacher"] * 4 + [SKEW] * 4),
)

for n, eps, p in ((100, 0.1, 0.5), (50, 0.3, 0.5), (20, 0.2, 0.3), (1, 0.5, 0.5), (200, 0.05, 0.1)):
    add("hoeffding_2", f"n{n}-e{eps:g}-p{p:g}", {"n": n, "epsilon": eps}, value("binomial", "abs_ge", n * eps, n * p, n=n, p=p))
add("hoeffding_2", "mc-mean", {"n": 30, "epsilon": 0.15}, mc("mean", "abs_ge", 0.15, 0.5, iid="bernoulli(0.5)", n=30))
for n, eps, p in ((100, 5.0, 0.5), (20, 2.0, 0.5), (10, 1.0, 0.5), (50, 3.0, 0.5), (30, 2.0, 0.3)):
    add(
        "hoeffding_2_printed",
        f"n{n}-e{eps:g}-p{p:g}",
        {"n": n, "epsilon": eps},
        value("binomial", "abs_ge", eps, n * p, n=n, p=p),
        note="epsilon read on the scale of the sum",
    )

# unimodal -----------------------------------------------------------------------------
add("gauss", "normal-2", {"tau": 1.0, "epsilon": 2.0}, value("normal", "abs_gt", 2.0))
add("gauss", "normal-half", {"tau": 1.0, "epsilon": 0.5}, value("normal", "abs_gt", 0.5))
add("gauss", "uniform-equality", {"tau": math.sqrt(1.0 / 3.0), "epsilon": 0.5}, value("uniform", "abs_gt", 0.5, lo=0.0, hi=1.0))
add("gauss", "normal-shifted", {"tau": 2.0, "epsilon": 3.0}, value("normal", "abs_gt", 3.0, 3.0, mu=3.0, sigma=2.0))
add("gauss", "triangular", {"tau": math.sqrt(1.0 / 6.0), "epsilon": 0.6}, mc("sum", "abs_gt", 0.6, 1.0, iid="uniform(0,1)", n=2))
add("gauss", "uniform-far", {"tau": math.sqrt(1.0 / 3.0), "epsilon": 0.9}, value("uniform", "abs_gt", 0.9, lo=0.0, hi=1.0))

add("vp", "normal-3", {"xi": 1.0, "epsilon": 3.0}, value("normal", "abs_ge", 3.0))
add("vp", "uniform-sym", {"xi": math.sqrt(1.0 / 3.0), "epsilon": 0.5}, value("uniform", "abs_ge", 0.5, lo=-1.0, hi=1.0))
add("vp", "uniform-offcenter", {"xi": math.sqrt(0.52 / 3.0), "epsilon": 0.5}, value("uniform", "abs_ge", 0.5, 0.2, lo=0.0, hi=1.0))
add("vp", "normal-offcenter", {"xi": math.sqrt(2.0), "epsilon": 4.0}, value("normal", "abs_ge", 4.0, 0.0, mu=1.0))
add("vp", "triangular", {"xi": math.sqrt(1.0 / 6.0), "epsilon": 0.5}, mc("sum", "abs_ge", 0.5, 1.0, iid="uniform(0,1)", n=2))
add("vp", "uniform-center", {"xi": math.sqrt(1.0 / 12.0), "epsilon": 0.45}, value("uniform", "abs_ge", 0.45, 0.5, lo=0.0, hi=1.0))
_VP_NOTE = "center branch with 9 in the denominator"
add("vp_printed", "uniform-sym", {"xi": math.sqrt(1.0 / 3.0), "epsilon": 0.5}, value("uniform", "abs_ge", 0.5, lo=-1.0, hi=1.0), _VP_NOTE)
add("vp_printed", "uniform-center", {"xi": math.sqrt(1.0 / 12.0), "epsilon": 0.45}, value("uniform", "abs_ge", 0.45, 0.5, lo=0.0, hi=1.0), _VP_NOTE)
add("vp_printed", "normal", {"xi": 1.0, "epsilon": 1.5}, value("normal", "abs_ge", 1.5), _VP_NOTE)
add("vp_printed", "uniform-offcenter", {"xi": math.sqrt(0.52 / 3.0), "epsilon": 0.5}, value("uniform", "abs_ge", 0.5, 0.2, lo=0.0, hi=1.0), _VP_NOTE)
add("vp_printed", "triangular", {"xi": math.sqrt(1.0 / 6.0), "epsilon": 0.5}, mc("sum", "abs_ge", 0.5, 1.0, iid="uniform(0,1)", n=2), _VP_NOTE)

# sample-based Chebyshev ----------------------------------------------------------------
for parent, n, k in (("normal(0,1)", 10, 2.0), ("normal(0,1)", 10, 1.5), ("uniform(0,1)", 5, 1.5), ("normal(0,1)", 20, 2.5), ("uniform(0,1)", 3, 1.0)):
    add("saw", f"{parent.split('(')[0]}-n{n}-k{k:g}", {"n": n, "k": k}, mc("saw", "ge", k, iid=parent, n=n + 1))
for parent, n, k in (("normal(0,1)", 10, 1.5), ("uniform(0,1)", 10, 1.5), ("normal(0,1)", 3, 1.0), ("uniform(0,1)", 3, 1.0), ("normal(0,1)", 2, 1.0)):
    add(
        "saw_printed",
        f"{parent.split('(')[0]}-n{n}-k{k:g}",
        {"n": n, "k": k},
        mc("saw", "ge", k, iid=parent, n=n + 1),
        note="fresh observation against the first n",
    )

# martingales and bounded differences --------------------------------------------------------
_W = [1.0, 2.0, 3.0] * 4
add("azuma", "rademacher-100", {"c": [1.0] * 100, "lam": 20.0}, value("rademacher_sum", "ge", 20.0, n=100))
add("azuma", "weighted", {"c": _W, "lam": 10.0}, enum("sum", "ge", 10.0, coords=[f"finite(-{w:g}:0.5,{w:g}:0.5)" for w in _W]))
add("azuma", "uniform", {"c": [1.0] * 10, "lam": 4.0}, mc("sum", "ge", 4.0, iid="uniform(-1,1)", n=10))
add("azuma", "two-sided", {"c": [1.0] * 50, "lam": 15.0, "side": "two"}, value("rademacher_sum", "abs_ge", 15.0, n=50))
add("azuma", "centered-bernoulli", {"c": [0.7] * 10, "lam": 2.5}, enum("sum", "ge", 2.5, iid=CBERN, n=10))

add("bennett", "rademacher-100", {"n": 100, "sigma2": 1.0, "t": 20.0}, value("rademacher_sum", "gt", 20.0, n=100))
add("bennett", "centered-bernoulli", {"n": 20, "sigma2": 0.21, "t": 3.0}, value("binomial", "gt", 9.0, n=20, p=0.3))
add("bennett", "uniform", {"n": 10, "sigma2": 1.0 / 3.0, "t": 3.0}, mc("sum", "gt", 3.0, iid="uniform(-1,1)", n=10))
add("bennett", "skewed", {"n": 10, "sigma2": 2.0, "t": 4.0}, enum("sum", "gt", 4.0, iid="finite(-2:0.3333333333333333,1:0.6666666666666666)", n=10))
add("bennett", "rademacher-10", {"n": 10, "sigma2": 1.0, "t": 4.0}, value("rademacher_sum", "gt", 4.0, n=10))
add("bennett", "rare-events", {"n": 100, "sigma2": 0.0475, "t": 5.0}, value("binomial", "gt", 10.0, n=100, p=0.05))

add("bernstein", "rademacher-100", {"n": 100, "sigma2": 1.0, "epsilon": 0.2}, value("rademacher_sum", "gt", 20.0, n=100))
add("bernstein", "centered-bernoulli", {"n": 20, "sigma2": 0.21, "epsilon": 0.15}, value("binomial", "gt", 9.0, n=20, p=0.3))
add("bernstein", "uniform", {"n": 10, "sigma2": 1.0 / 3.0, "epsilon": 0.3}, mc("mean", "gt", 0.3, iid="uniform(-1,1)", n=10))
add("bernstein", "skewed", {"n": 10, "sigma2": 2.0, "epsilon": 0.4}, enum("mean", "gt", 0.4, iid=SKEW, n=10))
add("bernstein", "rademacher-10", {"n": 10, "sigma2": 1.0, "epsilon": 0.4}, value("rademacher_sum", "gt", 4.0, n=10))

_DISTINCT = "finite(" + ",".join(f"{i}:0.1" for i in range(10)) + ")"
_DISTINCT_MEAN = 10.0 * (1.0 - 0.9**10)
add("mcdiarmid_upper", "binomial-sum", {"c": [1.0] * 100, "t": 10.0}, value("binomial", "ge", 60.0, n=100, p=0.5))
add("mcdiarmid_upper", "binomial-mean", {"c": [0.02] * 50, "t": 0.1}, value("binomial", "ge", 20.0, n=50, p=0.3))
add("mcdiarmid_upper", "uniform-sum", {"c": [1.0] * 10, "t": 2.0}, mc("sum", "ge", 7.0, iid="uniform(0,1)", n=10))
add("mcdiarmid_upper", "weighted", {"c": _W, "t": 6.0}, enum("weighted_sum", "ge", 18.0, iid="bernoulli(0.5)", n=12, w=_W))
add("mcdiarmid_upper", "distinct-values", {"c": [1.0] * 10, "t": 2.0}, mc("distinct", "ge", _DISTINCT_MEAN + 2.0, iid=_DISTINCT, n=10))
add("mcdiarmid_lower", "binomial-sum", {"c": [1.0] * 100, "t": 10.0}, value("binomial", "le", 40.0, n=100, p=0.5))
add("mcdiarmid_lower", "binomial-mean", {"c": [0.02] * 50, "t": 0.1}, value("binomial", "le", 10.0, n=50, p=0.3))
add("mcdiarmid_lower", "uniform-sum", {"c": [1.0] * 10, "t": 2.0}, mc("sum", "le", 3.0, iid="uniform(0,1)", n=10))
add("mcdiarmid_lower", "weighted", {"c": _W, "t": 6.0}, enum("weighted_sum", "le", 6.0, iid="bernoulli(0.5)", n=12, w=_W))
add("mcdiarmid_lower", "distinct-values", {"c": [1.0] * 10, "t": 2.0}, mc("distinct", "le", _DISTINCT_MEAN - 2.0, iid=_DISTINCT, n=10))
_MP = "claimed lower bound with t^2 in place of 2t^2"
add("mcdiarmid_printed", "binomial-10", {"c": [1.0] * 10, "t": 4.0}, value("binomial", "ge", 9.0, n=10, p=0.5), _MP)
add("mcdiarmid_printed", "binomial-100", {"c": [1.0] * 100, "t": 20.0}, value("binomial", "ge", 70.0, n=100, p=0.5), _MP)
add("mcdiarmid_printed", "binomial-20", {"c": [1.0] * 20, "t": 6.0}, value("binomial", "ge", 16.0, n=20, p=0.5), _MP)
add("mcdiarmid_printed", "uniform-sum", {"c": [1.0] * 10, "t": 2.0}, mc("sum", "ge", 7.0, iid="uniform(0,1)", n=10), _MP)
add("mcdiarmid_printed", "weighted", {"c": _W, "t": 8.0}, enum("weighted_sum", "ge", 20.0, iid="bernoulli(0.5)", n=12, w=_W), _MP)

# empirical distribution functions ---------------------------------------------------------------
for n, eps in ((100, 0.1), (50, 0.2), (10, 0.3), (200, 0.06)):
    add("dkw_one", f"n{n}-e{eps:g}", {"n": n, "epsilon": eps}, value("ks_one", "gt", eps, n=n))
add("dkw_one", "mc-n20", {"n": 20, "epsilon": 0.25}, mc("ks_plus", "gt", 0.25, iid="uniform(0,1)", n=20))
for n, eps in ((100, 0.1), (50, 0.15), (10, 0.35), (200, 0.08)):
    add("dkw_two", f"n{n}-e{eps:g}", {"n": n, "epsilon": eps}, value("ks_two", "gt", eps, n=n))
add("dkw_two", "mc-n20", {"n": 20, "epsilon": 0.2}, mc("ks_abs", "gt", 0.2, iid="uniform(0,1)", n=20))

# maximal inequalities for partial sums ----------------------------------------------------------


def _walk_tails(n, eps, law):
    """P[|S_k| >= eps] for k = 1..n, computed from closed forms."""
    out = []
    for k in range(1, n + 1):
        if law == "rademacher":
            j = np.arange(k + 1)
            s = np.abs(2 * j - k)
            out.append(float(stats.binom.pmf(j, k, 0.5)[s >= eps - 1e-9].sum()))
        elif law == "normal":
            out.append(float(2 * stats.norm.sf(eps / math.sqrt(k))))
        else:
            j = np.arange(k + 1)
            s = np.abs(j - 0.3 * k)
            out.append(float(stats.binom.pmf(j, k, 0.3)[s >= eps - 1e-9].sum()))
    return [min(1.0, x) for x in out]


add("etemadi_1", "rademacher-12", {"per_k_tails": _walk_tails(12, 2.0, "rademacher")}, enum("max_partial_abs", "ge", 6.0, iid="rademacher", n=12))
add("etemadi_1", "rademacher-16", {"per_k_tails": _walk_tails(16, 1.5, "rademacher")}, enum("max_partial_abs", "ge", 4.5, iid="rademacher", n=16))
add("etemadi_1", "rademacher-8", {"per_k_tails": _walk_tails(8, 1.0, "rademacher")}, enum("max_partial_abs", "ge", 3.0, iid="rademacher", n=8))
add("etemadi_1", "normal-10", {"per_k_tails": _walk_tails(10, 1.5, "normal")}, mc("max_partial_abs", "ge", 4.5, iid="normal(0,1)", n=10))
add("etemadi_1", "centered-bernoulli-12", {"per_k_tails": _walk_tails(12, 1.0, "bernoulli")}, enum("max_partial_abs", "ge", 3.0, iid=CBERN, n=12))

add("etemadi_2", "rademacher-16", {"var_sn": 16.0, "epsilon": 21.0}, enum("max_partial_abs", "ge", 21.0, iid="rademacher", n=16))
add("etemadi_2", "normal-10", {"var_sn": 10.0, "epsilon": 17.0}, mc("max_partial_abs", "ge", 17.0, iid="normal(0,1)", n=10))
add("etemadi_2", "uniform-20", {"var_sn": 20.0 / 3.0, "epsilon": 14.0}, mc("max_partial_abs", "ge", 14.0, iid="uniform(-1,1)", n=20))
add("etemadi_2", "centered-bernoulli-12", {"var_sn": 2.52, "epsilon": 8.5}, enum("max_partial_abs", "ge", 8.5, iid=CBERN, n=12))
add("etemadi_2", "rademacher-1", {"var_sn": 1.0, "epsilon": 5.2}, enum("max_partial_abs", "ge", 5.2, iid="rademacher", n=1))

add("kolmogorov", "rademacher-4", {"variances": [1.0] * 4, "epsilon": 2.0}, enum("max_partial_abs", "ge", 2.0, iid="rademacher", n=4))
add("kolmogorov", "rademacher-16", {"variances": [1.0] * 16, "epsilon": 8.0}, enum("max_partial_abs", "ge", 8.0, iid="rademacher", n=16))
add("kolmogorov", "normal-10", {"variances": [1.0] * 10, "epsilon": 8.0}, mc("max_partial_abs", "ge", 8.0, iid="normal(0,1)", n=10))
add("kolmogorov", "uniform-20", {"variances": [1.0 / 3.0] * 20, "epsilon": 5.0}, mc("max_partial_abs", "ge", 5.0, iid="uniform(-1,1)", n=20))
_CV = [1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0]
add("kolmogorov", "unequal-steps", {"variances": [c * c for c in _CV], "epsilon": 10.0}, enum("max_partial_abs", "ge", 10.0, coords=[f"finite(-{c:g}:0.5,{c:g}:0.5)" for c in _CV]))
add("kolmogorov", "centered-bernoulli-12", {"variances": [0.21] * 12, "epsilon": 3.0}, enum("max_partial_abs", "ge", 3.0, iid=CBERN, n=12))


def _abs_moment_rademacher(n, p):
    j = np.arange(n + 1)
    return float(np.sum(stats.binom.pmf(j, n, 0.5) * np.abs(2 * j - n) ** p))


add("doob", "rademacher-abs", {"expectation": _abs_moment_rademacher(10, 1), "C": 4.0}, enum("max_partial_abs", "ge", 4.0, iid="rademacher", n=10))
add("doob", "rademacher-square", {"expectation": 10.0, "C": 5.0, "p": 2.0}, enum("max_partial_abs", "ge", 5.0, iid="rademacher", n=10))
add("doob", "rademacher-16", {"expectation": 16.0, "C": 8.0, "p": 2.0}, enum("max_partial_abs", "ge", 8.0, iid="rademacher", n=16))
add("doob", "normal-square", {"expectation": 10.0, "C": 8.0, "p": 2.0}, mc("max_partial_abs", "ge", 8.0, iid="normal(0,1)", n=10))
add("doob", "uniform-fourth", {"expectation": 20 / 5 + 3 * 20 * 19 / 9, "C": 5.0, "p": 4.0}, mc("max_partial_abs", "ge", 5.0, iid="uniform(-1,1)", n=20))

# multivariate Chebyshev -----------------------------------------------------------------------------
for dim, t in ((2, 3.0), (5, 3.0), (10, 4.0), (2, 1.5)):
    add("chebyshev_multi", f"chi{dim}-t{t:g}", {"dim": dim, "t": t}, value("chi", "ge", t, df=dim))
add("chebyshev_multi", "uniform-3", {"dim": 3, "t": 2.0}, mc("norm", "ge", 2.0, iid=f"uniform({-math.sqrt(3.0)!r},{math.sqrt(3.0)!r})", n=3))
add("chebyshev_multi", "rademacher-equality", {"dim": 4, "t": 2.0}, enum("norm", "ge", 2.0, iid="rademacher", n=4))

# Poisson approximation -----------------------------------------------------------------------------
for tag, p in (
    ("small-100", [0.01] * 100),
    ("single-one", [1.0]),
    ("p0.1x20", [0.1] * 20),
    ("mixed", [0.5, 0.2, 0.05, 0.3]),
    ("ramp", [0.02 * i for i in range(1, 11)]),
    ("zeros", [0.0] * 5),
):
    add("lecam", tag, {"p": p}, quantity("lecam_l1", p=p))

# events --------------------------------------------------------------------------------------------


def _random_space(seed, outcomes, k):
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(outcomes))
    probs = (probs / probs.sum()).tolist()
    evs = []
    for _ in range(k):
        size = int(rng.integers(1, outcomes))
        evs.append(sorted(int(i) for i in rng.choice(outcomes, size=size, replace=False)))
    return {"probs": probs, "events": evs}


_SPACES = [_random_space(s, o, k) for s, o, k in ((1, 8, 3), (2, 12, 4), (3, 16, 5), (4, 6, 2), (5, 10, 6))]
_SPACES.append({"probs": [0.1] * 10, "events": [[0, 1, 2, 3, 4, 5, 6, 7, 8]] * 4})
for i, sp in enumerate(_SPACES, start=1):
    k = len(sp["events"])
    add("boole_union", f"space{i}", {"space": sp}, quantity("union", space=sp))
    add("union_lower", f"space{i}", {"space": sp}, quantity("union", space=sp))
    add("bonferroni", f"space{i}", {"space": sp}, quantity("intersection", space=sp))
    depth = 1 + (i % k)
    add("karlin_ost_upper", f"space{i}-depth{depth}", {"space": sp, "depth": depth}, quantity("union", space=sp))
    add("karlin_ost_lower", f"space{i}-depth{depth}", {"space": sp, "depth": depth}, quantity("union", space=sp))

# variance bounds -----------------------------------------------------------------------------------
for spec in ("bernoulli(0.5)", "bernoulli(0.1)", "binomial(10,0.3)", "uniform(0,1)", "finite(0:0.2,1:0.5,4:0.3)", "rademacher"):
    add("bhatia_davis", spec.split("(")[0] + ("-" + spec[spec.find("(") + 1 : -1].replace(",", "_") if "(" in spec else ""), {"spec": spec}, quantity("variance", spec=_d(spec)))
    add("popoviciu", spec.split("(")[0] + ("-" + spec[spec.find("(") + 1 : -1].replace(",", "_") if "(" in spec else ""), {"spec": spec}, quantity("variance", spec=_d(spec)))

add("papadatos", "bernoulli-max", {"n": 2, "k": 2, "spec": "bernoulli(0.5)"}, enum("order", iid="bernoulli(0.5)", n=2, target="variance", k=2))
add("papadatos", "uniform-median", {"n": 5, "k": 3, "spec": "uniform(0,1)"}, mc("order", iid="uniform(0,1)", n=5, target="variance", k=3))
add("papadatos", "normal-min", {"n": 10, "k": 1, "spec": "normal(0,1)"}, mc("order", iid="normal(0,1)", n=10, target="variance", k=1))
add("papadatos", "bernoulli-middle", {"n": 10, "k": 5, "spec": "bernoulli(0.3)"}, enum("order", iid="bernoulli(0.3)", n=10, target="variance", k=5))
add("papadatos", "normal-max", {"n": 20, "k": 20, "sigma2": 1.0}, mc("order", iid="normal(0,1)", n=20, target="variance", k=20))
add("papadatos", "skewed-upper", {"n": 6, "k": 5, "spec": FIN3}, enum("order", iid=FIN3, n=6, target="variance", k=5))

# estimation ----------------------------------------------------------------------------------------
for ident in ("cramer_rao", "chapman_robbins"):
    add(ident, "bernoulli-exact", {"family": "bernoulli", "theta": 0.5, "n": 10}, enum("mean", iid="bernoulli(0.5)", n=10, target="variance"))
    add(ident, "bernoulli-mc", {"family": "bernoulli", "theta": 0.2, "n": 20}, mc("mean", iid="bernoulli(0.2)", n=20, target="variance"))
    add(ident, "normal-mc", {"family": "normal-mean", "theta": 1.0, "sigma": 2.0, "n": 5}, mc("mean", iid="normal(1,2)", n=5, target="variance"))
    add(ident, "poisson", {"family": "poisson", "theta": 2.0, "n": 10}, quantity("mean_variance", family="poisson", theta=2.0, n=10))
    add(ident, "normal-single", {"family": "normal-mean", "theta": 0.0, "n": 1}, quantity("mean_variance", family="normal-mean", theta=0.0, n=1))


def default_corpus() -> list:
    """Fresh copies of the built-in scenarios, sorted by id."""
    return sorted(json.loads(json.dumps(_CORPUS)), key=lambda d: d["id"])


def corpus_json() -> str:
    return json.dumps({"scenarios": default_corpus()}, indent=1)
