"""Oracles and verdicts: does a bound dominate the true probability?

Truth comes from one of three routes, each independent of the bound code:

* ``enumerate``: exact summation over a finite product space,
* ``mc``: seeded Monte Carlo with a binomial standard error,
* ``value``: a closed form evaluated with scipy distributions.

An upper bound holds against exact truth when ``bound >= truth - 1e-12`` and
against an estimate when ``bound >= estimate - 3 * stderr``; lower bounds are
mirrored. Known-false controls must come out violated.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import stats

from . import dist
from .dist import DistributionSpec
from .errors import InvalidInput
from .numerics import sample_variance

ATOM_CAP = 2**20
MIN_REPS = 1000
DEFAULT_REPS = 100_000
EXACT_TOL = 1e-12
MARGIN_SE = 3.0
REL_TOL = 1e-9
CHUNK_CELLS = 2_000_000
CSV_COLUMNS = ("scenario_id", "inequality_id", "bound", "truth", "stderr", "holds", "margin", "seed")


@dataclass(frozen=True)
class ProductSpace:
    """Independent finite coordinates."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise InvalidInput("product space needs at least one coordinate")
        for c in coords:
            if not isinstance(c, DistributionSpec) or not c.is_discrete:
                raise InvalidInput("product space coordinates must be finite discrete laws")
        size = math.prod(int(np.count_nonzero(c.support_atoms()[1] > 0)) for c in coords)
        if size > ATOM_CAP:
            raise InvalidInput(f"product space has {size} atoms; the cap is {ATOM_CAP}")
        object.__setattr__(self, "coords", coords)

    @property
    def size(self) -> int:
        return math.prod(int(np.count_nonzero(c.support_atoms()[1] > 0)) for c in self.coords)

    def outcomes(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, weights): one row per atom of the product law."""
        vals, probs = [], []
        for c in self.coords:
            v, p = c.support_atoms()
            keep = p > 0
            vals.append(v[keep])
            probs.append(p[keep])
        grid = np.meshgrid(*vals, indexing="ij")
        pgrid = np.meshgrid(*probs, indexing="ij")
        x = np.column_stack([g.ravel() for g in grid])
        w = np.prod(np.column_stack([g.ravel() for g in pgrid]), axis=1)
        return x, w


# statistics ---------------------------------------------------------------


def _partial_sums(x):
    return np.cumsum(x, axis=1)


def _saw_ratio(x):
    head, new = x[:, :-1], x[:, -1]
    sd = np.std(head, axis=1, ddof=1)
    dev = np.abs(new - head.mean(axis=1))
    # a zero deviation makes |X - mean| >= k * S certain, hence the inf
    return np.where(sd > 0, dev / np.where(sd > 0, sd, 1.0), np.inf)


def _ks(x, side):
    # parents are uniform(0, 1), so F(x) = x
    u = np.sort(x, axis=1)
    n = u.shape[1]
    i = np.arange(1, n + 1)
    plus = np.max(i / n - u, axis=1)
    if side == "plus":
        return plus
    return np.maximum(plus, np.max(u - (i - 1) / n, axis=1))


def _weighted(w):
    w = np.asarray(w, dtype=float)
    return lambda x: x @ w


def _distinct(x):
    u = np.sort(x, axis=1)
    return 1 + np.count_nonzero(np.diff(u, axis=1) > 0, axis=1)


def _order(k):
    k = int(k)
    return lambda x: np.sort(x, axis=1)[:, k - 1]


STATISTICS: dict[str, Callable] = {
    "sum": lambda **kw: (lambda x: x.sum(axis=1)),
    "mean": lambda **kw: (lambda x: x.mean(axis=1)),
    "first": lambda **kw: (lambda x: x[:, 0]),
    "max": lambda **kw: (lambda x: x.max(axis=1)),
    "min": lambda **kw: (lambda x: x.min(axis=1)),
    "max_partial": lambda **kw: (lambda x: _partial_sums(x).max(axis=1)),
    "max_partial_abs": lambda **kw: (lambda x: np.abs(_partial_sums(x)).max(axis=1)),
    "norm": lambda **kw: (lambda x: np.sqrt(np.sum(x * x, axis=1))),
    "saw": lambda **kw: _saw_ratio,
    "distinct": lambda **kw: _distinct,
    "ks_plus": lambda **kw: (lambda x: _ks(x, "plus")),
    "ks_abs": lambda **kw: (lambda x: _ks(x, "abs")),
    "weighted_sum": lambda w, **kw: _weighted(w),
    "order": lambda k, **kw: _order(k),
}


def make_statistic(name: str, **kwargs) -> Callable:
    if name not in STATISTICS:
        raise InvalidInput(f"unknown statistic {name!r}; known: {sorted(STATISTICS)}")
    return STATISTICS[name](**kwargs)


RELATIONS = ("ge", "gt", "le", "lt", "abs_ge", "abs_gt")


def event_mask(values: np.ndarray, relation: str, threshold: float, center: float = 0.0) -> np.ndarray:
    """Indicator of the tail event. Comparisons carry a 1e-9 relative slack so
    that lattice points computed in floating point land on the intended side."""
    if relation not in RELATIONS:
        raise InvalidInput(f"relation must be one of {RELATIONS}")
    v = np.asarray(values, dtype=float)
    if relation.startswith("abs"):
        v = np.abs(v - center)
    tol = REL_TOL * max(1.0, abs(threshold))
    if relation in ("ge", "abs_ge"):
        return v >= threshold - tol
    if relation in ("gt", "abs_gt"):
        return v > threshold + tol
    if relation == "le":
        return v <= threshold + tol
    return v < threshold - tol


def enumerate_tail(space: ProductSpace, statistic: Callable, threshold: float, relation: str, center: float = 0.0) -> float:
    x, w = space.outcomes()
    hit = event_mask(statistic(x), relation, threshold, center)
    return min(1.0, math.fsum(w[hit]))


def enumerate_variance(space: ProductSpace, statistic: Callable) -> float:
    x, w = space.outcomes()
    s = np.asarray(statistic(x), dtype=float)
    m = math.fsum(w * s)
    return math.fsum(w * (s - m) ** 2)


def _coords_of(sampler) -> tuple:
    if isinstance(sampler, ProductSpace):
        return sampler.coords
    if isinstance(sampler, DistributionSpec):
        return (sampler,)
    coords = tuple(sampler)
    if not coords or not all(isinstance(c, DistributionSpec) for c in coords):
        raise InvalidInput("sampler must be a DistributionSpec, a ProductSpace or a list of specs")
    return coords


def _mc_values(sampler, statistic: Callable, n_reps: int, seed: int) -> np.ndarray:
    if int(n_reps) != n_reps or n_reps < MIN_REPS:
        raise InvalidInput(f"n_reps must be an integer >= {MIN_REPS}, got {n_reps}")
    coords = _coords_of(sampler)
    n = len(coords)
    rows = max(1, CHUNK_CELLS // n)
    out = np.empty(int(n_reps))
    for start in range(0, int(n_reps), rows):
        m = min(rows, int(n_reps) - start)
        x = np.empty((m, n))
        for i, c in enumerate(coords):
            x[:, i] = dist.draw(c, m, seed, stream=i, offset=start)
        out[start : start + m] = statistic(x)
    return out


def binomial_stderr(p_hat: float, n_reps: int) -> float:
    """sqrt(p(1-p)/n) floored at 1/(2n) so that 0 and 1 estimates keep some width."""
    return max(math.sqrt(p_hat * (1.0 - p_hat) / n_reps), 1.0 / (2.0 * n_reps))


def mc_tail_estimate(
    sampler, statistic: Callable, threshold: float, relation: str, n_reps: int, seed: int, center: float = 0.0
) -> tuple[float, float]:
    """Hit fraction of the event and its standard error; deterministic in seed."""
    vals = _mc_values(sampler, statistic, n_reps, seed)
    p = float(np.count_nonzero(event_mask(vals, relation, threshold, center))) / n_reps
    return p, binomial_stderr(p, n_reps)


def mc_variance_estimate(sampler, statistic: Callable, n_reps: int, seed: int) -> tuple[float, float]:
    """Sample variance of the statistic with its asymptotic standard error."""
    vals = _mc_values(sampler, statistic, n_reps, seed)
    return sample_variance(vals)


# closed-form oracles --------------------------------------------------------


def _lattice_prob(support: np.ndarray, pmf: np.ndarray, relation, threshold, center) -> float:
    hit = event_mask(support, relation, threshold, center)
    return min(1.0, math.fsum(pmf[hit]))


def poisson_binomial_pmf(p: Sequence[float]) -> np.ndarray:
    pmf = np.array([1.0])
    for q in p:
        pmf = np.convolve(pmf, [1.0 - q, q])
    return pmf


def _continuous_prob(law, relation, threshold, center) -> float:
    """P[X rel t] for a frozen scipy law; strict and weak relations coincide."""
    if relation in ("ge", "gt"):
        return float(law.sf(threshold))
    if relation in ("le", "lt"):
        return float(law.cdf(threshold))
    return float(law.cdf(center - threshold) + law.sf(center + threshold))


def value_oracle(doc: dict) -> float:
    """Exact truth from a closed form. ``doc`` names a law or a quantity."""
    doc = dict(doc)
    if "quantity" in doc:
        return _quantity(doc)
    law = doc.get("law")
    rel, thr, ctr = doc.get("relation"), doc.get("threshold"), float(doc.get("center", 0.0))
    if rel not in RELATIONS or thr is None:
        raise InvalidInput("value oracle needs relation and threshold")
    thr = float(thr)
    if law == "binomial":
        n, p = int(doc["n"]), float(doc["p"])
        k = np.arange(n + 1)
        return _lattice_prob(k.astype(float), stats.binom.pmf(k, n, p), rel, thr, ctr)
    if law == "poisson_binomial":
        pmf = poisson_binomial_pmf([float(q) for q in doc["p"]])
        return _lattice_prob(np.arange(pmf.size, dtype=float), pmf, rel, thr, ctr)
    if law == "rademacher_sum":
        n = int(doc["n"])
        j = np.arange(n + 1)
        return _lattice_prob((2 * j - n).astype(float), stats.binom.pmf(j, n, 0.5), rel, thr, ctr)
    if law == "normal":
        return _continuous_prob(stats.norm(float(doc.get("mu", 0.0)), float(doc.get("sigma", 1.0))), rel, thr, ctr)
    if law == "uniform":
        lo, hi = float(doc["lo"]), float(doc["hi"])
        return _continuous_prob(stats.uniform(lo, hi - lo), rel, thr, ctr)
    if law == "chi":
        # the Euclidean norm of a standard normal vector
        return _continuous_prob(stats.chi(int(doc["df"])), rel, thr, ctr)
    if law in ("ks_one", "ks_two"):
        if rel != "gt":
            raise InvalidInput("Kolmogorov-Smirnov oracles give P[D > eps]; use relation 'gt'")
        n = int(doc["n"])
        return float(stats.ksone.sf(thr, n) if law == "ks_one" else stats.kstwo.sf(thr, n))
    raise InvalidInput(f"unknown oracle law {law!r}")


def _quantity(doc: dict) -> float:
    q = doc["quantity"]
    if q in ("union", "intersection"):
        space = doc["space"]
        probs = np.asarray(space["probs"], dtype=float)
        member = np.zeros((len(space["events"]), probs.size), dtype=bool)
        for r, ev in enumerate(space["events"]):
            member[r, list(ev)] = True
        hit = member.any(axis=0) if q == "union" else member.all(axis=0)
        return math.fsum(probs[hit])
    if q == "lecam_l1":
        p = [float(x) for x in doc["p"]]
        pmf = poisson_binomial_pmf(p)
        lam = math.fsum(p)
        k = np.arange(pmf.size)
        head = math.fsum(np.abs(pmf - stats.poisson.pmf(k, lam)))
        return head + float(stats.poisson.sf(pmf.size - 1, lam))
    if q == "variance":
        spec = DistributionSpec.from_dict(doc["spec"])
        if spec.family == "binomial":
            return float(stats.binom(spec.n, spec.p).var())
        if spec.family == "uniform":
            return float(stats.uniform(spec.lo, spec.hi - spec.lo).var())
        if spec.family == "normal":
            return spec.sigma**2
        v, p = spec.support_atoms()
        m = math.fsum(v * p)
        return math.fsum(p * (v - m) ** 2)
    if q == "mean_variance":
        fam, theta, n = doc["family"], float(doc["theta"]), int(doc["n"])
        law = {"bernoulli": stats.bernoulli(theta), "poisson": stats.poisson(theta), "normal-mean": stats.norm(theta, float(doc.get("sigma", 1.0)))}[fam]
        return float(law.var()) / n
    raise InvalidInput(f"unknown oracle quantity {q!r}")


# verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class Truth:
    value: float
    stderr: float = 0.0
    exact: bool = True
    n_reps: int = 0


@dataclass(frozen=True)
class VerificationVerdict:
    bound: object
    truth: Truth
    holds: bool
    margin: float
    direction: str = "upper"


def check_bound(b, truth, direction: str = "upper", margin_se: float = MARGIN_SE) -> VerificationVerdict:
    """Compare a BoundResult (or plain number) with exact or estimated truth.

    ``truth`` is a number (exact), a :class:`Truth`, or an
    ``(estimate, stderr, n_reps)`` tuple.
    """
    if not isinstance(truth, Truth):
        if isinstance(truth, tuple):
            est, se, reps = truth
            truth = Truth(float(est), float(se), False, int(reps))
        else:
            truth = Truth(float(truth))
    value = float(getattr(b, "value", b))
    if direction not in ("upper", "lower"):
        raise InvalidInput("direction must be 'upper' or 'lower'")
    margin = value - truth.value if direction == "upper" else truth.value - value
    allowance = EXACT_TOL if truth.exact else margin_se * truth.stderr
    return VerificationVerdict(b, truth, bool(margin >= -allowance), margin, direction)


# scenarios ----------------------------------------------------------------

SCENARIO_KEYS = {"id", "inequality", "params", "oracle", "n_reps", "note"}
ORACLE_KEYS = {
    "enumerate": {"kind", "coords", "iid", "n", "statistic", "stat_args", "target", "relation", "threshold", "center"},
    "mc": {"kind", "coords", "iid", "n", "statistic", "stat_args", "target", "relation", "threshold", "center"},
}


@dataclass(frozen=True)
class Scenario:
    id: str
    inequality: str
    params: dict
    oracle: dict
    n_reps: Optional[int] = None
    note: str = ""

    @classmethod
    def from_dict(cls, doc: dict) -> "Scenario":
        if not isinstance(doc, dict):
            raise InvalidInput("scenario must be a mapping")
        unknown = set(doc) - SCENARIO_KEYS
        if unknown:
            raise InvalidInput(f"scenario {doc.get('id')!r}: unknown keys {sorted(unknown)}")
        for key in ("id", "inequality", "params", "oracle"):
            if key not in doc:
                raise InvalidInput(f"scenario {doc.get('id')!r}: missing key {key!r}")
        oracle = doc["oracle"]
        kind = oracle.get("kind") if isinstance(oracle, dict) else None
        if kind not in ("enumerate", "mc", "value"):
            raise InvalidInput(f"scenario {doc['id']!r}: oracle kind must be enumerate, mc or value")
        if kind in ORACLE_KEYS:
            bad = set(oracle) - ORACLE_KEYS[kind]
            if bad:
                raise InvalidInput(f"scenario {doc['id']!r}: unknown oracle keys {sorted(bad)}")
        reps = doc.get("n_reps")
        return cls(str(doc["id"]), str(doc["inequality"]), dict(doc["params"]), dict(oracle), None if reps is None else int(reps), str(doc.get("note", "")))

    def to_dict(self) -> dict:
        out = {"id": self.id, "inequality": self.inequality, "params": self.params, "oracle": self.oracle}
        if self.n_reps is not None:
            out["n_reps"] = self.n_reps
        if self.note:
            out["note"] = self.note
        return out


def _oracle_coords(oracle: dict) -> tuple:
    if "coords" in oracle:
        return tuple(DistributionSpec.from_dict(c) for c in oracle["coords"])
    if "iid" in oracle:
        return (DistributionSpec.from_dict(oracle["iid"]),) * int(oracle.get("n", 1))
    raise InvalidInput("oracle needs 'coords' or 'iid'")


def evaluate_truth(oracle: dict, seed: int, n_reps: int) -> Truth:
    kind = oracle["kind"]
    if kind == "value":
        return Truth(value_oracle({k: v for k, v in oracle.items() if k != "kind"}))
    coords = _oracle_coords(oracle)
    stat = make_statistic(oracle["statistic"], **oracle.get("stat_args", {}))
    target = oracle.get("target", "tail")
    if kind == "enumerate":
        space = ProductSpace(coords)
        if target == "variance":
            return Truth(enumerate_variance(space, stat))
        return Truth(enumerate_tail(space, stat, float(oracle["threshold"]), oracle["relation"], float(oracle.get("center", 0.0))))
    if target == "variance":
        var, se = mc_variance_estimate(coords, stat, n_reps, seed)
        return Truth(var, se, False, n_reps)
    est, se = mc_tail_estimate(coords, stat, float(oracle["threshold"]), oracle["relation"], n_reps, seed, float(oracle.get("center", 0.0)))
    return Truth(est, se, False, n_reps)


def scenario_seed(master: int, scenario_id: str) -> int:
    digest = hashlib.blake2b(f"{int(master)}:{scenario_id}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


@dataclass(frozen=True)
class ScenarioResult:
    scenario_id: str
    inequality_id: str
    bound: float
    truth: float
    stderr: float
    holds: bool
    margin: float
    seed: int
    control: bool
    exact: bool
    error: str = ""

    @property
    def passed(self) -> bool:
        if self.error:
            return False
        return (not self.holds) if self.control else self.holds


@dataclass(frozen=True)
class VerificationReport:
    results: tuple
    seed: int
    reps: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.results:
            w.writerow([r.scenario_id, r.inequality_id, repr(r.bound), repr(r.truth), repr(r.stderr), "true" if r.holds else "false", repr(r.margin), r.seed])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.results:
            rows.append(
                {
                    "scenario_id": r.scenario_id,
                    "inequality_id": r.inequality_id,
                    "bound": r.bound,
                    "truth": r.truth,
                    "stderr": r.stderr,
                    "holds": r.holds,
                    "margin": r.margin,
                    "seed": r.seed,
                    "control": r.control,
                    "exact": r.exact,
                    "passed": r.passed,
                    "error": r.error,
                }
            )
        return json.dumps({"seed": self.seed, "passed": self.passed, "results": rows}, indent=2, sort_keys=True, allow_nan=True)


def run_scenario(sc: Scenario, master_seed: int, reps: Optional[int] = None, margin_se: float = MARGIN_SE) -> ScenarioResult:
    from . import registry

    seed = scenario_seed(master_seed, sc.id)
    nan = float("nan")
    entry = registry.REGISTRY.get(sc.inequality)
    if entry is None:
        return ScenarioResult(sc.id, sc.inequality, nan, nan, nan, False, nan, seed, False, False, "unregistered inequality id")
    try:
        b = entry.evaluate(sc.params)
        n_reps = reps if reps is not None else (sc.n_reps or DEFAULT_REPS)
        truth = evaluate_truth(sc.oracle, seed, n_reps)
    except (InvalidInput, KeyError, TypeError, ValueError) as exc:
        return ScenarioResult(sc.id, sc.inequality, nan, nan, nan, False, nan, seed, entry.control, False, f"{type(exc).__name__}: {exc}")
    v = check_bound(b, truth, entry.direction, margin_se)
    return ScenarioResult(sc.id, sc.inequality, float(b.value), truth.value, truth.stderr, v.holds, v.margin, seed, entry.control, truth.exact)


def suite_run(corpus: Sequence, seed: int = 0, reps: Optional[int] = None, margin_se: float = MARGIN_SE) -> VerificationReport:
    """Run every scenario; the report is ordered by scenario id."""
    if reps is not None and (int(reps) != reps or reps < MIN_REPS):
        raise InvalidInput(f"reps must be an integer >= {MIN_REPS}, got {reps}")
    scenarios = [s if isinstance(s, Scenario) else Scenario.from_dict(s) for s in corpus]
    ids = [s.id for s in scenarios]
    if len(set(ids)) != len(ids):
        raise InvalidInput("scenario ids must be unique")
    results = tuple(run_scenario(s, seed, reps, margin_se) for s in sorted(scenarios, key=lambda s: s.id))
    return VerificationReport(results, int(seed), reps)


def load_corpus(text: str) -> list:
    """Parse a JSON corpus (a list of scenarios or {"scenarios": [...]})."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"corpus parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(doc, dict):
        unknown = set(doc) - {"scenarios"}
        if unknown or "scenarios" not in doc:
            raise InvalidInput("corpus document must hold a 'scenarios' list")
        doc = doc["scenarios"]
    if not isinstance(doc, list):
        raise InvalidInput("corpus must be a list of scenarios")
    out = []
    for i, item in enumerate(doc):
        try:
            out.append(Scenario.from_dict(item))
        except InvalidInput as exc:
            raise InvalidInput(f"corpus entry {i}: {exc}") from None
    return out
