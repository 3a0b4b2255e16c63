"""Univariate distribution specifications.

A :class:`DistributionSpec` is a small immutable description of a law (a
named family or an explicit finite list of atoms). Everything else in the
package derives moments, moment-generating functions, entropies and samples
from it through the functions in this module.

Sampling is counter based: value ``i`` of a batch consumes raw output ``i`` of
a Philox stream keyed by ``(seed, stream)`` and is pushed through the inverse
CDF. A batch of length ``n`` is therefore always the prefix of a longer batch
drawn with the same seed.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import integrate, special

from .errors import InvalidInput

FAMILIES = ("finite", "bernoulli", "rademacher", "binomial", "normal", "uniform")
DISCRETE = frozenset({"finite", "bernoulli", "rademacher", "binomial"})

PROB_TOL = 1e-12
QUAD_RTOL = 1e-10
_TWO_NEG_53 = 2.0**-53


@dataclass(frozen=True)
class MomentProfile:
    mean: float
    variance: float
    support_min: float
    support_max: float
    mode: Optional[float] = None

    def __post_init__(self):
        if self.variance < 0:
            raise InvalidInput(f"variance must be nonnegative, got {self.variance}")
        if not (self.support_min <= self.mean <= self.support_max):
            raise InvalidInput(
                f"mean {self.mean} outside support [{self.support_min}, {self.support_max}]"
            )


@dataclass(frozen=True)
class DistributionSpec:
    """Declarative description of a univariate law.

    Use the classmethod constructors (``DistributionSpec.normal(0, 1)`` and so
    on) rather than the raw dataclass signature.
    """

    family: str
    atoms: tuple = ()
    p: Optional[float] = None
    n: Optional[int] = None
    mu: Optional[float] = None
    sigma: Optional[float] = None
    lo: Optional[float] = None
    hi: Optional[float] = None

    def __post_init__(self):
        fam = self.family
        if fam not in FAMILIES:
            raise InvalidInput(f"unknown family {fam!r}; expected one of {FAMILIES}")
        if fam == "finite":
            object.__setattr__(self, "atoms", _normalize_atoms(self.atoms))
        if fam in ("bernoulli", "binomial"):
            if self.p is None or not (0.0 <= self.p <= 1.0):
                raise InvalidInput(f"probability parameter must lie in [0,1], got {self.p}")
        if fam == "binomial":
            if self.n is None or int(self.n) != self.n or self.n < 1:
                raise InvalidInput(f"binomial n must be a positive integer, got {self.n}")
            object.__setattr__(self, "n", int(self.n))
        if fam == "normal":
            if self.mu is None or not math.isfinite(self.mu):
                raise InvalidInput("normal mu must be a finite real")
            if self.sigma is None or not self.sigma > 0:
                raise InvalidInput(f"normal sigma must be positive, got {self.sigma}")
        if fam == "uniform":
            if self.lo is None or self.hi is None or not self.hi > self.lo:
                raise InvalidInput(f"uniform requires hi > lo, got [{self.lo}, {self.hi}]")

    # constructors -------------------------------------------------------

    @classmethod
    def finite(cls, atoms: Iterable[Sequence[float]]) -> "DistributionSpec":
        return cls("finite", atoms=tuple((float(v), float(q)) for v, q in atoms))

    @classmethod
    def bernoulli(cls, p: float) -> "DistributionSpec":
        return cls("bernoulli", p=float(p))

    @classmethod
    def rademacher(cls) -> "DistributionSpec":
        return cls("rademacher")

    @classmethod
    def binomial(cls, n: int, p: float) -> "DistributionSpec":
        return cls("binomial", n=n, p=float(p))

    @classmethod
    def normal(cls, mu: float = 0.0, sigma: float = 1.0) -> "DistributionSpec":
        return cls("normal", mu=float(mu), sigma=float(sigma))

    @classmethod
    def uniform(cls, lo: float = 0.0, hi: float = 1.0) -> "DistributionSpec":
        return cls("uniform", lo=float(lo), hi=float(hi))

    # basic properties ---------------------------------------------------

    @property
    def is_discrete(self) -> bool:
        return self.family in DISCRETE

    def support_atoms(self) -> tuple[np.ndarray, np.ndarray]:
        """Values and probabilities of a discrete law, sorted by value."""
        fam = self.family
        if fam == "finite":
            vals, probs = zip(*self.atoms)
            return np.array(vals, dtype=float), np.array(probs, dtype=float)
        if fam == "bernoulli":
            return np.array([0.0, 1.0]), np.array([1.0 - self.p, self.p])
        if fam == "rademacher":
            return np.array([-1.0, 1.0]), np.array([0.5, 0.5])
        if fam == "binomial":
            n, p = self.n, self.p
            probs = [math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(n + 1)]
            return np.arange(n + 1, dtype=float), np.array(probs)
        raise InvalidInput(f"{fam} is not a discrete family")

    @property
    def mean(self) -> float:
        fam = self.family
        if fam == "normal":
            return self.mu
        if fam == "uniform":
            return 0.5 * (self.lo + self.hi)
        if fam == "binomial":
            return self.n * self.p
        if fam == "bernoulli":
            return self.p
        if fam == "rademacher":
            return 0.0
        vals, probs = self.support_atoms()
        return math.fsum(vals * probs)

    @property
    def variance(self) -> float:
        fam = self.family
        if fam == "normal":
            return self.sigma**2
        if fam == "uniform":
            return (self.hi - self.lo) ** 2 / 12.0
        if fam == "binomial":
            return self.n * self.p * (1.0 - self.p)
        if fam == "bernoulli":
            return self.p * (1.0 - self.p)
        if fam == "rademacher":
            return 1.0
        vals, probs = self.support_atoms()
        m = self.mean
        return math.fsum((vals - m) ** 2 * probs)

    @property
    def support(self) -> tuple[float, float]:
        """Essential support (min, max); infinite for the normal family."""
        fam = self.family
        if fam == "normal":
            return (-math.inf, math.inf)
        if fam == "uniform":
            return (self.lo, self.hi)
        vals, probs = self.support_atoms()
        live = vals[probs > 0]
        return (float(live.min()), float(live.max()))

    @property
    def mode(self) -> Optional[float]:
        fam = self.family
        if fam == "normal":
            return self.mu
        if fam == "uniform":
            return None
        vals, probs = self.support_atoms()
        return float(vals[int(np.argmax(probs))])

    def profile(self) -> MomentProfile:
        lo, hi = self.support
        m = self.mean
        # keep mean inside the support despite summation rounding
        m = min(max(m, lo), hi)
        return MomentProfile(m, self.variance, lo, hi, self.mode)

    # distribution functions ---------------------------------------------

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        fam = self.family
        if fam == "normal":
            return special.ndtr((x - self.mu) / self.sigma)
        if fam == "uniform":
            return np.clip((x - self.lo) / (self.hi - self.lo), 0.0, 1.0)
        vals, probs = self.support_atoms()
        cum = np.concatenate([[0.0], np.minimum(np.cumsum(probs), 1.0)])
        return cum[np.searchsorted(vals, x, side="right")]

    def ppf(self, u):
        """Inverse CDF on (0, 1)."""
        u = np.asarray(u, dtype=float)
        fam = self.family
        if fam == "normal":
            return self.mu + self.sigma * special.ndtri(u)
        if fam == "uniform":
            return self.lo + (self.hi - self.lo) * u
        vals, probs = self.support_atoms()
        cum = np.cumsum(probs)
        idx = np.minimum(np.searchsorted(cum, u, side="right"), len(vals) - 1)
        return vals[idx]

    # serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        fam = self.family
        if fam == "finite":
            return {"family": "finite", "atoms": [[v, q] for v, q in self.atoms]}
        if fam == "bernoulli":
            return {"family": fam, "p": self.p}
        if fam == "rademacher":
            return {"family": fam}
        if fam == "binomial":
            return {"family": fam, "n": self.n, "p": self.p}
        if fam == "normal":
            return {"family": fam, "mu": self.mu, "sigma": self.sigma}
        return {"family": fam, "lo": self.lo, "hi": self.hi}

    @classmethod
    def from_dict(cls, doc: dict) -> "DistributionSpec":
        if not isinstance(doc, dict) or "family" not in doc:
            raise InvalidInput(f"distribution document needs a 'family' key: {doc!r}")
        fam = doc["family"]
        allowed = {
            "finite": {"atoms"},
            "bernoulli": {"p"},
            "rademacher": set(),
            "binomial": {"n", "p"},
            "normal": {"mu", "sigma"},
            "uniform": {"lo", "hi"},
        }
        if fam not in allowed:
            raise InvalidInput(f"unknown family {fam!r}")
        extra = set(doc) - allowed[fam] - {"family"}
        missing = allowed[fam] - set(doc)
        if extra:
            raise InvalidInput(f"unknown keys for {fam}: {sorted(extra)}")
        if missing:
            raise InvalidInput(f"missing keys for {fam}: {sorted(missing)}")
        if fam == "finite":
            return cls.finite(doc["atoms"])
        return cls(fam, **{k: doc[k] for k in allowed[fam]})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DistributionSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"malformed distribution document: {exc}") from exc
        return cls.from_dict(doc)

    def __str__(self) -> str:
        fam = self.family
        if fam == "finite":
            inner = ",".join(f"{v:g}:{q:g}" for v, q in self.atoms)
            return f"finite({inner})"
        if fam == "rademacher":
            return "rademacher"
        args = [v for k, v in self.to_dict().items() if k != "family"]
        return f"{fam}({','.join(f'{a:g}' for a in args)})"


def _normalize_atoms(atoms) -> tuple:
    atoms = tuple((float(v), float(q)) for v, q in atoms)
    if not atoms:
        raise InvalidInput("finite distribution needs at least one atom")
    if any(q < 0 or not math.isfinite(q) for _, q in atoms):
        raise InvalidInput("atom probabilities must be nonnegative")
    if any(not math.isfinite(v) for v, _ in atoms):
        raise InvalidInput("atom values must be finite")
    total = math.fsum(q for _, q in atoms)
    if abs(total - 1.0) > PROB_TOL:
        raise InvalidInput(f"atom probabilities sum to {total!r}, not 1")
    merged: dict[float, float] = {}
    for v, q in atoms:
        merged[v] = merged.get(v, 0.0) + q
    # renormalize only when the sum is off by more than rounding, so that a
    # serialized spec reads back unchanged
    scale = total if abs(total - 1.0) > 1e-15 else 1.0
    return tuple((v, merged[v] / scale) for v in sorted(merged))


_SHORTHAND = re.compile(r"^\s*([a-z]+)\s*(?:\((.*)\))?\s*$")


def parse_spec(text: str) -> DistributionSpec:
    """Parse JSON or the shorthand ``normal(0,1)`` / ``finite(0:0.5,2:0.5)``."""
    text = text.strip()
    if text.startswith("{"):
        return DistributionSpec.from_json(text)
    m = _SHORTHAND.match(text)
    if not m:
        raise InvalidInput(f"cannot parse distribution {text!r}")
    fam, inner = m.group(1), m.group(2)
    if fam == "finite":
        if not inner:
            raise InvalidInput("finite(...) needs value:prob atoms")
        try:
            atoms = [tuple(float(x) for x in a.split(":")) for a in inner.split(",")]
        except ValueError as exc:
            raise InvalidInput(f"bad finite atoms {inner!r}") from exc
        return DistributionSpec.finite(atoms)
    try:
        args = [float(a) for a in inner.split(",")] if inner else []
    except ValueError as exc:
        raise InvalidInput(f"bad parameters in {text!r}") from exc
    builders: dict[str, Callable] = {
        "bernoulli": DistributionSpec.bernoulli,
        "rademacher": DistributionSpec.rademacher,
        "binomial": lambda n, p: DistributionSpec.binomial(int(n), p),
        "normal": DistributionSpec.normal,
        "uniform": DistributionSpec.uniform,
    }
    if fam not in builders:
        raise InvalidInput(f"unknown family {fam!r}")
    try:
        return builders[fam](*args)
    except TypeError as exc:
        raise InvalidInput(f"wrong number of parameters in {text!r}") from exc


# moments --------------------------------------------------------------


def moment(spec: DistributionSpec, order, absolute: bool = False, central: bool = False) -> float:
    """E[(X - c)^k] or E|X - c|^k with c = EX when ``central``.

    Signed moments need a positive integer order; absolute moments accept
    any real order > 0.
    """
    if absolute:
        if not order > 0:
            raise InvalidInput(f"absolute moment order must be positive, got {order}")
    elif int(order) != order or order < 1:
        raise InvalidInput(f"signed moments need a positive integer order, got {order}")
    else:
        order = int(order)
    center = spec.mean if central else 0.0
    fam = spec.family

    if spec.is_discrete:
        vals, probs = spec.support_atoms()
        d = vals - center
        terms = np.abs(d) ** order if absolute else d**order
        return math.fsum(terms * probs)

    if fam == "normal":
        mu, sigma = spec.mu - center, spec.sigma
        if absolute:
            # adaptive quadrature on the standardized density
            f = lambda z: abs(mu + sigma * z) ** order * math.exp(-0.5 * z * z)
            pieces = [-math.inf, -mu / sigma, math.inf] if mu != 0 else [-math.inf, 0.0, math.inf]
            total = 0.0
            for a, b in zip(pieces[:-1], pieces[1:]):
                val, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=QUAD_RTOL, limit=200)
                total += val
            return total / math.sqrt(2.0 * math.pi)
        return math.fsum(
            math.comb(order, j) * mu ** (order - j) * sigma**j * _std_normal_moment(j)
            for j in range(order + 1)
        )

    # uniform
    lo, hi = spec.lo - center, spec.hi - center
    w = hi - lo
    k1 = order + 1
    if absolute:
        if lo >= 0:
            return (hi**k1 - lo**k1) / (k1 * w)
        if hi <= 0:
            return ((-lo) ** k1 - (-hi) ** k1) / (k1 * w)
        return ((-lo) ** k1 + hi**k1) / (k1 * w)
    return (hi**k1 - lo**k1) / (k1 * w)


def _std_normal_moment(j: int) -> float:
    if j % 2:
        return 0.0
    return float(math.prod(range(j - 1, 0, -2))) if j else 1.0


def log_mgf(spec: DistributionSpec, t: float) -> float:
    """log E e^{tX}, evaluated without overflow for large |t|."""
    if t == 0:
        return 0.0
    fam = spec.family
    if fam == "normal":
        return spec.mu * t + 0.5 * (spec.sigma * t) ** 2
    if fam == "uniform":
        x = t * (spec.hi - spec.lo)
        if abs(x) < 1e-8:
            core = x / 2.0
        elif x > 0:
            core = x + math.log(-math.expm1(-x)) - math.log(x)
        else:
            core = math.log(-math.expm1(x)) - math.log(-x)
        return t * spec.lo + core
    if fam == "binomial":
        p = spec.p
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return spec.n * t
        return spec.n * float(np.logaddexp(math.log1p(-p), math.log(p) + t))
    vals, probs = spec.support_atoms()
    live = probs > 0
    return float(special.logsumexp(t * vals[live], b=probs[live]))


def dlog_mgf(spec: DistributionSpec, t: float) -> float:
    """d/dt log E e^{tX}: the mean of X under the exponentially tilted law."""
    fam = spec.family
    if fam == "normal":
        return spec.mu + spec.sigma**2 * t
    if fam == "uniform":
        w = spec.hi - spec.lo
        x = t * w
        if abs(x) < 1e-6:
            return spec.lo + w * (0.5 + x / 12.0)
        return spec.lo + w * (1.0 / -math.expm1(-x) - 1.0 / x)
    if fam == "binomial":
        p = spec.p
        if p in (0.0, 1.0):
            return spec.n * p
        return spec.n * float(special.expit(t + math.log(p) - math.log1p(-p)))
    vals, probs = spec.support_atoms()
    live = probs > 0
    logw = t * vals[live] + np.log(probs[live])
    w = np.exp(logw - logw.max())
    return float(np.dot(w, vals[live]) / w.sum())


def mgf(spec: DistributionSpec, t: float) -> float:
    if t == 0:
        return 1.0
    return math.exp(log_mgf(spec, t))


def entropy(spec: DistributionSpec) -> float:
    """Shannon entropy (discrete) or differential entropy, in nats."""
    if spec.family == "normal":
        return 0.5 * math.log(2.0 * math.pi * math.e * spec.sigma**2)
    if spec.family == "uniform":
        return math.log(spec.hi - spec.lo)
    _, probs = spec.support_atoms()
    probs = probs[probs > 0]
    return -math.fsum(probs * np.log(probs))


def expect(spec: DistributionSpec, fn: Callable) -> float:
    """E fn(X). ``fn`` must accept numpy arrays (discrete) and floats."""
    if spec.is_discrete:
        vals, probs = spec.support_atoms()
        live = probs > 0
        return math.fsum(np.asarray(fn(vals[live]), dtype=float) * probs[live])
    if spec.family == "uniform":
        val, _ = integrate.quad(lambda x: float(fn(x)), spec.lo, spec.hi, epsrel=QUAD_RTOL, limit=200)
        return val / (spec.hi - spec.lo)
    mu, sigma = spec.mu, spec.sigma
    g = lambda z: float(fn(mu + sigma * z)) * math.exp(-0.5 * z * z)
    val, _ = integrate.quad(g, -math.inf, math.inf, epsrel=QUAD_RTOL, limit=200)
    return val / math.sqrt(2.0 * math.pi)


# sampling -------------------------------------------------------------


def uniforms(seed: int, n: int, stream: int = 0, offset: int = 0) -> np.ndarray:
    """n uniforms in (0, 1); value i is a function of (seed, stream, offset + i) only."""
    key = (int(stream) << 64) | (int(seed) & 0xFFFFFFFFFFFFFFFF)
    gen = np.random.Philox(key=key)
    blocks, skip = divmod(int(offset), 4)  # Philox4x64 emits four words per counter step
    if blocks:
        gen.advance(blocks)
    raw = gen.random_raw(int(n) + skip)[skip:]
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_NEG_53


def draw(spec: DistributionSpec, n: int, seed: int, stream: int = 0, offset: int = 0) -> np.ndarray:
    return np.asarray(spec.ppf(uniforms(seed, n, stream, offset)), dtype=float)


@dataclass(frozen=True)
class SampleBatch:
    values: tuple
    seed: int
    spec: DistributionSpec

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


def sample(spec: DistributionSpec, n: int, seed: int) -> SampleBatch:
    if n < 1:
        raise InvalidInput(f"sample size must be positive, got {n}")
    return SampleBatch(tuple(draw(spec, n, seed).tolist()), int(seed), spec)


@dataclass(frozen=True)
class EmpiricalCDF:
    """Right-continuous step function F_n(x) = #{X_i <= x} / n."""

    sorted_values: np.ndarray = field(repr=False)

    def __call__(self, x):
        n = len(self.sorted_values)
        out = np.searchsorted(self.sorted_values, np.asarray(x, dtype=float), side="right") / n
        return float(out) if np.ndim(out) == 0 else out


def empirical_cdf(batch) -> EmpiricalCDF:
    values = batch.as_array() if isinstance(batch, SampleBatch) else np.asarray(batch, dtype=float)
    if values.size == 0:
        raise InvalidInput("empirical CDF of an empty batch")
    return EmpiricalCDF(np.sort(values))
