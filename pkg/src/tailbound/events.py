"""Finite probability spaces, events and the elementary union/intersection bounds.

Events are sets of outcome indices. Everything is computed exactly by
summation, so these functions double as oracles for the bounds they state.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput

MAX_EVENTS = 20


@dataclass(frozen=True)
class FiniteProbabilitySpace:
    outcome_probs: tuple

    def __post_init__(self):
        probs = tuple(float(q) for q in self.outcome_probs)
        if not probs:
            raise InvalidInput("probability space needs at least one outcome")
        if any(q < 0 or not math.isfinite(q) for q in probs):
            raise InvalidInput("outcome probabilities must be nonnegative")
        total = math.fsum(probs)
        if abs(total - 1.0) > 1e-12:
            raise InvalidInput(f"outcome probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "outcome_probs", probs)

    @property
    def outcome_count(self) -> int:
        return len(self.outcome_probs)

    def event(self, indices: Iterable[int]) -> "Event":
        ev = Event(frozenset(int(i) for i in indices))
        self._validate(ev)
        return ev

    @property
    def full(self) -> "Event":
        return Event(frozenset(range(self.outcome_count)))

    @property
    def empty(self) -> "Event":
        return Event(frozenset())

    def _validate(self, ev: "Event") -> None:
        bad = [i for i in ev.members if not 0 <= i < self.outcome_count]
        if bad:
            raise InvalidInput(f"outcome indices {sorted(bad)} out of range for {self.outcome_count} outcomes")

    @classmethod
    def product(cls, *marginals: Sequence[float]) -> "FiniteProbabilitySpace":
        """Independent product; outcome index is row-major over the marginals."""
        probs = [math.prod(combo) for combo in itertools.product(*marginals)]
        return cls(tuple(probs))


@dataclass(frozen=True)
class Event:
    members: frozenset

    def __and__(self, other: "Event") -> "Event":
        return Event(self.members & other.members)

    def __or__(self, other: "Event") -> "Event":
        return Event(self.members | other.members)

    def complement(self, space: FiniteProbabilitySpace) -> "Event":
        return Event(frozenset(range(space.outcome_count)) - self.members)

    def issubset(self, other: "Event") -> bool:
        return self.members <= other.members


def exact_prob(space: FiniteProbabilitySpace, event: Event) -> float:
    space._validate(event)
    p = math.fsum(space.outcome_probs[i] for i in event.members)
    return min(1.0, max(0.0, p))


def _union(events: Sequence[Event]) -> Event:
    out = frozenset()
    for ev in events:
        out |= ev.members
    return Event(out)


def _intersection(events: Sequence[Event]) -> Event:
    out = events[0].members
    for ev in events[1:]:
        out &= ev.members
    return Event(out)


def _check_events(space, events) -> list:
    events = list(events)
    if not events:
        raise InvalidInput("need at least one event")
    for ev in events:
        space._validate(ev)
    return events


def boole_union_bounds(space: FiniteProbabilitySpace, events: Sequence[Event]) -> tuple[float, float]:
    """(max_i P[A_i], min(1, sum_i P[A_i])) around P[union]."""
    events = _check_events(space, events)
    probs = [exact_prob(space, ev) for ev in events]
    return max(probs), min(1.0, math.fsum(probs))


def bonferroni_intersection(space: FiniteProbabilitySpace, events: Sequence[Event]) -> float:
    events = _check_events(space, events)
    raw = math.fsum(exact_prob(space, ev) for ev in events) - (len(events) - 1)
    return max(0.0, min(1.0, raw))


def intersection_sums(space: FiniteProbabilitySpace, events: Sequence[Event], depth: Optional[int] = None) -> list[float]:
    """[P_1, ..., P_depth] where P_k sums P[A_{i1} & ... & A_{ik}] over k-subsets."""
    events = _check_events(space, events)
    n = len(events)
    if n > MAX_EVENTS:
        raise InvalidInput(f"at most {MAX_EVENTS} events supported, got {n}")
    depth = n if depth is None else depth
    out = []
    for k in range(1, depth + 1):
        out.append(
            math.fsum(exact_prob(space, _intersection(combo)) for combo in itertools.combinations(events, k))
        )
    return out


def bonferroni_partial_sums(space: FiniteProbabilitySpace, events: Sequence[Event]) -> list[float]:
    """Unclamped S_d = P_1 - P_2 + ... +/- P_d for d = 1..n."""
    sums, acc = [], 0.0
    for k, pk in enumerate(intersection_sums(space, events), start=1):
        acc += pk if k % 2 else -pk
        sums.append(acc)
    return sums


def karlin_ost_truncation(space: FiniteProbabilitySpace, events: Sequence[Event], depth: int) -> tuple[float, float]:
    """Sandwich of P[union] from the inclusion-exclusion sums truncated at ``depth``.

    Odd-depth partial sums are upper bounds and even-depth ones lower bounds,
    so the pair (S_{depth-1}, S_depth) is ordered by parity of ``depth``
    (S_0 = 0). At full depth both sides equal the exact union probability.
    """
    events = _check_events(space, events)
    n = len(events)
    if not 1 <= depth <= n:
        raise InvalidInput(f"depth must lie in [1, {n}], got {depth}")
    if n > MAX_EVENTS:
        raise InvalidInput(f"at most {MAX_EVENTS} events supported, got {n}")
    p = intersection_sums(space, events, depth)
    signed = [pk if k % 2 else -pk for k, pk in enumerate(p, start=1)]
    s_d = math.fsum(signed)
    if depth == n:
        v = min(1.0, max(0.0, s_d))
        return v, v
    s_prev = math.fsum(signed[:-1])
    lower, upper = (s_prev, s_d) if depth % 2 else (s_d, s_prev)
    return max(0.0, min(1.0, lower)), max(0.0, min(1.0, upper))


@dataclass(frozen=True)
class AxiomRow:
    item: str
    lhs: float
    rhs: float
    holds: bool
    note: str = ""


def axiom_suite(space: FiniteProbabilitySpace, a: Event, b: Event, tol: float = 1e-12) -> list[AxiomRow]:
    """Evaluate the elementary relations between two events.

    Each row reads ``lhs <= rhs``. Rows whose hypothesis fails (A not a subset
    of B, or P[B] = 0) are reported with ``holds=True`` and a note.
    """
    pa, pb = exact_prob(space, a), exact_prob(space, b)
    pab = exact_prob(space, a & b)
    pac = exact_prob(space, a.complement(space))
    pbc = exact_prob(space, b.complement(space))
    rows = [
        AxiomRow("nonnegative", 0.0, pa, pa >= -tol),
        AxiomRow("at-most-one", pa, 1.0, pa <= 1.0 + tol),
    ]
    subset = a.issubset(b)
    if subset:
        rows.append(AxiomRow("monotone", pa, pb, pa <= pb + tol))
        printed = pb <= pac + tol
        rows.append(
            AxiomRow(
                "complement",
                pbc,
                pac,
                pbc <= pac + tol,
                note=f"printed form P[B] <= P[A^c] gives {pb:.6g} <= {pac:.6g}: {'holds' if printed else 'fails'}",
            )
        )
    else:
        rows.append(AxiomRow("monotone", pa, pb, True, note="skipped: A is not a subset of B"))
        rows.append(AxiomRow("complement", pbc, pac, True, note="skipped: A is not a subset of B"))
    rows.append(AxiomRow("intersection-min", pab, min(pa, pb), pab <= min(pa, pb) + tol))
    rows.append(AxiomRow("bonferroni-pair", pa + pb - 1.0, pab, pa + pb - 1.0 <= pab + tol))
    if pb > 0:
        cond = pab / pb
        rows.append(AxiomRow("conditional", pab, cond, pab <= cond + tol))
    else:
        rows.append(AxiomRow("conditional", pab, math.nan, True, note="skipped: P[B] = 0"))
    return rows


# serialization ----------------------------------------------------------


def space_to_json(space: FiniteProbabilitySpace, events: Sequence[Event]) -> str:
    doc = {"probs": list(space.outcome_probs), "events": [sorted(ev.members) for ev in events]}
    return json.dumps(doc, sort_keys=True)


def space_from_json(text: str) -> tuple[FiniteProbabilitySpace, list[Event]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed space document: {exc}") from exc
    extra = set(doc) - {"probs", "events"}
    if extra:
        raise InvalidInput(f"unknown keys {sorted(extra)}")
    space = FiniteProbabilitySpace(tuple(doc["probs"]))
    return space, [space.event(ix) for ix in doc.get("events", [])]
