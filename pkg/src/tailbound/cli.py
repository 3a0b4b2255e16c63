"""Command-line front end: bound, compare, verify, means, report.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import registry, tails
from .dist import DistributionSpec, parse_spec
from .errors import InvalidInput
from .means import classical_means, power_mean
from .orderstats import SortedSample, hurlimann_average_excess, hurlimann_stop_loss, hurlimann_upper_average, samuelson_interval
from .verify import load_corpus, suite_run

DEFAULT_P_GRID = (-10.0, -5.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        return str(x)
    return f"{x:.6g}"


def _table(rows, out) -> None:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _split_top(text: str) -> list:
    """Split on commas that are not nested inside brackets or parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in parts if p.strip()]


def _parse_kv(items) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def default_seed() -> int:
    raw = os.environ.get("TAILBOUND_SEED", "0")
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"TAILBOUND_SEED must be an integer, got {raw!r}") from None
    if seed < 0:
        raise UsageError("TAILBOUND_SEED must be nonnegative")
    return seed


# bound ----------------------------------------------------------------------


def cmd_bound(args, out) -> int:
    if args.list:
        rows = [["id", "direction", "params", "summary"]]
        for ident in registry.bound_ids():
            e = registry.REGISTRY[ident]
            params = ",".join(list(e.params) + [f"[{k}]" for k in e.optional])
            rows.append([ident, e.direction + (" control" if e.control else ""), params, e.summary])
        _table(rows, out)
        return 0
    if not args.ineq:
        raise UsageError("bound needs --ineq <id> or --list")
    entry = registry.REGISTRY.get(args.ineq)
    if entry is None:
        raise UsageError(f"unknown inequality id {args.ineq!r}; registered ids: {', '.join(registry.bound_ids())}")
    items = list(args.param or [])
    for group in args.params or []:
        items.extend(_split_top(group))
    b = entry.evaluate(_parse_kv(items))
    rows = [["field", "value"], ["inequality", b.inequality_id], ["direction", entry.direction], ["value", fmt(b.value)], ["raw_value", fmt(b.raw_value)]]
    for k, v in b.free_params.items():
        rows.append([f"free:{k}", fmt(v)])
    rows.append(["preconditions", "ok" if b.preconditions_ok else "FAILED"])
    for m in b.messages:
        rows.append(["note", m])
    _table(rows, out)
    return 0 if b.preconditions_ok else 2


# compare ----------------------------------------------------------------------


def _load_spec(text: str) -> DistributionSpec:
    p = Path(text)
    body = p.read_text() if p.exists() else text
    body = body.strip()
    try:
        if body.startswith("{"):
            return DistributionSpec.from_json(body)
        return parse_spec(body)
    except (InvalidInput, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed distribution spec: {exc}") from None


def applicable_bounds(spec: DistributionSpec, x: float, n: int = 1, tail: str = "upper") -> tuple[list, list]:
    """Bounds on P[S_n - n mu >= x] (upper) or P[|S_n - n mu| >= x] (two-sided).

    Returns (rows, skipped): rows are (id, value) and skipped are (id, reason).
    Two-sided values add the bounds for both tails.
    """
    if tail not in ("upper", "two-sided"):
        raise UsageError("tail must be 'upper' or 'two-sided'")
    if x < 0:
        raise UsageError("threshold must be nonnegative")
    mu, var = spec.mean, spec.variance
    lo, hi = spec.support
    two = tail == "two-sided"
    k = 2.0 if two else 1.0
    rows, skipped = [], []

    def add(ident, fn):
        if x == 0:
            # the event is certain up to its boundary, every bound clamps to 1
            rows.append((ident, 1.0))
            return
        try:
            rows.append((ident, fn()))
        except (InvalidInput, ValueError, ArithmeticError) as exc:
            skipped.append((ident, str(exc)))

    add("chebyshev", lambda: tails.chebyshev(n * var, x).value)

    def chern():
        up = tails.chernoff_optimize(spec, n * mu + x, "upper", n).value
        if not two:
            return up
        return min(1.0, up + tails.chernoff_optimize(spec, n * mu - x, "lower", n).value)

    add("chernoff_sum", chern)
    if not two:
        if lo >= 0 and mu > 0:
            add("markov", lambda: tails.markov(n * mu, n * mu + x).value)
        else:
            skipped.append(("markov", "needs a nonnegative variable with positive mean"))
    else:
        skipped.append(("markov", "one-sided only"))
    bounded = math.isfinite(lo) and math.isfinite(hi) and hi > lo
    if bounded:
        b = max(hi - mu, mu - lo) if two else hi - mu
        add("hoeffding_1", lambda: min(1.0, k * tails.hoeffding_general([(lo - mu, hi - mu)] * n, x).value))
        add("azuma", lambda: tails.azuma([max(hi - mu, mu - lo)] * n, x, "two" if two else "one").value)
        add("mcdiarmid", lambda: min(1.0, k * tails.mcdiarmid([hi - lo] * n, x, "upper").value))
        if b > 0 and var > 0:
            add("bennett", lambda: min(1.0, k * tails.bennett(n, var / b**2, x / b).value))
            add("bernstein", lambda: min(1.0, k * tails.bernstein(n, var / b**2, x / (n * b)).value))
    else:
        for ident in ("hoeffding_1", "azuma", "mcdiarmid", "bennett", "bernstein"):
            skipped.append((ident, "needs bounded support"))
    if spec.family == "normal" and two:
        add("normal_upper", lambda: tails.normal_tail_bounds(x / (spec.sigma * math.sqrt(n)))[0].value)
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows, skipped


def cmd_compare(args, out) -> int:
    spec = _load_spec(args.spec)
    if args.n < 1:
        raise UsageError("--n must be a positive integer")
    rows, skipped = applicable_bounds(spec, args.threshold, args.n, args.tail)
    event = "S_n - n*mu >= x" if args.tail == "upper" else "|S_n - n*mu| >= x"
    out.write(f"spec {spec}  n={args.n}  event {event}  x={fmt(args.threshold)}\n")
    _table([["bound", "value"]] + [[i, fmt(v)] for i, v in rows], out)
    for ident, reason in skipped:
        out.write(f"not applicable: {ident}: {reason}\n")
    return 0


# verify ---------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    if args.dump_corpus:
        out.write(corpus_mod.corpus_json() + "\n")
        return 0
    seed = default_seed() if args.seed is None else args.seed
    if seed < 0:
        raise UsageError("--seed must be nonnegative")
    if args.corpus:
        try:
            text = Path(args.corpus).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read corpus: {exc}") from None
        scenarios = load_corpus(text)
    else:
        scenarios = corpus_mod.default_corpus()
    report = suite_run(scenarios, seed=seed, reps=args.reps)
    csv_text = report.to_csv()
    if args.out:
        path = Path(args.out)
        path.write_text(csv_text)
        path.with_suffix(".json").write_text(report.to_json() + "\n")
    else:
        out.write(csv_text)
    fails = report.failures()
    n_ctrl = sum(r.control for r in report.results)
    sys.stderr.write(f"{len(report.results)} scenarios, {n_ctrl} controls, {len(fails)} failures (seed {seed})\n")
    for r in fails:
        what = r.error or ("control not violated" if r.control else f"violated: bound {fmt(r.bound)} < truth {fmt(r.truth)}")
        sys.stderr.write(f"FAIL {r.scenario_id}: {what}\n")
    return 0 if report.passed else 1


# means ------------------------------------------------------------------------


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse numbers from {text!r}") from None


def cmd_means(args, out) -> int:
    values = _floats(args.values)
    grid = _floats(args.p_grid) if args.p_grid else list(DEFAULT_P_GRID)
    h, g, a = classical_means(values)
    out.write(f"harmonic {fmt(h)} <= geometric {fmt(g)} <= arithmetic {fmt(a)}\n")
    _table([["p", "M_p"]] + [[fmt(p), fmt(power_mean(values, p))] for p in grid], out)
    return 0


# report -----------------------------------------------------------------------


def cmd_report(args, out) -> int:
    try:
        lines = Path(args.sample).read_text().split()
    except OSError as exc:
        raise UsageError(f"cannot read sample: {exc}") from None
    try:
        s = SortedSample(tuple(float(v) for v in lines))
    except ValueError as exc:
        raise UsageError(f"malformed sample file: {exc}") from None
    x, n = s.values, s.n
    checks = []
    for r in range(n):
        checks.append(hurlimann_upper_average(s, r))
        if r >= 1:
            checks.append(hurlimann_average_excess(s, r))
        d = x[0] if r == 0 else 0.5 * (x[r - 1] + x[r])
        checks.append(hurlimann_stop_loss(s, r, d))
    rows = [["check", "r", "lhs", "rhs", "slack", "holds"]]
    for c in checks:
        rows.append([c.inequality_id, c.details["r"], fmt(c.lhs), fmt(c.rhs), fmt(c.slack), c.holds])
    _table(rows, out)
    lo, hi, inside = samuelson_interval(s)
    out.write(f"samuelson interval [{fmt(lo)}, {fmt(hi)}] contains sample: {inside}\n")
    return 0 if inside and all(c.holds for c in checks) else 1


# entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tailbound", description="Probability inequalities: evaluate, compare and verify.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate one registered inequality")
    b.add_argument("--ineq")
    b.add_argument("--param", action="append", metavar="K=V")
    b.add_argument("--params", action="append", metavar="K=V,...")
    b.add_argument("--list", action="store_true")

    c = sub.add_parser("compare", help="all applicable bounds for a sum tail")
    c.add_argument("--spec", required=True, help="spec file (JSON or text form) or an inline spec")
    c.add_argument("--tail", default="upper", choices=["upper", "two-sided"])
    c.add_argument("--event", dest="tail", choices=["upper", "two-sided"], help=argparse.SUPPRESS)
    c.add_argument("--threshold", type=float, required=True)
    c.add_argument("--n", type=int, default=1)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--corpus")
    v.add_argument("--seed", type=int)
    v.add_argument("--reps", type=int)
    v.add_argument("--out")
    v.add_argument("--dump-corpus", action="store_true", help="print the default corpus and exit")

    m = sub.add_parser("means", help="harmonic, geometric, arithmetic and power means")
    m.add_argument("--values", required=True)
    m.add_argument("--p-grid")

    r = sub.add_parser("report", help="deterministic order-statistic checks on a sample file")
    r.add_argument("sample")
    return ap


COMMANDS = {"bound": cmd_bound, "compare": cmd_compare, "verify": cmd_verify, "means": cmd_means, "report": cmd_report}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, InvalidInput) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
