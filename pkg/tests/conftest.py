import numpy as np
import pytest
from hypothesis import settings, strategies as st

from tailbound.dist import DistributionSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def finite_specs(draw, max_atoms=6, lo=-5.0, hi=5.0):
    k = draw(st.integers(1, max_atoms))
    vals = draw(st.lists(st.floats(lo, hi, allow_nan=False), min_size=k, max_size=k, unique=True))
    w = np.array(draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k)))
    w = w / w.sum()
    return DistributionSpec.finite(list(zip(vals, w.tolist())))


@st.composite
def any_specs(draw):
    kind = draw(st.sampled_from(["finite", "bernoulli", "rademacher", "binomial", "normal", "uniform"]))
    if kind == "finite":
        return draw(finite_specs())
    if kind == "bernoulli":
        return DistributionSpec.bernoulli(draw(st.floats(0.01, 0.99)))
    if kind == "rademacher":
        return DistributionSpec.rademacher()
    if kind == "binomial":
        return DistributionSpec.binomial(draw(st.integers(1, 30)), draw(st.floats(0.01, 0.99)))
    if kind == "normal":
        return DistributionSpec.normal(draw(st.floats(-3, 3)), draw(st.floats(0.2, 3)))
    a = draw(st.floats(-3, 3))
    return DistributionSpec.uniform(a, a + draw(st.floats(0.1, 4)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def default_report():
    from tailbound.corpus import default_corpus
    from tailbound.verify import suite_run

    return suite_run(default_corpus(), seed=0)


CRITERIA = {
    1: "bound validity over the default corpus, controls caught",
    2: "closed-form spot values",
    3: "Chernoff optimizer",
    4: "Papadatos factor and domination",
    5: "power-mean monotonicity and limits",
    6: "Karlin-Ost sandwich",
    7: "estimation bounds",
    8: "deterministic sample inequalities",
    9: "reproducible verify CSV",
}
_criteria_outcomes: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when != "call" and not report.failed:
        return
    num = int(name.split("_")[2])
    entry = _criteria_outcomes.setdefault(num, {"ok": True, "notes": []})
    if report.failed:
        entry["ok"] = False
        msg = getattr(report.longrepr, "reprcrash", None)
        entry["notes"].append(f"{name}: {msg.message.splitlines()[0] if msg else 'failed'}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num, label in CRITERIA.items():
        entry = _criteria_outcomes.get(num)
        if entry is None:
            terminalreporter.write_line(f"criterion {num}: NOT RUN  {label}")
            continue
        status = "PASS" if entry["ok"] else "FAIL"
        line = f"criterion {num}: {status}  {label}"
        if entry["notes"]:
            line += "  [" + "; ".join(entry["notes"]) + "]"
        terminalreporter.write_line(line)
