import pytest
from hypothesis import strategies as st

from chowkit.chow_core import BundleClass, TruncatedClass, line_bundle, trivial_bundle


@st.composite
def bundles(draw, n=None, max_n=5, max_rank=6, coeff=6):
    """Arbitrary rank/Chern-class pairs on P^n (c_i = 0 above the rank)."""
    n = draw(st.integers(1, max_n)) if n is None else n
    r = draw(st.integers(0, max_rank))
    top = min(r, n)
    cs = [1] + [draw(st.integers(-coeff, coeff)) for _ in range(top)]
    return BundleClass(n, r, TruncatedClass(n, tuple(cs)))


@st.composite
def split_bundles(draw, n, max_summands=4, deg=3):
    """Direct sums of line bundles, returned with their degrees."""
    degrees = draw(st.lists(st.integers(-deg, deg), min_size=1, max_size=max_summands))
    b = trivial_bundle(n, 0)
    for d in degrees:
        b = b + line_bundle(n, d)
    return b, degrees


@st.composite
def classes(draw, n, coeff=20, rational=False):
    if rational:
        num = st.fractions(min_value=-coeff, max_value=coeff, max_denominator=7)
    else:
        num = st.integers(-coeff, coeff)
    return TruncatedClass(n, tuple(draw(num) for _ in range(n + 1)))


# one summary line per acceptance criterion

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda s: int(s.split("_")[1]) if s.split("_")[1].isdigit() else 99):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
