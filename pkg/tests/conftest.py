import numpy as np
import pytest
from hypothesis import strategies as st

from beliefhc.belief import Frame, MassFunction


@st.composite
def mass_functions(draw, frame=None, min_size=1, max_size=6, allow_empty=False):
    """Random valid mass function, optionally on a given frame."""
    if frame is None:
        size = draw(st.integers(min_size, max_size))
        frame = Frame(list("abcdefgh"[:size]))
    full = frame.full
    lo = 0 if allow_empty else 1
    masks = draw(st.lists(st.integers(lo, full), min_size=1, max_size=6, unique=True))
    weights = draw(st.lists(st.floats(0.01, 1.0), min_size=len(masks), max_size=len(masks)))
    total = sum(weights)
    return MassFunction(frame, {m: w / total for m, w in zip(masks, weights)})


@st.composite
def mass_pairs(draw, max_size=6):
    size = draw(st.integers(1, max_size))
    frame = Frame(list("abcdefgh"[:size]))
    return draw(mass_functions(frame=frame)), draw(mass_functions(frame=frame))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    keywords = report.keywords
    if "criterion" not in keywords:
        return
    label = getattr(report, "criterion_label", None)
    if label is None:
        return
    prev = _ACCEPTANCE.get(label, "PASS")
    _ACCEPTANCE[label] = "PASS" if prev == "PASS" and report.outcome == "passed" else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        number, text = marker.args
        report.criterion_label = f"criterion {number:>2}: {text}"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{_ACCEPTANCE[label]}  {label}")
