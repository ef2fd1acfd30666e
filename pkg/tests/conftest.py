from pathlib import Path

import pytest

from gentle import acceptance as acc
from gentle.presentation import make_presentation
from gentle.surface import build_disc_model

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def kron():
    return acc.kronecker()


@pytest.fixture
def kron_model(kron):
    return build_disc_model(kron)


@pytest.fixture
def a2():
    return make_presentation(["1", "2"], [("a", "1", "2")], [], "A2")


@pytest.fixture
def a3():
    return make_presentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], [], "A3")


@pytest.fixture
def a3_rel():
    return make_presentation(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], [("a", "b")], "A3r")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in RESULTS:
            terminalreporter.write_line(r.line)
