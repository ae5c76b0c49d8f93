import numpy as np
import pytest

from hullfilter import PointSet, Precision, _backend

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def square_center():
    return PointSet.from_points([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])


@pytest.fixture(params=_backend.available())
def backend(request):
    with _backend.use_backend(request.param):
        yield request.param


@pytest.fixture(params=[Precision.F32, Precision.F64], ids=["f32", "f64"])
def precision(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def acceptance():
    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if passed else 'FAIL'}] {number}. {title}"
        if detail:
            line += f" | {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
