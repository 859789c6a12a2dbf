import random
from fractions import Fraction

import pytest

from twistder import catalog
from twistder.bialgebra import Tensor

_CRITERIA: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number, title = marker.args
    _CRITERIA.setdefault(number, (title, []))[1].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, results = _CRITERIA[number]
        verdict = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title} ({sum(results)}/{len(results)} tests)")


BIALGEBRA_NAMES = tuple(catalog.BIALGEBRAS)
LIE_NAMES = tuple(catalog.LIE_ALGEBRAS)


@pytest.fixture(scope="session")
def h4():
    return catalog.get("h4_sweedler")


@pytest.fixture(scope="session", params=BIALGEBRA_NAMES)
def any_bialgebra(request):
    return catalog.get(request.param)


@pytest.fixture(scope="session", params=LIE_NAMES)
def any_lie(request):
    return catalog.get(request.param)


def random_cochain(rng: random.Random, dim: int, degree: int, terms: int = 3) -> Tensor:
    """A sparse random cochain with small integer and half-integer coefficients."""
    coords = {}
    for _ in range(rng.randint(1, terms)):
        key = tuple(rng.randrange(dim) for _ in range(degree))
        coords[key] = Fraction(rng.randint(-3, 3), rng.choice((1, 2)))
    return Tensor(degree, coords)
