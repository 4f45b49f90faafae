import json
import random

import pytest

from prehom.exact import format_rational


def quadruple_doc(x):
    return [[[format_rational(m[i, j]) for j in range(1, 6)] for i in range(1, 6)] for m in x]


@pytest.fixture
def write_quadruple(tmp_path):
    def write(x, name="x.json"):
        path = tmp_path / name
        path.write_text(json.dumps(x if isinstance(x, (list, dict)) else quadruple_doc(x)), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
