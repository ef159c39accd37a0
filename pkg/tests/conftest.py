import json
from pathlib import Path

import pytest
from hypothesis import settings

from inertia.zoo import parse_zoo, standard_zoo

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

HERE = Path(__file__).parent
COMPLEXES = HERE.parent / "src" / "inertia" / "data" / "complexes"
REPS = HERE.parent / "src" / "inertia" / "data" / "reps"


@pytest.fixture(scope="session")
def derived():
    return json.loads((HERE / "fixtures" / "derived.json").read_text())


@pytest.fixture(scope="session")
def baselines():
    return json.loads((HERE / "fixtures" / "baselines.json").read_text())


@pytest.fixture(scope="session")
def zoo60():
    return standard_zoo(60)


@pytest.fixture(scope="session")
def s3():
    return parse_zoo("sym:3")


@pytest.fixture(scope="session")
def q8():
    return parse_zoo("quaternion_generalized:3")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
