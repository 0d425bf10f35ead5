from __future__ import annotations

import pytest

from springer_garside.garside import Garside
from springer_garside.parabolic import Parabolics
from springer_garside.reflection import build_interval, build_root_system
from springer_garside.springer import RegularParams, build_springer_data
from springer_garside.verify import G31Instance


class Small:
    """A small groupoid with its engine and parabolic machinery."""

    def __init__(self, type_label: str, d: int):
        self.system = build_root_system(type_label)
        self.lattice = build_interval(self.system)
        self.params = RegularParams.from_degree(self.system.coxeter_number, d)
        self.data = build_springer_data(self.lattice, self.params)
        self.g = Garside(self.data)
        self.P = Parabolics(self.g)


@pytest.fixture(scope="session")
def g31() -> G31Instance:
    return G31Instance.build("E8", 4)


@pytest.fixture(scope="session")
def e8_lattice(g31):
    return g31.lattice


@pytest.fixture(scope="session")
def a2_micro() -> Small:
    return Small("A2", 2)


@pytest.fixture(scope="session")
def small_instances() -> dict[str, Small]:
    return {label: Small(label, 1) for label in ("A2", "B2", "A3")}


@pytest.fixture(scope="session")
def a4_d2() -> Small:
    return Small("A4", 2)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
