from __future__ import annotations

from pathlib import Path

import pytest

from ddlkit import Theory, parse_scenario, parse_theory
from ddlkit.parser import Scenario

FIXTURES = Path(__file__).parent / "fixtures"


def load_theory(name: str) -> Theory:
    return parse_theory((FIXTURES / name).read_text(encoding="utf-8"))


def load_case(relative: str) -> Scenario:
    path = FIXTURES / relative
    return parse_scenario(path.read_text(encoding="utf-8"), name=path.stem)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def example1() -> Theory:
    return load_theory("example1.ddl")


@pytest.fixture
def homicide() -> Theory:
    return load_theory("homicide.ddl")


@pytest.fixture
def uturn() -> Theory:
    return load_theory("uturn.ddl")


@pytest.fixture
def sale() -> Theory:
    return load_theory("sale.ddl")
