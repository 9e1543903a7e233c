from __future__ import annotations

import pytest

from transvector.algfile import parse_algebra_file
from transvector.catalog import build_pair, build_space
from transvector.data import algebra_path


@pytest.fixture(scope="session")
def sl2r():
    # goes through the file parser on purpose: the bundled definition is the
    # reference fixture for every closed-form oracle below
    return parse_algebra_file(algebra_path("sl2r"))


@pytest.fixture(scope="session")
def su21():
    return build_space("su21")


@pytest.fixture(scope="session")
def su21_real_form():
    return build_pair("su21", "real-form")


@pytest.fixture(scope="session")
def su21_complex_hyperplane():
    return build_pair("su21", "complex-hyperplane")


@pytest.fixture(scope="session")
def sl3r():
    return build_space("sl3r")
