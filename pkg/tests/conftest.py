import pytest

import _support as sup


@pytest.fixture(scope="session")
def fixture_a():
    return sup.build(sup.FIXTURE_A)


@pytest.fixture(scope="session")
def fixture_b():
    return sup.build(sup.FIXTURE_B)


@pytest.fixture(scope="session")
def fixture_c():
    return sup.build(sup.FIXTURE_C)


@pytest.fixture(scope="session")
def population():
    return sup.build_population()
