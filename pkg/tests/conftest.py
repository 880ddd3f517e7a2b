import pytest

from ffnr.field import make_field


@pytest.fixture(scope="session")
def F7():
    """Z_7[√−1], α = −1."""
    return make_field(7, alpha=6)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)
