import pytest

from f1geom.analytic.zeros import find_zeros


@pytest.fixture(scope="session")
def zeros1000():
    return find_zeros(1000)


@pytest.fixture(scope="session")
def zeros500(zeros1000):
    return zeros1000.take(500)
