import pytest

from xcorr4 import TowerParams, build_field
from xcorr4.expsum import make_context


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(n, k):
        if (n, k) not in cache:
            cache[(n, k)] = build_field(TowerParams(k, n))
        return cache[(n, k)]

    return get


@pytest.fixture(scope="session")
def f32(fields):
    return fields(3, 2)


@pytest.fixture(scope="session")
def f31(fields):
    return fields(3, 1)


@pytest.fixture(scope="session")
def f33(fields):
    return fields(3, 3)


@pytest.fixture(scope="session")
def f52(fields):
    return fields(5, 2)


@pytest.fixture(scope="session")
def ctx32(f32):
    return make_context(f32)


@pytest.fixture(scope="session")
def ctx33(f33):
    return make_context(f33)
