import pytest

from dualfib.dual import build_dual
from dualfib.generators import fibration_gallery, indexed_gallery


@pytest.fixture(scope="session")
def gallery():
    return fibration_gallery()


@pytest.fixture(scope="session")
def duals(gallery):
    return {name: build_dual(s) for name, s in gallery.items()}


@pytest.fixture(scope="session")
def indexed():
    return indexed_gallery()


def pytest_generate_tests(metafunc):
    # parametrize over gallery names so each family reports separately
    if "fib_name" in metafunc.fixturenames:
        metafunc.parametrize("fib_name", sorted(fibration_gallery()))
    if "idx_name" in metafunc.fixturenames:
        metafunc.parametrize("idx_name", sorted(indexed_gallery()))
