import logfire
import pytest

from runtime.generators import gen_fgn_classes


def pytest_configure(config):
    # Spans stay in-process during tests.
    logfire.configure(send_to_logfire=False, console=False)


@pytest.fixture
def fgn4():
    """gen_fgn(4) with its g- and f-classes."""
    return gen_fgn_classes(4)


@pytest.fixture
def fgn4_factory():
    return gen_fgn_classes
