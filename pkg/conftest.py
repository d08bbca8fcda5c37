import logging
import traceback
from contextlib import contextmanager

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full sweeps at the catalog bounds; deselect with -m 'not slow'")


@contextmanager
def _not_raises(exception):
    try:
        yield
    except exception:
        logging.error(traceback.format_exc())
        raise pytest.fail("DID RAISE {0}".format(exception))


@pytest.fixture
def not_raises():
    return _not_raises
