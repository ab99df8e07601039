import pytest

from cancurve import linalg


@pytest.fixture(scope="session", autouse=True)
def _warm_accelerator():
    # compile the jitted elimination kernels once, before any timed test
    linalg.warm_accelerator()
