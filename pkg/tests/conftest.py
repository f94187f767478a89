import pytest

from permbound import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the 2^n kernels once so timed tests measure steady state
    _kernels.warm_up()
