import numpy as np
import pytest

from encoderlab import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call pays numba compilation; keep that out of timed tests
    ops = np.array([[1, 0, -1], [3, 1, 0]], dtype=np.int32)
    angles = np.array([[0.3], [0.0]])
    _kernels.simulate_batch(ops, angles)
