import functools

import numpy as np
import pytest

from liesphere.scenarios import sample_configuration


@functools.lru_cache(maxsize=None)
def generic_config(n, seed):
    return sample_configuration(n, seed)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def form_by_hand(x, y):
    """(X|Y) written out term by term, independent of the library."""
    n = len(x) - 3
    total = -x[0] * y[0]
    for i in range(1, n + 1):
        total += x[i] * y[i]
    return total + x[n + 1] * y[n + 2] + x[n + 2] * y[n + 1]
