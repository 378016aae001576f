import numpy as np
import pytest

from depmeas import Sample


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


def random_sample(rng, n, p=1, q=1, dependent=False):
    x = rng.normal(size=(n, p))
    if dependent:
        y = x[:, :q] ** 2 + 0.2 * rng.normal(size=(n, q)) if q <= p else None
        if y is None:
            y = rng.normal(size=(n, q)) + x[:, :1]
    else:
        y = rng.normal(size=(n, q))
    return Sample(x, y)


def write_csv(path, text):
    path.write_text(text)
    return str(path)
