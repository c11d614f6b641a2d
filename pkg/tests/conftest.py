"""Shared builders for the test suite."""

import numpy as np
import pytest

from strichcert.deficit import DiscreteDeficitModel


def make_random_model(rng, n=5, m=8, p=3.5):
    """Random well-conditioned deficit model with a nonzero reference element."""
    metric = rng.uniform(0.5, 2.0, size=n)
    w = rng.uniform(0.2, 1.5, size=m)
    S = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    f_star = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return DiscreteDeficitModel(metric=metric, S=S, w=w, p=p, f_star=f_star)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
