from __future__ import annotations

import numpy as np
import pytest

from proxyrd.model import DiscreteModel

# Reference parameterization used across the suite: balanced cause,
# symmetric channels with accuracies 0.7 (A) and 0.8 (D).
M1 = DiscreteModel(0.5, 0.7, 0.3, 0.8, 0.2, 1.0, 0.0, 0.5, 0.2)
# Same probabilities with ordered, nonnegative mean gaps (1.0 >= 0.3 >= 0).
M1_POS = DiscreteModel(0.5, 0.7, 0.3, 0.8, 0.2, 1.0, 0.0, 0.2, 0.5)


@pytest.fixture
def m1() -> DiscreteModel:
    return M1


@pytest.fixture
def m1_pos() -> DiscreteModel:
    return M1_POS


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(20260822))
