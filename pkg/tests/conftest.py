import numpy as np
import pytest

from zenoqaoa.cnf import CnfFormula


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def phi():
    """(~x0 | ~x1) & (x0 | x1): satisfied exactly when x0 != x1."""
    return CnfFormula.from_dimacs_lists(2, [[-1, -2], [1, 2]])
