import numpy as np
import pytest

from qmatch import graph as graph_mod


@pytest.fixture
def path3():
    return graph_mod.generate("path", 3)


@pytest.fixture
def single_edge():
    return graph_mod.make_graph(2, [(0, 1, 1.0)])


@pytest.fixture
def triangle():
    return graph_mod.generate("cycle", 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)
