import random

import pytest

from hbarperfect.graph import Graph


def random_graph(rng, n, p=0.5):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(1234)
