import os
import random

import pytest

from mwcsolver.graph import WeightedGraph, load_instance, parse_instance

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), 'fixtures')

EXAMPLE1_OPTIMUM = 193
EXAMPLE1_OPTIMAL_CLIQUE = (3, 5, 6, 8)
EXAMPLE1_TRAP_WEIGHT = 183


def fixture_path(name):
    return os.path.join(FIXTURES_DIR, name)


def random_graph(n, density, seed, low=1, high=200):
    """Erdos-Renyi graph, weights uniform in [low, high]"""
    rng = random.Random(seed)
    weights = [rng.randint(low, high) for _ in range(n)]
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < density]
    return WeightedGraph(n, weights, edges)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def example1():
    return load_instance(fixture_path('example1.clq'))


@pytest.fixture
def k3():
    """Triangle, mod200 weights (2, 3, 4), edge ids in file order"""
    return parse_instance('p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n', weight_mode='mod200')


@pytest.fixture
def p3():
    """Path v1 - v2 - v3, mod200 weights (2, 3, 4)"""
    return parse_instance('p edge 3 2\ne 1 2\ne 2 3\n', weight_mode='mod200')


@pytest.fixture
def edgeless():
    return WeightedGraph(3, [5, 1, 7], [])


@pytest.fixture
def make_random_graph():
    return random_graph
