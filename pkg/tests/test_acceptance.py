"""End-to-end behaviour on the 9-vertex trap fixture and on seeded random graphs"""
import statistics
import warnings

import pytest

from mwcsolver.graph import WeightedGraph, mod200_weight, parse_instance
from mwcsolver.oracle import exact_mwc
from mwcsolver.solver import MwcSolver, SolverConfig, SolverMode, run
from tests.conftest import EXAMPLE1_OPTIMAL_CLIQUE, EXAMPLE1_OPTIMUM, EXAMPLE1_TRAP_WEIGHT, random_graph
from tests.test_solver import drive_checked, without_timing

DENSITIES = (0.2, 0.5, 0.8)


# ###############################################################
# Trap fixture
#

def test_trap_weights_match_oracle(example1):
    assert exact_mwc(example1).weight == EXAMPLE1_OPTIMUM
    assert example1.clique_weight([2, 3, 7, 9]) == EXAMPLE1_TRAP_WEIGHT
    assert example1.clique_weight([1, 3, 8, 9]) == EXAMPLE1_TRAP_WEIGHT


def test_configuration_checking_cycles_in_trap(example1):
    result = run(example1, SolverConfig(mode='scc_no_restart', max_steps=10_000, start_vertex=2,
                                        mark_store='sparse'))
    assert result.best_weight == EXAMPLE1_TRAP_WEIGHT


def test_repeated_unlocking_rule_escapes_trap(example1):
    result = run(example1, SolverConfig(mode='trsc_no_restart', max_steps=100, start_vertex=2,
                                        target_weight=EXAMPLE1_OPTIMUM, mark_store='sparse'))
    assert result.best_weight == EXAMPLE1_OPTIMUM
    assert result.best_clique == EXAMPLE1_OPTIMAL_CLIQUE
    assert result.restarts == 0


def test_scenario_restart_not_needed_on_trap(example1):
    result = run(example1, SolverConfig(mode='trsc', max_steps=100, start_vertex=2,
                                        target_weight=EXAMPLE1_OPTIMUM, mark_store='sparse'))
    assert result.best_weight == EXAMPLE1_OPTIMUM
    assert result.restarts == 0


def test_scenario_restart_finds_optimum_from_any_seed(example1):
    for seed in range(1, 21):
        result = run(example1, SolverConfig(mode='trsc', max_steps=20_000, seed=seed,
                                            target_weight=EXAMPLE1_OPTIMUM, mark_store='sparse'))
        assert result.best_weight == EXAMPLE1_OPTIMUM, f'seed {seed}'


# ###############################################################
# Incremental state against recomputation
#

def _consistency_sweep(graphs, moves, prime):
    for i in range(graphs):
        graph = random_graph(5 + (i * 7) % 26, DENSITIES[i % 3], 500 + i)
        solver = MwcSolver(graph, SolverConfig(mode='trsc', max_steps=moves, seed=i + 1, prime=prime,
                                               mark_store='sparse'))
        drive_checked(solver, moves)


@pytest.mark.parametrize('prime', [10 ** 9 + 7, 97])
def test_hash_and_candidates_consistent(prime):
    _consistency_sweep(graphs=12, moves=500, prime=prime)


@pytest.mark.slow
@pytest.mark.parametrize('prime', [10 ** 9 + 7, 97])
def test_hash_and_candidates_consistent_full(prime):
    _consistency_sweep(graphs=50, moves=10_000, prime=prime)


# ###############################################################
# Optimum against the exact oracle
#

def _oracle_agreement(graphs):
    runs = hits = 0
    for i in range(graphs):
        graph = random_graph(6 + i % 9, 0.5, 9000 + i)
        optimum = exact_mwc(graph).weight
        for seed in (1, 2, 3):
            result = run(graph, SolverConfig(mode='trsc', max_steps=100_000, seed=seed,
                                             target_weight=optimum, mark_store='sparse'))
            assert graph.is_clique(result.best_clique)
            assert graph.clique_weight(result.best_clique) == result.best_weight
            assert result.best_weight <= optimum
            runs += 1
            hits += result.best_weight == optimum
    return hits / runs


def test_oracle_agreement():
    assert _oracle_agreement(30) >= 0.99


@pytest.mark.slow
def test_oracle_agreement_full():
    assert _oracle_agreement(100) >= 0.99


# ###############################################################
# Weights, periods, trends
#

def test_mod200_weight_rule():
    graph = parse_instance('p edge 201 1\ne 1 201\n', weight_mode='mod200')
    assert (graph.weight(1), graph.weight(200), graph.weight(201)) == (2, 1, 2)


def test_lscc_restarts_every_4000_steps():
    graph = random_graph(40, 0.5, 77)
    result = run(graph, SolverConfig(mode='lscc', max_steps=12_500, mark_store='sparse'))
    assert result.restart_steps == (4000, 8000, 12000)


@pytest.mark.slow
def test_restart_period_trend():
    edges = [(u, v) for u, v, _ in random_graph(200, 0.9, 2024).edges()]
    graph = WeightedGraph(200, [mod200_weight(i) for i in range(1, 201)], edges)
    periods = {}
    for mode in (SolverMode.TRSC, SolverMode.TRSC_SOLUTION_HASH):
        periods[mode] = statistics.mean(
            run(graph, SolverConfig(mode=mode, max_steps=200_000, seed=seed, mark_store='sparse')).restart_period_avg
            for seed in range(1, 11))
    if periods[SolverMode.TRSC] < periods[SolverMode.TRSC_SOLUTION_HASH]:
        warnings.warn(f'trsc restarted more often than trsc_solution_hash: {periods}')


@pytest.mark.parametrize('mode', list(SolverMode))
def test_fixed_seed_runs_repeat(example1, mode):
    config = SolverConfig(mode=mode, max_steps=3000, seed=11, restart_period=200, mark_store='sparse')
    assert without_timing(run(example1, config)) == without_timing(run(example1, config))
