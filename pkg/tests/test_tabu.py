import pytest

from mwcsolver.graph import WeightedGraph
from mwcsolver.scenario_hash import DEFAULT_PRIME, ScenarioHash, recompute_full
from mwcsolver.tabu import NO_UNLOCKER, FruState, SccState, fru_init


def scenario_value(graph, clique, fru, p=DEFAULT_PRIME):
    return recompute_full(graph, clique, fru.free_set(), fru.unlocking_relation(), p)


@pytest.fixture
def star():
    """v1 joined to v2, v3, v4"""
    return WeightedGraph(4, [1, 1, 1, 1], [(1, 2), (1, 3), (1, 4)])


def test_init_all_free_no_unlockers(k3):
    fru = fru_init(k3)
    assert fru.free_set() == {1, 2, 3}
    assert fru.unlocking_relation() == set()
    assert all(fru.is_free(v) for v in k3.vertices())

    single = fru_init(WeightedGraph(1, [4], []))
    assert single.free_set() == {1}


def test_remove_locks_and_keeps_unlocker(star):
    fru = FruState(star)
    h = ScenarioHash(star.n, star.m)
    fru.on_add(2, h)
    fru.on_remove(2, h)
    assert not fru.is_free(2)
    fru.on_add(1, h)            # unlocks 2 through edge (1, 2)
    assert fru.is_free(2) and fru.unlocker[2] == 1
    fru.on_add(2, h)
    fru.on_remove(2, h)
    assert not fru.is_free(2)
    assert fru.unlocker[2] == 1
    assert h.value == scenario_value(star, {1}, fru)


def test_first_unlock_inserts_without_delete(star):
    fru = FruState(star)
    h = ScenarioHash(star.n, star.m)
    fru.on_add(3, h)
    fru.on_remove(3, h)
    assert fru.unlocker[3] == NO_UNLOCKER

    fru.on_add(1, h)
    assert fru.is_free(3)
    assert fru.unlocker[3] == 1
    assert fru.unlocker_edge[3] == star.edge_id(1, 3)
    assert fru.unlocking_relation() == {(3, 1)}
    assert h.value == scenario_value(star, {1}, fru)


def test_same_neighbor_cannot_unlock_twice_in_a_row(star):
    fru = FruState(star)
    h = ScenarioHash(star.n, star.m)
    fru.on_add(3, h)
    fru.on_remove(3, h)
    fru.on_add(1, h)            # first unlock of 3, by 1
    fru.on_remove(1, h)
    fru.on_add(3, h)
    fru.on_remove(3, h)         # 3 locked again, unlocker still 1

    fru.on_add(1, h)
    assert not fru.is_free(3)
    assert fru.unlocker[3] == 1
    assert h.value == scenario_value(star, {1}, fru)


def test_unlock_by_new_neighbor_replaces_tuple(k3):
    fru = FruState(k3)
    h = ScenarioHash(k3.n, k3.m)
    fru.on_add(3, h)
    fru.on_remove(3, h)
    fru.on_add(1, h)            # unlocker(3) = 1
    fru.on_remove(1, h)
    fru.on_add(3, h)
    fru.on_remove(3, h)
    fru.on_add(2, h)            # 2 may unlock 3: unlocker(3) was 1
    assert fru.is_free(3)
    assert fru.unlocker[3] == 2
    assert (3, 1) not in fru.unlocking_relation()
    assert h.value == scenario_value(k3, {2}, fru)


def test_add_with_all_neighbors_free_only_toggles_membership(k3):
    fru = FruState(k3)
    h = ScenarioHash(k3.n, k3.m)
    before = h.value
    fru.on_add(1, h)
    assert h.value == (before + 2) % h.p
    assert fru.unlocking_relation() == set()


def test_members_are_free_after_moves(example1):
    fru = FruState(example1)
    h = ScenarioHash(example1.n, example1.m)
    clique = set()
    for v in (9, 8, 3):
        fru.on_add(v, h)
        clique.add(v)
    fru.on_remove(9, h)
    clique.discard(9)
    fru.on_add(9, h)
    clique.add(9)
    assert all(fru.is_free(v) for v in clique)
    for v, u in fru.unlocking_relation():
        assert example1.is_adjacent(v, u)
    assert h.value == scenario_value(example1, clique, fru)


def test_remove_without_lock_only_mirrors_membership(k3):
    fru = FruState(k3)
    h = ScenarioHash(k3.n, k3.m)
    fru.on_add(2, h)
    fru.on_remove(2, h, lock=False)
    assert fru.is_free(2)
    assert h.value == h.initial_value()


def test_scc_rules(p3):
    scc = SccState(p3)
    assert all(scc.is_free(v) for v in p3.vertices())
    scc.on_drop(1)
    scc.on_swap_out(3)
    assert not scc.is_free(1) and not scc.is_free(3)
    scc.on_add(2)
    assert scc.is_free(1) and scc.is_free(3)
    scc.on_swap_out(2)
    scc.on_add(1)
    assert scc.is_free(2)
