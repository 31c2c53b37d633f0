"""Tabu mechanisms: forbidding repeated unlocking (FRU) and strong configuration checking (SCC)

FRU rules
    1. initially every vertex is free and has no unlocker;
    2. when v is added: v becomes free, and every locked neighbor n whose unlocker is not v
       becomes free with unlocker(n) = v (a vertex is never unlocked by the same neighbor
       twice in a row);
    3. when v is dropped or swapped out: v becomes locked (its unlocker is kept).

Every change of clique membership, free status or unlocking relation is mirrored into the
scenario hash passed to the FRU handlers, one delta per change, so the hash always encodes
the current <C, F, U>.

SCC rules
    1. initially confChange(v) = 1 for every v;
    2. when v is added, confChange(n) = 1 for all n in N(v);
    3. when v is dropped, confChange(v) = 0;
    4. when u is swapped out, confChange(u) = 0.
"""

NO_UNLOCKER = 0         # vertex ids are 1-based
NO_EDGE = -1


class FruState(object):
    """free / unlocker / cached unlocker edge id for every vertex"""

    def __init__(self, graph):
        n = graph.n
        self.graph = graph
        self.free = [True] * (n + 1)
        self.unlocker = [NO_UNLOCKER] * (n + 1)
        self.unlocker_edge = [NO_EDGE] * (n + 1)

    def is_free(self, v):
        return self.free[v]

    def free_set(self):
        return {v for v in self.graph.vertices() if self.free[v]}

    def unlocking_relation(self):
        """U as a set of (v, unlocker(v)) pairs"""
        return {(v, self.unlocker[v]) for v in self.graph.vertices() if self.unlocker[v] != NO_UNLOCKER}

    def on_add(self, v, scenario_hash):
        """Apply rule 2 for v entering C, with the matching hash deltas"""
        free = self.free
        unlocker = self.unlocker
        unlocker_edge = self.unlocker_edge
        graph = self.graph

        scenario_hash.toggle_clique(v, True)
        if not free[v]:
            free[v] = True
            scenario_hash.toggle_free(v, True)

        for n, eid in zip(graph.neighbors[v], graph.neighbor_edge_ids[v]):
            if free[n] or unlocker[n] == v:
                continue
            if unlocker[n] != NO_UNLOCKER:
                # first unlock of n has no tuple to delete
                scenario_hash.unlock_pair_delete(n, unlocker[n], unlocker_edge[n])
            free[n] = True
            unlocker[n] = v
            unlocker_edge[n] = eid
            scenario_hash.unlock_pair_insert(n, v, eid)
            scenario_hash.toggle_free(n, True)

    def on_remove(self, v, scenario_hash, lock=True):
        """Apply rule 3 for v leaving C (drop, swap-out or restart sweep).

        lock=False only mirrors the membership change; used when restart sweeps are
        configured to leave tabu state untouched.
        """
        if lock and self.free[v]:
            self.free[v] = False
            scenario_hash.toggle_free(v, False)
        scenario_hash.toggle_clique(v, False)


def fru_init(graph):
    """All vertices free, U empty"""
    return FruState(graph)


class SccState(object):
    """confChange flag for every vertex"""

    def __init__(self, graph):
        self.graph = graph
        self.conf_change = [True] * (graph.n + 1)

    def is_free(self, v):
        return self.conf_change[v]

    def on_add(self, v):
        conf_change = self.conf_change
        for n in self.graph.neighbors[v]:
            conf_change[n] = True

    def on_drop(self, v):
        self.conf_change[v] = False

    def on_swap_out(self, u):
        self.conf_change[u] = False
