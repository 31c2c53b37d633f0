"""Current clique with incrementally maintained add / swap candidate sets

For a vertex x outside C the state keeps |N(x) & C| and the index sum of N(x) & C.  From
those two counters

    missing_count(x)       = |C| - |N(x) & C|
    missing_witness_sum(x) = sum of indices in C - sum of indices in N(x) & C

so the single non-adjacent member of a swap candidate (missing_count = 1) is read in O(1).
Every add/drop walks N(v) once to update the counters.

Candidate sets follow their definitions exactly:

    S_add  = {x not in C : missing_count(x) = 0}                if |C| > 0, else empty
    S_swap = {(u, x) : x not in C, missing_count(x) = 1, u = witness(x)}   if |C| > 1, else empty

add(v) narrows both sets against N(v) in O(|S_add| + |S_swap| + deg(v)).  drop(v) rescans
N(c1) | N(c2) for the two lowest-degree remaining members: any vertex missing at most one
member is adjacent to c1 or c2, so the rescan is complete.
"""

import heapq


class CliqueState(object):
    """Mutable clique state for one solver run.

    step is the global move counter; last_flip_step(v) records the step at which v last
    entered or left C.  The solver owns the step discipline and advances step itself.
    """

    def __init__(self, graph):
        n = graph.n
        self.graph = graph
        self.in_clique = [False] * (n + 1)
        self.members = set()
        self.clique_weight = 0
        self.clique_index_sum = 0
        self.adj_in_clique = [0] * (n + 1)
        self.adj_index_sum = [0] * (n + 1)
        self.last_flip_step = [0] * (n + 1)
        self.step = 1

        self._add = set()       # S_add
        self._swap = set()      # swap-in vertices x of S_swap

    @property
    def clique_size(self):
        return len(self.members)

    # ###############################################################
    # Per-vertex derived values
    #

    def missing_count(self, v):
        """Clique members (other than v) that are not adjacent to v"""
        own = 1 if self.in_clique[v] else 0
        return len(self.members) - self.adj_in_clique[v] - own

    def missing_witness_sum(self, v):
        """Sum of indices of the clique members counted by missing_count(v)"""
        own = v if self.in_clique[v] else 0
        return self.clique_index_sum - self.adj_index_sum[v] - own

    def witness(self, v):
        """Unique non-adjacent member of a swap-in vertex"""
        return self.clique_index_sum - self.adj_index_sum[v]

    def age(self, v):
        return self.step - self.last_flip_step[v]

    # ###############################################################
    # Candidate views
    #

    @property
    def add_set(self):
        """S_add; read-only view owned by the state"""
        return self._add

    @property
    def swap_set(self):
        """Swap-in vertices of S_swap; read-only view owned by the state"""
        return self._swap

    def swap_pairs(self):
        return {(self.witness(x), x) for x in self._swap}

    def delta_add(self, v):
        return self.graph.weights[v]

    def delta_drop(self, u):
        return -self.graph.weights[u]

    def delta_swap(self, u, v):
        weights = self.graph.weights
        return weights[v] - weights[u]

    # ###############################################################
    # Moves
    #

    def add(self, v):
        """Put v into C.  v must be in S_add, or C must be empty."""
        assert not self.in_clique[v], f'add({v}): already in clique'
        assert not self.members or v in self._add, f'add({v}): missing_count = {self.missing_count(v)}'

        graph = self.graph
        size_before = len(self.members)
        self._enter(v)

        nbrs = graph.neighbor_set(v)
        if size_before == 0:
            self._add = set(nbrs)
            self._swap = set()
        elif size_before == 1:
            (c,) = (u for u in self.members if u != v)
            old_add = self._add
            old_add.discard(v)
            self._add = old_add & nbrs
            swap = old_add - nbrs
            swap.update(x for x in nbrs if x != c and not graph.is_adjacent(x, c))
            self._swap = swap
        else:
            old_add = self._add
            old_add.discard(v)
            swap = self._swap & nbrs
            swap.update(x for x in old_add if x not in nbrs)
            self._add = old_add & nbrs
            self._swap = swap

    def drop(self, v):
        """Take v out of C"""
        assert self.in_clique[v], f'drop({v}): not in clique'
        self._leave(v)
        self._rebuild_candidates()

    def swap(self, u, v):
        """Replace u in C by v, one move; (u, v) must be in S_swap"""
        assert len(self.members) > 1 and v in self._swap and self.witness(v) == u, \
            f'swap({u}, {v}): pair not in S_swap'
        self.drop(u)
        self.add(v)

    def clear(self):
        """Empty C in one sweep; every swept vertex gets last_flip_step = step"""
        for v in list(self.members):
            self._leave(v)
        self._add = set()
        self._swap = set()

    # ###############################################################
    # Internals
    #

    def _enter(self, v):
        self.in_clique[v] = True
        self.members.add(v)
        self.clique_weight += self.graph.weights[v]
        self.clique_index_sum += v
        adj_in_clique = self.adj_in_clique
        adj_index_sum = self.adj_index_sum
        for x in self.graph.neighbors[v]:
            adj_in_clique[x] += 1
            adj_index_sum[x] += v
        self.last_flip_step[v] = self.step

    def _leave(self, v):
        self.in_clique[v] = False
        self.members.discard(v)
        self.clique_weight -= self.graph.weights[v]
        self.clique_index_sum -= v
        adj_in_clique = self.adj_in_clique
        adj_index_sum = self.adj_index_sum
        for x in self.graph.neighbors[v]:
            adj_in_clique[x] -= 1
            adj_index_sum[x] -= v
        self.last_flip_step[v] = self.step

    def _rebuild_candidates(self):
        graph = self.graph
        size = len(self.members)
        if size == 0:
            self._add = set()
            self._swap = set()
            return
        if size == 1:
            (c,) = self.members
            self._add = set(graph.neighbors[c])
            self._swap = set()
            return

        c1, c2 = heapq.nsmallest(2, self.members, key=lambda u: (graph.degree(u), u))
        in_clique = self.in_clique
        adj_in_clique = self.adj_in_clique
        add = set()
        swap = set()
        for x in graph.neighbor_set(c1) | graph.neighbor_set(c2):
            if in_clique[x]:
                continue
            missing = size - adj_in_clique[x]
            if missing == 0:
                add.add(x)
            elif missing == 1:
                swap.add(x)
        self._add = add
        self._swap = swap


def recompute_candidates_reference(state):
    """S_add and S_swap evaluated from their definitions, without the counters (test oracle)

    :return: (set of vertices, set of (u, v) pairs)
    """
    graph = state.graph
    clique = set(state.members)
    if not clique:
        return set(), set()

    outside = [x for x in graph.vertices() if x not in clique]
    add = {x for x in outside if all(graph.is_adjacent(x, u) for u in clique)}
    if len(clique) <= 1:
        return add, set()

    swap = set()
    for x in outside:
        for u in clique:
            if graph.is_adjacent(u, x):
                continue
            if all(graph.is_adjacent(x, w) for w in clique if w != u):
                swap.add((u, x))
    return add, swap
