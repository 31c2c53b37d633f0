"""Incremental modular hash of the local search scenario <C, F, U> and the mark table

    hash = [ sum_{v_i in C} 2^i
           + sum_{v_i in F} 2^(n+i)
           + sum_{(v_i, v_j) in U, i < j} 2^(2n+1+e(v_i, v_j))
           + sum_{(v_i, v_j) in U, i > j} 2^(2n+m+1+e(v_i, v_j)) ] mod p

The four exponent ranges [1, n], [n+1, 2n], [2n+1, 2n+m] and [2n+m+1, 2n+2m] are disjoint,
so every element of the scenario owns one power of two.  Powers are tabulated once
(2^i mod p = 2 * (2^(i-1) mod p) mod p) and each membership change is an O(1) modular
add or subtract.  Collisions are not resolved.
"""

import logging
from enum import Enum

import numpy as np

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 1_000_000_007


class PowTable(object):
    """pow2[i] = 2^i mod p for i in [0, size]; immutable and shareable between runs"""

    __slots__ = ('p', 'pow2')

    def __init__(self, size, p=DEFAULT_PRIME):
        pow2 = [1] * (size + 1)
        for i in range(1, size + 1):
            pow2[i] = (2 * pow2[i - 1]) % p
        self.p = p
        self.pow2 = tuple(pow2)

    def __getitem__(self, i):
        return self.pow2[i]

    def __len__(self):
        return len(self.pow2)


class ScenarioHash(object):
    """Hash of <C, F, U>, starting from C = {}, F = V, U = {}.

    Non-default p is accepted without a primality check.
    """

    def __init__(self, n, m, p=DEFAULT_PRIME, pow_table=None):
        if p <= 2:
            raise ConfigError(f'hash modulus must be a prime > 2, got {p}')
        if pow_table is None:
            pow_table = PowTable(2 * n + 2 * m, p)
        assert pow_table.p == p and len(pow_table) >= 2 * n + 2 * m + 1
        self.n = n
        self.m = m
        self.p = p
        self.pow = pow_table
        self.value = self.initial_value()

    def initial_value(self):
        pow2 = self.pow.pow2
        return sum(pow2[self.n + i] for i in range(1, self.n + 1)) % self.p

    # exponent layout

    def clique_exponent(self, i):
        return i

    def free_exponent(self, i):
        return self.n + i

    def pair_exponent(self, i, j, eid):
        """Exponent of tuple (v_i, v_j) in U, i.e. unlocker(v_i) = v_j"""
        if i < j:
            return 2 * self.n + 1 + eid
        return 2 * self.n + self.m + 1 + eid

    def _apply(self, exponent, entering):
        if entering:
            self.value = (self.value + self.pow.pow2[exponent]) % self.p
        else:
            self.value = (self.value + self.p - self.pow.pow2[exponent]) % self.p

    # deltas

    def toggle_clique(self, i, entering):
        self._apply(i, entering)

    def toggle_free(self, i, freeing):
        self._apply(self.n + i, freeing)

    def unlock_pair_insert(self, i, j, eid):
        assert i != j, f'vertex {i} cannot unlock itself'
        self._apply(self.pair_exponent(i, j, eid), True)

    def unlock_pair_delete(self, i, j, eid):
        assert i != j, f'vertex {i} cannot unlock itself'
        self._apply(self.pair_exponent(i, j, eid), False)


class SolutionHash(ScenarioHash):
    """Hash of C alone, (sum_{v_i in C} 2^i) mod p; tabu deltas leave the value unchanged"""

    def initial_value(self):
        return 0

    def toggle_free(self, i, freeing):
        pass

    def unlock_pair_insert(self, i, j, eid):
        assert i != j, f'vertex {i} cannot unlock itself'

    def unlock_pair_delete(self, i, j, eid):
        assert i != j, f'vertex {i} cannot unlock itself'


def recompute_full(graph, clique, free, unlocking, p=DEFAULT_PRIME):
    """Scenario hash evaluated from scratch (test oracle)

    :param clique:      iterable of vertices in C
    :param free:        iterable of vertices in F
    :param unlocking:   iterable of (v, unlocker(v)) pairs
    """
    n, m = graph.n, graph.m
    total = 0
    for i in clique:
        total += pow(2, i, p)
    for i in free:
        total += pow(2, n + i, p)
    for i, j in unlocking:
        eid = graph.edge_id(i, j)
        exponent = 2 * n + 1 + eid if i < j else 2 * n + m + 1 + eid
        total += pow(2, exponent, p)
    return total % p


def recompute_solution(clique, p=DEFAULT_PRIME):
    """Solution-only hash evaluated from scratch"""
    return sum(pow(2, i, p) for i in clique) % p


# ###############################################################
# Mark tables
#

class MarkStore(str, Enum):
    BITSET = 'bitset'
    SPARSE = 'sparse'


class BitsetMarkTable(object):
    """One bit per hash entry: ceil(p / 8) bytes, about 119 MiB at the default p"""

    def __init__(self, p=DEFAULT_PRIME):
        self.p = p
        self._bits = np.zeros((p >> 3) + 1, dtype=np.uint8)
        self.count = 0

    def mark(self, h):
        assert 0 <= h < self.p
        idx, bit = h >> 3, np.uint8(1 << (h & 7))
        if not self._bits[idx] & bit:
            self._bits[idx] |= bit
            self.count += 1

    def is_marked(self, h):
        return bool(self._bits[h >> 3] & np.uint8(1 << (h & 7)))


class SparseMarkTable(object):
    """Membership set of marked entries, for memory-constrained runs"""

    def __init__(self, p=DEFAULT_PRIME):
        self.p = p
        self._marked = set()

    @property
    def count(self):
        return len(self._marked)

    def mark(self, h):
        assert 0 <= h < self.p
        self._marked.add(h)

    def is_marked(self, h):
        return h in self._marked


def make_mark_table(store=MarkStore.BITSET, p=DEFAULT_PRIME):
    store = MarkStore(store)
    if store is MarkStore.BITSET:
        logger.debug(f'allocating bitset mark table, {((p >> 3) + 1) / 2 ** 20:.1f} MiB')
        return BitsetMarkTable(p)
    return SparseMarkTable(p)
