"""Exact maximum weight clique for small graphs

exact_mwc is a branch-and-bound over vertices in weight-descending order with the bound
"current weight + weight of all remaining candidates".  A second, index-ordered search then
picks the lexicographically smallest optimal clique so the witness is deterministic.
naive_mwc enumerates every clique and is the reference for exact_mwc itself.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from .exceptions import InstanceTooLarge

logger = logging.getLogger(__name__)

EXACT_LIMIT = 40
NAIVE_LIMIT = 16


@dataclass(frozen=True)
class OracleResult:
    weight: int
    clique: Tuple[int, ...]


def _neighbor_masks(graph):
    masks = [0] * (graph.n + 1)
    for v in graph.vertices():
        mask = 0
        for u in graph.neighbors[v]:
            mask |= 1 << u
        masks[v] = mask
    return masks


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _optimal_weight(graph, masks):
    weights = graph.weights
    order = sorted(graph.vertices(), key=lambda v: (-weights[v], v))
    best = 0

    def expand(current, candidates):
        nonlocal best
        if current > best:
            best = current
        remaining = sum(weights[v] for v in candidates)
        for idx, v in enumerate(candidates):
            if current + remaining <= best:
                return
            row = masks[v]
            expand(current + weights[v], [u for u in candidates[idx + 1:] if row >> u & 1])
            remaining -= weights[v]

    expand(0, order)
    return best


def _smallest_witness(graph, masks, target):
    """Lexicographically smallest sorted clique of weight target"""
    weights = graph.weights

    def search(prefix, current, candidates):
        if current == target:
            return tuple(prefix)
        if current + sum(weights[v] for v in _bits(candidates)) < target:
            return None
        for v in _bits(candidates):
            candidates &= ~(1 << v)
            prefix.append(v)
            found = search(prefix, current + weights[v], candidates & masks[v])
            prefix.pop()
            if found is not None:
                return found
            if current + sum(weights[u] for u in _bits(candidates)) < target:
                return None
        return None

    full = sum(1 << v for v in graph.vertices())
    return search([], 0, full)


def exact_mwc(graph, limit=EXACT_LIMIT):
    """Globally optimal weight and the lexicographically smallest optimal clique.

    :raises InstanceTooLarge: when graph.n > limit
    """
    if graph.n > limit:
        raise InstanceTooLarge(f'exact oracle accepts at most {limit} vertices, got {graph.n}')
    masks = _neighbor_masks(graph)
    weight = _optimal_weight(graph, masks)
    clique = _smallest_witness(graph, masks, weight)
    logger.debug(f'exact optimum {weight}: {clique}')
    return OracleResult(weight=weight, clique=clique)


def naive_mwc(graph, limit=NAIVE_LIMIT):
    """Enumerate every clique; same witness rule as exact_mwc"""
    if graph.n > limit:
        raise InstanceTooLarge(f'naive enumeration accepts at most {limit} vertices, got {graph.n}')
    weights = graph.weights
    best = (0, ())

    def extend(clique, current, start):
        nonlocal best
        key = tuple(clique)
        if current > best[0] or (current == best[0] and key < best[1]):
            best = (current, key)
        for v in range(start, graph.n + 1):
            if all(graph.is_adjacent(v, u) for u in clique):
                clique.append(v)
                extend(clique, current + weights[v], v + 1)
                clique.pop()

    extend([], 0, 1)
    return OracleResult(weight=best[0], clique=best[1])
