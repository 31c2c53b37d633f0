"""Vertex-weighted undirected graphs, DIMACS instance parsing and complementation

Vertices are 1-based everywhere in this module's interface (v_1 ... v_n).  Per-vertex
lists carry an unused slot 0 so the vertex index can be used directly.

Edge ids form a bijection E <-> {0, ..., m-1}.  Parsed graphs number their edges by
first appearance in the file, complemented graphs in lexicographic (i, j) order, i < j.
Both adjacency entries of an edge carry the same id.
"""

import bz2
import gzip
import logging
from enum import Enum
from itertools import combinations

from .exceptions import InstanceParseError

logger = logging.getLogger(__name__)

WEIGHT_LIMIT = 2 ** 63      # sum of all weights must stay below this
MOD200_PERIOD = 200


class WeightMode(str, Enum):
    """Where vertex weights come from"""
    MOD200 = 'mod200'       # w(v_i) = (i mod 200) + 1
    FILE = 'file'           # `v i w` lines, every vertex required
    AUTO = 'auto'           # FILE if any `v` line exists, otherwise MOD200


def mod200_weight(index):
    """Benchmark weight rule for vertex v_index"""
    return (index % MOD200_PERIOD) + 1


class WeightedGraph(object):
    """Immutable vertex-weighted undirected graph with a stable edge-id bijection.

    :param n:          vertex count
    :param weights:    sequence of n nonnegative integers, weights[i-1] is w(v_i)
    :param edges:      sequence of (u, v) pairs in edge-id order; validated, no self-loops
                       and no duplicates allowed at this level
    """

    __slots__ = ('n', 'm', 'weights', 'neighbors', 'neighbor_edge_ids',
                 '_neighbor_sets', '_edge_index', '_edges', 'diagnostics')

    def __init__(self, n, weights, edges, diagnostics=None):
        if n < 0:
            raise InstanceParseError(f'vertex count must be nonnegative, got {n}')
        if len(weights) != n:
            raise InstanceParseError(f'expected {n} weights, got {len(weights)}')

        total = 0
        for idx, w in enumerate(weights, start=1):
            if w < 0:
                raise InstanceParseError(f'negative weight {w} on vertex {idx}')
            total += w
        if total >= WEIGHT_LIMIT:
            raise InstanceParseError(f'sum of weights {total} does not fit a signed 64-bit integer')

        adjacency = [[] for _ in range(n + 1)]
        adjacency_ids = [[] for _ in range(n + 1)]
        edge_index = {}
        edge_list = []
        for eid, (u, v) in enumerate(edges):
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceParseError(f'edge ({u}, {v}) has an endpoint outside [1, {n}]')
            if u == v:
                raise InstanceParseError(f'self-loop on vertex {u}')
            key = (u, v) if u < v else (v, u)
            if key in edge_index:
                raise InstanceParseError(f'duplicate edge {key}')
            edge_index[key] = eid
            edge_list.append(key)
            adjacency[u].append(v)
            adjacency_ids[u].append(eid)
            adjacency[v].append(u)
            adjacency_ids[v].append(eid)

        self.n = n
        self.m = len(edge_list)
        self.weights = (0,) + tuple(int(w) for w in weights)
        self.neighbors = tuple(tuple(a) for a in adjacency)
        self.neighbor_edge_ids = tuple(tuple(a) for a in adjacency_ids)
        self._neighbor_sets = tuple(frozenset(a) for a in adjacency)
        self._edge_index = edge_index
        self._edges = tuple(edge_list)
        self.diagnostics = dict(diagnostics or {})

    def __repr__(self):
        return f'{self.__class__.__name__}(n={self.n}, m={self.m})'

    # ###############################################################
    # Queries
    #

    def vertices(self):
        return range(1, self.n + 1)

    def weight(self, v):
        return self.weights[v]

    def degree(self, v):
        return len(self.neighbors[v])

    def neighbor_set(self, v):
        return self._neighbor_sets[v]

    def adjacency(self, v):
        """(neighbor, edge id) entries of v"""
        return zip(self.neighbors[v], self.neighbor_edge_ids[v])

    def is_adjacent(self, u, v):
        return v in self._neighbor_sets[u]

    def edge_id(self, u, v):
        """Id of edge {u, v}; symmetric.  The pair must be adjacent."""
        assert self.is_adjacent(u, v), f'edge_id of non-adjacent pair ({u}, {v})'
        return self._edge_index[(u, v) if u < v else (v, u)]

    def edges(self):
        """(u, v, edge id) triples in edge-id order, u < v"""
        for eid, (u, v) in enumerate(self._edges):
            yield u, v, eid

    def edge_set(self):
        return frozenset(self._edges)

    def clique_weight(self, vertices):
        return sum(self.weights[v] for v in vertices)

    def first_non_adjacent_pair(self, vertices):
        """First pair (sorted order) of the set that is not an edge, or None for a clique"""
        ordered = sorted(set(vertices))
        for u, v in combinations(ordered, 2):
            if not self.is_adjacent(u, v):
                return u, v
        return None

    def is_clique(self, vertices):
        ordered = list(vertices)
        if any(not 1 <= v <= self.n for v in ordered):
            return False
        return self.first_non_adjacent_pair(ordered) is None


# ###############################################################
# DIMACS ascii parsing
#

def _parse_int(token, line_no, what):
    try:
        return int(token)
    except ValueError:
        raise InstanceParseError(f'line {line_no}: {what} "{token}" is not an integer') from None


def parse_instance(text, weight_mode=WeightMode.AUTO):
    """Parse a DIMACS ascii instance into a WeightedGraph.

    Lines: `c ...` comments, one `p FORMAT n m` header, `e u v` edges and optional
    `v i w` weight lines.  Duplicate edges and self-loops are dropped and counted in
    graph.diagnostics.

    :param text:        instance contents as a string or an iterable of lines
    :param weight_mode: WeightMode (or its string value)
    :return:            validated WeightedGraph
    :raises InstanceParseError: malformed header, endpoint out of range, weight line for an
                        unknown vertex, missing weights in file mode
    """
    weight_mode = WeightMode(weight_mode)
    lines = text.splitlines() if isinstance(text, str) else text

    n = None
    declared_m = None
    edges = []
    seen = set()
    file_weights = {}
    duplicates = 0
    self_loops = 0

    for line_no, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens:
            continue
        kind = tokens[0].lower()

        if kind in ('c', '%'):
            continue

        if kind == 'p':
            if n is not None:
                raise InstanceParseError(f'line {line_no}: second header line')
            if len(tokens) != 4:
                raise InstanceParseError(f'line {line_no}: malformed header "{raw.strip()}"')
            n = _parse_int(tokens[2], line_no, 'vertex count')
            declared_m = _parse_int(tokens[3], line_no, 'edge count')
            if n < 0 or declared_m < 0:
                raise InstanceParseError(f'line {line_no}: malformed header "{raw.strip()}"')
            continue

        if n is None:
            raise InstanceParseError(f'line {line_no}: "{kind}" line before the header')

        if kind == 'e':
            if len(tokens) < 3:
                raise InstanceParseError(f'line {line_no}: malformed edge line "{raw.strip()}"')
            u = _parse_int(tokens[1], line_no, 'endpoint')
            v = _parse_int(tokens[2], line_no, 'endpoint')
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceParseError(f'line {line_no}: endpoint out of range in ({u}, {v}), n={n}')
            if u == v:
                self_loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            edges.append((u, v))

        elif kind in ('v', 'n'):
            if len(tokens) < 3:
                raise InstanceParseError(f'line {line_no}: malformed weight line "{raw.strip()}"')
            i = _parse_int(tokens[1], line_no, 'vertex')
            w = _parse_int(tokens[2], line_no, 'weight')
            if not 1 <= i <= n:
                raise InstanceParseError(f'line {line_no}: weight line for unknown vertex {i}')
            if w < 0:
                raise InstanceParseError(f'line {line_no}: negative weight {w} for vertex {i}')
            file_weights[i] = w

        else:
            raise InstanceParseError(f'line {line_no}: unknown line type "{tokens[0]}"')

    if n is None:
        raise InstanceParseError('missing "p" header line')

    if weight_mode is WeightMode.AUTO:
        weight_mode = WeightMode.FILE if file_weights else WeightMode.MOD200

    if weight_mode is WeightMode.FILE:
        missing = [i for i in range(1, n + 1) if i not in file_weights]
        if missing:
            raise InstanceParseError(f'{len(missing)} vertices have no weight line (first: {missing[0]})')
        weights = [file_weights[i] for i in range(1, n + 1)]
    else:
        weights = [mod200_weight(i) for i in range(1, n + 1)]

    if duplicates or self_loops:
        logger.warning(f'dropped {duplicates} duplicate edges and {self_loops} self-loops')
    if declared_m is not None and declared_m != len(edges) + duplicates + self_loops:
        logger.info(f'header declares {declared_m} edges, file has {len(edges)} distinct edges')

    diagnostics = {'duplicate_edges': duplicates,
                   'self_loops': self_loops,
                   'weight_mode': weight_mode.value,
                   }
    return WeightedGraph(n, weights, edges, diagnostics=diagnostics)


def _open_text(path):
    path = str(path)
    if path.lower().endswith('.bz2'):
        return bz2.open(path, mode='rt', encoding='ascii', errors='replace')
    if path.lower().endswith('.gz'):
        return gzip.open(path, mode='rt', encoding='ascii', errors='replace')
    return open(path, mode='r', encoding='ascii', errors='replace')


def load_instance(path, weight_mode=WeightMode.AUTO, complement_graph=False):
    """Read an instance file (plain, .gz or .bz2) and optionally complement it.

    :raises InstanceParseError: on malformed content
    :raises OSError:            when the file cannot be read
    """
    with _open_text(path) as handle:
        graph = parse_instance(handle, weight_mode=weight_mode)
    logger.info(f'loaded {path}: n={graph.n} m={graph.m} weights={graph.diagnostics["weight_mode"]}')
    if complement_graph:
        graph = complement(graph)
        logger.info(f'complemented {path}: m={graph.m}')
    return graph


def complement(graph):
    """Complement graph: same vertices and weights, every non-edge becomes an edge.

    Edge ids are reassigned in lexicographic (i, j) order with i < j.
    """
    edges = []
    for i in range(1, graph.n + 1):
        row = graph.neighbor_set(i)
        for j in range(i + 1, graph.n + 1):
            if j not in row:
                edges.append((i, j))
    diagnostics = dict(graph.diagnostics)
    diagnostics['complemented'] = True
    return WeightedGraph(graph.n, graph.weights[1:], edges, diagnostics=diagnostics)


def write_instance(graph, stream, comment=None):
    """Write graph as DIMACS with explicit `v i w` weight lines, edges in id order"""
    if comment:
        for line in comment.splitlines():
            stream.write(f'c {line}\n')
    stream.write(f'p edge {graph.n} {graph.m}\n')
    for v in graph.vertices():
        stream.write(f'v {v} {graph.weight(v)}\n')
    for u, v, _ in graph.edges():
        stream.write(f'e {u} {v}\n')
