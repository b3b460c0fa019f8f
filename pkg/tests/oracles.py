"""Slow, obviously-correct reference computations.

Everything here goes through networkx or plain loops, never through the
package's own metric code.
"""

import itertools
import math
import random

import networkx as nx

from moore_scope.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def floyd_warshall(g: Graph) -> list[list[float]]:
    n = g.n
    d = [[0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def cycles_up_to(g: Graph, max_len: int) -> set[frozenset]:
    """Each cycle as the frozenset of its edges."""
    out = set()
    for cyc in nx.simple_cycles(to_nx(g), length_bound=max_len):
        if len(cyc) < 3:
            continue
        out.add(frozenset(frozenset((cyc[i - 1], cyc[i])) for i in range(len(cyc))))
    return out


def girth(g: Graph) -> float:
    h = to_nx(g)
    for length in range(3, g.n + 1):
        if next(nx.simple_cycles(h, length_bound=length), None) is not None:
            return length
    return math.inf


def path_counts(g: Graph, x: int, max_len: int) -> dict[int, int]:
    h = to_nx(g)
    out = {}
    for y in range(g.n):
        if y == x:
            continue
        k = sum(1 for _ in nx.all_simple_paths(h, x, y, cutoff=max_len))
        if k:
            out[y] = k
    return out


def random_graph(rng: random.Random, n_max: int = 12) -> Graph:
    n = rng.randint(1, n_max)
    p = rng.choice([0.15, 0.25, 0.35, 0.5])
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)
