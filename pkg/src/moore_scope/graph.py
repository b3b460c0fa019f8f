"""Simple undirected graphs, graph6 I/O and hop metrics.

Vertices are the integers ``0..n-1``.  Every graph keeps two views of its
adjacency: sorted neighbour tuples for stable iteration and integer bitmasks
for constant-time adjacency tests.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INF = math.inf
"""Distance/girth sentinel for 'unreachable' or 'no cycle'."""

MAX_GRAPH6_ORDER = 62


class Graph6Error(ValueError):
    """Malformed graph6 input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedSizeError(ValueError):
    pass


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "adj", "masks", "edge_count", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._init_from_masks(n, masks)

    def _init_from_masks(self, n: int, masks: Sequence[int]) -> None:
        self.n = n
        self.masks = tuple(masks)
        self.adj = tuple(tuple(_bits(m)) for m in self.masks)
        self.edge_count = sum(len(a) for a in self.adj) // 2
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        for v, m in enumerate(masks):
            if m >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in _bits(m):
                if w >= n or not masks[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
        g = cls.__new__(cls)
        g._init_from_masks(n, masks)
        return g

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        masks = []
        for nbrs in adjacency:
            m = 0
            for w in nbrs:
                m |= 1 << w
            masks.append(m)
        return cls.from_masks(masks)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        masks = [0] * self.n
        for v in range(self.n):
            m = 0
            for w in self.adj[v]:
                m |= 1 << perm[w]
            masks[perm[v]] = m
        g = Graph.__new__(Graph)
        g._init_from_masks(self.n, masks)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.masks))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


@dataclass(frozen=True)
class PathSeq:
    """Ordered vertex sequence of a simple path; the empty tuple marks 'no path'."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            return False
        return all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))

    def reversed(self) -> "PathSeq":
        return PathSeq(self.vertices[::-1])


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- graph6 -----------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    line = text.strip()
    start = 0
    if line.startswith(">>graph6<<"):
        start = len(">>graph6<<")
    if start >= len(line):
        raise Graph6Error("empty graph6 string", start)
    for i in range(start, len(line)):
        if not 63 <= ord(line[i]) <= 126:
            raise Graph6Error(f"non-printable or out-of-range byte {line[i]!r}", i)
    n = ord(line[start]) - 63
    if n == 63:
        raise Graph6Error("multi-byte size header (n > 62) is not supported", start)
    body = line[start + 1:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise Graph6Error(
            f"length mismatch: n={n} needs {expected} data bytes, got {len(body)}", start
        )
    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    if nbits % 6:
        last = ord(body[-1]) - 63
        pad = 6 - nbits % 6
        if last & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", start + len(body))
    g = Graph.__new__(Graph)
    g._init_from_masks(n, masks)
    return g


def write_graph6(g: Graph) -> str:
    n = g.n
    if n > MAX_GRAPH6_ORDER:
        raise UnsupportedSizeError(f"graph6 writer supports n <= {MAX_GRAPH6_ORDER}, got {n}")
    out = [chr(n + 63)]
    acc = 0
    nacc = 0
    masks = g.masks
    for j in range(1, n):
        mj = masks[j]
        for i in range(j):
            acc = (acc << 1) | (mj >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for every non-blank, non-comment line."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def read_graph6_file(path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return [parse_graph6(line) for _, line in iter_graph6_lines(fh)]


# -- metrics ----------------------------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[float]:
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(bfs_distances(g, v)) for v in range(g.n))


def eccentricity(g: Graph, v: int) -> float:
    return max(bfs_distances(g, v))


def diameter(g: Graph) -> float:
    if g.n < 1:
        raise ValueError("diameter of the empty graph is undefined")
    return max(eccentricity(g, v) for v in range(g.n))


def girth(g: Graph) -> float:
    """Length of a shortest cycle, by a truncated BFS from every vertex."""
    best = INF
    adj = g.adj
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            # a cycle found later from this root cannot beat the current one
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, du + dist[w] + 1)
    return best


def degree_stats(g: Graph) -> tuple[int, int, bool]:
    if g.n == 0:
        return (0, 0, True)
    degs = [len(a) for a in g.adj]
    lo, hi = min(degs), max(degs)
    return (lo, hi, lo == hi)


def is_connected(g: Graph) -> bool:
    return g.n == 0 or INF not in bfs_distances(g, 0)


def format_metric(value: float) -> int | str:
    """JSON-friendly form of a hop count: an int, or ``"inf"``."""
    return "inf" if value == INF else int(value)
