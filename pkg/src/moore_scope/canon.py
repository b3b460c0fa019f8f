"""Canonical labelling by individualisation-refinement.

The initial colouring combines degree with the BFS distance profile of each
vertex.  Colourings are refined to equitable partitions; the search tree
individualises vertices of the first non-singleton cell and keeps the leaf
with the least relabelled adjacency code.  Subtrees are skipped when a known
automorphism fixing the current path maps one branch vertex onto another.
Twin transpositions (vertices with equal open or closed neighbourhoods) seed
the automorphism set, which keeps complete and edgeless pieces cheap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import MAX_GRAPH6_ORDER, Graph, UnsupportedSizeError, parse_graph6, write_graph6


@dataclass(frozen=True)
class CanonicalForm:
    graph6: str
    labelling: tuple[int, ...]
    """``labelling[v]`` is the canonical label of input vertex ``v``."""


def _distance_profile(masks: tuple[int, ...], v: int) -> tuple[int, ...]:
    seen = 1 << v
    frontier = seen
    prof = []
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if nxt:
            prof.append(bin(nxt).count("1"))
        seen |= nxt
        frontier = nxt
    return tuple(prof)


def _split(cells: list[list[int]], key) -> list[list[int]]:
    out = []
    for cell in cells:
        if len(cell) == 1:
            out.append(cell)
            continue
        groups: dict = {}
        for v in cell:
            groups.setdefault(key(v), []).append(v)
        for k in sorted(groups):
            out.append(groups[k])
    return out


def _refine(masks: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; cell order depends only on invariants."""
    while True:
        cell_masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            cell_masks.append(m)

        def sig(v, _cm=cell_masks):
            mv = masks[v]
            return tuple(bin(mv & cm).count("1") for cm in _cm)

        new = _split(cells, sig)
        if len(new) == len(cells):
            return new
        cells = new


def _individualise(cells: list[list[int]], idx: int, v: int) -> list[list[int]]:
    cell = cells[idx]
    rest = [w for w in cell if w != v]
    return cells[:idx] + [[v], rest] + cells[idx + 1:]


def _leaf_code(masks: tuple[int, ...], order: list[int]) -> tuple[tuple[int, ...], list[int]]:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        m = masks[v]
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        rows.append(r)
    return tuple(rows), pos


def _twin_generators(masks: tuple[int, ...]) -> list[list[int]]:
    n = len(masks)
    gens = []
    by_open: dict[int, int] = {}
    by_closed: dict[int, int] = {}
    for v in range(n):
        for table, key in ((by_open, masks[v]), (by_closed, masks[v] | 1 << v)):
            if key in table:
                u = table[key]
                perm = list(range(n))
                perm[u], perm[v] = v, u
                gens.append(perm)
            table[key] = v
    return gens


def _orbit_roots(cell: list[int], gens: list[list[int]]) -> dict[int, int]:
    parent = {v: v for v in cell}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in gens:
        for v in cell:
            w = perm[v]
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return {v: find(v) for v in cell}


class _Search:
    def __init__(self, masks: tuple[int, ...]):
        self.masks = masks
        self.best_code = None
        self.best_pos = None
        self.gens = _twin_generators(masks)

    def run(self, cells: list[list[int]], path: list[int]) -> None:
        cells = _refine(self.masks, cells)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            self._leaf([c[0] for c in cells])
            return
        cell = cells[idx]
        done: list[int] = []
        for v in cell:
            if done:
                fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                roots = _orbit_roots(cell, fixing)
                if roots[v] in {roots[u] for u in done}:
                    continue
            done.append(v)
            self.run(_individualise(cells, idx, v), path + [v])

    def _leaf(self, order: list[int]) -> None:
        code, pos = _leaf_code(self.masks, order)
        if self.best_code is None or code < self.best_code:
            self.best_code, self.best_pos = code, pos
        elif code == self.best_code:
            # pos^-1 of this leaf followed by best_pos is an automorphism
            inv = [0] * len(order)
            for v, p in enumerate(pos):
                inv[p] = v
            auto = [0] * len(order)
            for v in range(len(order)):
                auto[v] = inv[self.best_pos[v]]
            if any(auto[v] != v for v in range(len(order))):
                self.gens.append(auto)


def canonical_form(g: Graph) -> CanonicalForm:
    if g.n > MAX_GRAPH6_ORDER:
        raise UnsupportedSizeError(f"canonical form supports n <= {MAX_GRAPH6_ORDER}")
    if g.n == 0:
        return CanonicalForm(write_graph6(g), ())
    masks = g.masks
    inv = {v: (len(g.adj[v]), _distance_profile(masks, v)) for v in range(g.n)}
    cells = _split([list(range(g.n))], inv.__getitem__)
    search = _Search(masks)
    search.run(cells, [])
    labelling = tuple(search.best_pos)
    return CanonicalForm(write_graph6(g.relabel(labelling)), labelling)


def canonical_graph6(g: Graph) -> str:
    return canonical_form(g).graph6


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return False
    return canonical_graph6(g) == canonical_graph6(h)


def canonicalise_line(line: str) -> str:
    return canonical_graph6(parse_graph6(line))
