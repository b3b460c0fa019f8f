"""Exhaustive generation of (Δ, D, -ε)-graphs for small parameters.

Vertices are settled in index order.  Settling ``v`` fixes its whole
neighbourhood: a subset of the already-created, unsettled vertices above
``v`` plus a batch of brand-new vertices taking the next free indices.  Every
connected graph has such a labelling (breadth-first order from a vertex of
maximum degree), so the tree covers every isomorphism class.

Pruning, all sound:

* degree cap ``Δ`` (exact degree ``Δ`` when regularity is forced);
* girth: an edge ``v~w`` is only added when ``w`` lies at distance
  ``>= girth_min - 1`` from ``v``;
* eccentricity: from every created vertex, the vertices already within ``D``
  hops plus the most that free degree slots could still bring within ``D``
  hops must cover all ``n`` vertices;
* symmetry: unsettled vertices with identical neighbourhoods are
  interchangeable, so only prefixes of each twin class are chosen.

Remaining duplicates are removed by canonical form, and the search tree is
split at a fixed vertex index into subtrees that can run in worker processes.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import bounds
from .canon import canonical_form, canonical_graph6
from .graph import Graph, degree_stats, diameter, parse_graph6

log = logging.getLogger(__name__)

STAT_KEYS = (
    "nodes",
    "pruned_girth",
    "pruned_eccentricity",
    "pruned_connectivity",
    "pruned_order",
    "leaves",
    "leaves_rejected",
    "raw_solutions",
)


class InfeasibleConfig(ValueError):
    pass


class LimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    delta: int
    diam: int
    defect: int
    girth_min: int | None = None
    force_regular: bool | None = None
    limit_nodes: int | None = None
    limit_seconds: float | None = None
    split_depth: int | None = None

    def __post_init__(self):
        if self.delta < 2 or self.diam < 1 or self.defect < 0:
            raise InfeasibleConfig(f"bad parameters ({self.delta}, {self.diam}, {self.defect})")
        if bounds.moore_bound(self.delta, self.diam) - self.defect < 1:
            raise InfeasibleConfig(f"order M - {self.defect} is not positive")
        if self.girth_min is None:
            object.__setattr__(self, "girth_min", default_girth_min(self.delta, self.diam, self.defect))
        if self.force_regular is None:
            object.__setattr__(
                self, "force_regular", bounds.forces_regular(self.delta, self.diam, self.defect)
            )
        if self.girth_min < 3:
            raise InfeasibleConfig("girth_min must be at least 3")
        if self.force_regular and not bounds.forces_regular(self.delta, self.diam, self.defect):
            log.warning("regularity forced by caller outside its guaranteed range")

    @property
    def order(self) -> int:
        return bounds.moore_bound(self.delta, self.diam) - self.defect


def default_girth_min(delta: int, diam: int, defect: int) -> int:
    """2D-1 for defect <= 2 when Δ >= 3 and D >= 2, else 3."""
    if delta >= 3 and diam >= 2 and defect <= 2:
        return max(3, 2 * diam - 1)
    return 3


@dataclass
class SearchResult:
    config: SearchConfig
    solutions: list[str]
    stats: dict[str, int] = field(default_factory=dict)
    exhaustive: bool = True
    seconds: float = 0.0

    def graphs(self) -> list[Graph]:
        return [parse_graph6(s) for s in self.solutions]

    def summary(self) -> dict:
        cfg = self.config
        return {
            "delta": cfg.delta,
            "diam": cfg.diam,
            "defect": cfg.defect,
            "order": cfg.order,
            "girth_min": cfg.girth_min,
            "force_regular": cfg.force_regular,
            "solutions": len(self.solutions),
            "exhaustive": self.exhaustive,
            "stats": {k: self.stats.get(k, 0) for k in STAT_KEYS},
        }


# -- engine -----------------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Abort(Exception):
    pass


class _Engine:
    def __init__(self, cfg: SearchConfig, deadline: float | None):
        self.cfg = cfg
        self.n = cfg.order
        self.delta = cfg.delta
        self.diam = cfg.diam
        self.girth_radius = cfg.girth_min - 2
        self.regular = cfg.force_regular
        self.deadline = deadline
        self.stats = dict.fromkeys(STAT_KEYS, 0)
        self.found: dict[str, None] = {}
        # reach[j]: most vertices a fresh neighbour can add within j further hops
        self.reach = [sum((self.delta - 1) ** i for i in range(j + 1)) for j in range(self.diam)]
        self.masks = [0] * self.n
        self.deg = [0] * self.n
        self.next_new = 1 if self.n else 0
        self.split_at: int | None = None
        self.tasks: list[tuple] = []

    # state helpers

    def snapshot(self, v: int) -> tuple:
        return (v, tuple(self.masks), tuple(self.deg), self.next_new)

    def restore(self, state: tuple) -> int:
        v, masks, deg, next_new = state
        self.masks = list(masks)
        self.deg = list(deg)
        self.next_new = next_new
        return v

    def _add(self, u: int, w: int) -> None:
        self.masks[u] |= 1 << w
        self.masks[w] |= 1 << u
        self.deg[u] += 1
        self.deg[w] += 1

    def _remove(self, u: int, w: int) -> None:
        self.masks[u] &= ~(1 << w)
        self.masks[w] &= ~(1 << u)
        self.deg[u] -= 1
        self.deg[w] -= 1

    def _ball(self, v: int, radius: int) -> int:
        masks = self.masks
        seen = frontier = 1 << v
        for _ in range(radius):
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            if not frontier:
                break
            seen |= frontier
        return seen

    def _reach_ok(self, settled_upto: int) -> bool:
        """Eccentricity feasibility for every created vertex."""
        n, masks, deg, delta = self.n, self.masks, self.deg, self.delta
        reach, D = self.reach, self.diam
        unsettled = ~((1 << (settled_upto + 1)) - 1)
        for u in range(self.next_new):
            seen = frontier = 1 << u
            extra = 0
            for k in range(D):
                f = frontier & unsettled
                while f:
                    low = f & -f
                    extra += (delta - deg[low.bit_length() - 1]) * reach[D - k - 1]
                    f ^= low
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= masks[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~seen
                seen |= frontier
            if _popcount(seen) + extra < n:
                return False
        return True

    def _tick(self) -> None:
        st = self.stats
        st["nodes"] += 1
        lim = self.cfg.limit_nodes
        if lim is not None and st["nodes"] > lim:
            raise _Abort
        if self.deadline is not None and st["nodes"] & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Abort

    # search

    def settle(self, v: int) -> None:
        if self.split_at is not None and v == self.split_at:
            self.tasks.append(self.snapshot(v))
            return
        self._tick()
        n = self.n
        if v == n:
            self._leaf()
            return
        if v >= self.next_new:
            self.stats["pruned_connectivity"] += 1
            return
        delta, deg = self.delta, self.deg
        have = deg[v]
        if self.regular or v == 0:
            lo = hi = delta - have
        else:
            lo, hi = (1 if have == 0 else 0), delta - have
        if hi < 0 or (v == 0 and lo != delta):
            return
        cands = [w for w in range(v + 1, self.next_new) if deg[w] < delta]
        classes = [self.masks[w] for w in cands]
        self._choose(v, cands, classes, 0, [], set(), lo, hi)

    def _choose(self, v, cands, classes, i, chosen, skipped, lo, hi) -> None:
        taken = len(chosen)
        room = self.n - self.next_new
        if taken + (len(cands) - i) + room < lo:
            self.stats["pruned_order"] += 1
            return
        if i == len(cands) or taken == hi:
            for k in range(max(0, lo - taken), min(hi - taken, room) + 1):
                self._with_new(v, k)
            return
        w = cands[i]
        cls = classes[i]
        fresh = cls not in skipped
        if fresh:
            if self._ball(v, self.girth_radius) >> w & 1:
                self.stats["pruned_girth"] += 1
            else:
                self._add(v, w)
                chosen.append(w)
                self._choose(v, cands, classes, i + 1, chosen, skipped, lo, hi)
                chosen.pop()
                self._remove(v, w)
            skipped.add(cls)
        self._choose(v, cands, classes, i + 1, chosen, skipped, lo, hi)
        if fresh:
            skipped.discard(cls)

    def _with_new(self, v: int, k: int) -> None:
        start = self.next_new
        for w in range(start, start + k):
            self._add(v, w)
        self.next_new = start + k
        if v + 1 < self.n and self.next_new <= v + 1:
            self.stats["pruned_connectivity"] += 1
        elif not self._reach_ok(v):
            self.stats["pruned_eccentricity"] += 1
        else:
            self.settle(v + 1)
        self.next_new = start
        for w in range(start, start + k):
            self._remove(v, w)

    def _leaf(self) -> None:
        self.stats["leaves"] += 1
        g = Graph.from_masks(self.masks)
        lo, hi, _ = degree_stats(g)
        if hi != self.delta or (self.regular and lo != self.delta) or diameter(g) != self.diam:
            self.stats["leaves_rejected"] += 1
            return
        self.stats["raw_solutions"] += 1
        self.found.setdefault(canonical_graph6(g), None)


def _run_subtree(cfg: SearchConfig, state: tuple, deadline: float | None):
    eng = _Engine(cfg, deadline)
    v = eng.restore(state)
    exhaustive = True
    try:
        eng.settle(v)
    except _Abort:
        exhaustive = False
    return list(eng.found), eng.stats, exhaustive


def _default_split(n: int) -> int:
    return min(n, max(1, n // 3))


def enumerate_defect_graphs(
    cfg: SearchConfig,
    jobs: int = 1,
    verify: bool = True,
) -> SearchResult:
    """All (Δ, D, -ε)-graphs of the configuration, up to isomorphism."""
    if cfg.order <= 0:
        raise InfeasibleConfig("non-positive order")
    t0 = time.monotonic()
    deadline = t0 + cfg.limit_seconds if cfg.limit_seconds is not None else None
    root = _Engine(cfg, deadline)
    root.split_at = cfg.split_depth if cfg.split_depth is not None else _default_split(cfg.order)
    exhaustive = True
    try:
        root.settle(0)
    except _Abort:
        exhaustive = False
    stats = dict(root.stats)
    found: dict[str, None] = dict(root.found)

    if exhaustive:
        if jobs > 1 and len(root.tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(
                    pool.map(_run_subtree, itertools.repeat(cfg), root.tasks, itertools.repeat(deadline))
                )
        else:
            parts = []
            budget = cfg.limit_nodes
            for state in root.tasks:
                sub_cfg = cfg
                if budget is not None:
                    remaining = budget - stats["nodes"] - sum(p[1]["nodes"] for p in parts)
                    if remaining <= 0:
                        exhaustive = False
                        break
                    sub_cfg = _with_limit(cfg, remaining)
                part = _run_subtree(sub_cfg, state, deadline)
                parts.append(part)
                if not part[2]:
                    break
        for sols, st, ok in parts:
            for k in STAT_KEYS:
                stats[k] += st[k]
            for s in sols:
                found.setdefault(s, None)
            exhaustive = exhaustive and ok
        if len(parts) < len(root.tasks):
            exhaustive = False

    solutions = sorted(found)
    if verify:
        _check_solutions(cfg, solutions)
    return SearchResult(cfg, solutions, stats, exhaustive, time.monotonic() - t0)


def _with_limit(cfg: SearchConfig, limit: int) -> SearchConfig:
    return SearchConfig(
        cfg.delta, cfg.diam, cfg.defect, cfg.girth_min, cfg.force_regular, limit, cfg.limit_seconds, cfg.split_depth
    )


def is_degree_diameter_graph(g: Graph, delta: int, diam: int, defect: int) -> bool:
    """Order M - defect, maximum degree exactly delta, diameter exactly diam."""
    if g.n != bounds.moore_bound(delta, diam) - defect or g.n == 0:
        return False
    return degree_stats(g)[1] == delta and diameter(g) == diam


def _check_solutions(cfg: SearchConfig, solutions: list[str]) -> None:
    from .structure import verify_defect2

    for s in solutions:
        g = parse_graph6(s)
        if not is_degree_diameter_graph(g, cfg.delta, cfg.diam, cfg.defect):
            raise AssertionError(f"search emitted an invalid graph {s}")
        if cfg.defect == 2:
            rep = verify_defect2(g, cfg.delta, cfg.diam)
            if not rep.passed:
                raise AssertionError(f"solution {s} fails {rep.first_failure}")


# -- brute-force oracle -----------------------------------------------------

BRUTE_FORCE_MAX_ORDER = 10


def _labelled_graphs(n: int, d: int):
    """Labelled d-regular graphs with vertex 0 adjacent to exactly 1..d.

    Every d-regular graph has such a labelling, so canonical deduplication of
    the output yields every isomorphism class once.
    """
    if n < d + 1:
        return
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    deg = [0] * n
    deg[0] = d
    for i in range(1, d + 1):
        deg[i] = 1
    edges = [(0, i) for i in range(1, d + 1)]
    m = len(pairs)

    def rec(i: int):
        if i == m:
            if all(x == d for x in deg):
                yield list(edges)
            return
        u, w = pairs[i]
        if deg[u] < d and deg[w] < d:
            deg[u] += 1
            deg[w] += 1
            edges.append((u, w))
            yield from rec(i + 1)
            edges.pop()
            deg[u] -= 1
            deg[w] -= 1
        if w == n - 1 and deg[u] < d:
            # (u, n-1) is the last pair containing u
            return
        yield from rec(i + 1)

    yield from rec(0)


@lru_cache(maxsize=None)
def _connected_classes(n: int, d: int) -> tuple[str, ...]:
    """Canonical graph6 of every connected graph on n vertices with maximum degree <= d.

    Built level by level: a connected graph minus a non-cut vertex is still
    connected, so joining a new vertex to every admissible neighbour set of
    every smaller class reaches each class.
    """
    level = {canonical_graph6(Graph(1)): Graph(1)}
    for k in range(1, n):
        nxt: dict[str, Graph] = {}
        for g in level.values():
            free = [v for v in range(k) if len(g.adj[v]) < d]
            for size in range(1, d + 1):
                for nbrs in itertools.combinations(free, size):
                    masks = list(g.masks) + [0]
                    for v in nbrs:
                        masks[v] |= 1 << k
                        masks[k] |= 1 << v
                    h = Graph.from_masks(masks)
                    key = canonical_graph6(h)
                    if key not in nxt:
                        nxt[key] = h
        level = nxt
    return tuple(sorted(level))


def brute_force_filter(
    order: int,
    degree: int,
    predicate: Callable[[Graph], bool] = lambda g: True,
    regular: bool = True,
) -> list[Graph]:
    """Graphs on ``order`` vertices satisfying ``predicate``, one per isomorphism class.

    With ``regular`` the candidates are all ``degree``-regular graphs, from a
    naive labelled enumeration.  Otherwise they are the connected graphs of
    maximum degree at most ``degree``, grown one vertex at a time.  Neither
    path shares code with the main search engine.
    """
    if order > BRUTE_FORCE_MAX_ORDER:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_ORDER}")
    if order < 1:
        return []
    if not regular:
        found = (parse_graph6(s) for s in _connected_classes(order, degree))
        return [g for g in found if predicate(g)]
    if order * degree % 2:
        return []
    seen: dict[str, Graph] = {}
    for edges in _labelled_graphs(order, degree):
        g = Graph(order, edges)
        if not predicate(g):
            continue
        cf = canonical_form(g)
        if cf.graph6 not in seen:
            seen[cf.graph6] = parse_graph6(cf.graph6)
    return [seen[k] for k in sorted(seen)]
