"""Short cycles, repeats, vertex types and repeat cycles of defect-2 graphs.

Terminology, relative to a diameter ``D``:

* a *short cycle* has length at most ``2D``;
* ``x'`` is a *repeat* of ``x`` with multiplicity ``m`` when exactly ``m + 1``
  distinct paths of length at most ``D`` join them;
* on a ``2D``-cycle ``C`` the repeat of ``x`` is the vertex opposite ``x``;
* a ``Θ_D`` is three internally disjoint ``D``-paths with common ends.

Repeat counting uses all simple paths of length at most ``D``, not only
shortest ones.  Multiplicity-2 repeats (the far branch vertex of a ``Θ_D``)
need a length-``D`` path counted next to shorter ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from . import bounds
from .graph import INF, Graph, PathSeq, bfs_distances, degree_stats, diameter, format_metric, girth


class ClassificationError(ValueError):
    """The short cycles through a vertex match none of the three types."""


class PreconditionError(ValueError):
    pass


class AssemblyError(ValueError):
    """A forced edge or vertex of the repeat cycle is missing."""


class HypothesisError(ValueError):
    pass


class NoWitness(LookupError):
    pass


# -- cycles -----------------------------------------------------------------


@dataclass(frozen=True)
class ShortCycle:
    """Cycle stored from its least vertex, towards the smaller of that vertex's two cycle neighbours."""

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, seq) -> "ShortCycle":
        seq = tuple(seq)
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError(f"not a cycle sequence: {seq}")
        i = seq.index(min(seq))
        rot = seq[i:] + seq[:i]
        if rot[1] > rot[-1]:
            rot = (rot[0],) + rot[:0:-1]
        return cls(rot)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> frozenset[frozenset[int]]:
        vs = self.vertices
        return frozenset(frozenset((vs[i - 1], vs[i])) for i in range(len(vs)))

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def position(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise ValueError(f"vertex {v} is not on cycle {self.vertices}") from None

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        return all(g.has_edge(vs[i - 1], vs[i]) for i in range(len(vs)))


def _cycles_from(g: Graph, start: int, max_len: int, allowed: int) -> set[tuple[int, ...]]:
    """Closed paths through ``start`` of length <= max_len inside ``allowed``."""
    dist = bfs_distances(g, start)
    found = set()
    path = [start]

    def extend(u: int, on_path: int) -> None:
        used = len(path) - 1
        for w in g.adj[u]:
            if w == start:
                if len(path) >= 3:
                    found.add(tuple(path))
                continue
            if on_path >> w & 1 or not allowed >> w & 1:
                continue
            if used + 1 + dist[w] > max_len:
                continue
            path.append(w)
            extend(w, on_path | 1 << w)
            path.pop()

    extend(start, 1 << start)
    return found


def short_cycles_through(g: Graph, v: int, diam: int) -> list[ShortCycle]:
    """Every cycle of length <= 2*diam through v, each once, sorted."""
    return cycles_through(g, v, 2 * diam)


def cycles_through(g: Graph, v: int, max_len: int) -> list[ShortCycle]:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    raw = _cycles_from(g, v, max_len, (1 << g.n) - 1)
    return sorted({ShortCycle.canonical(c) for c in raw}, key=lambda c: (c.length, c.vertices))


def all_cycles(g: Graph, max_len: int) -> list[ShortCycle]:
    """Every cycle of length <= max_len in g, each reported once."""
    out = []
    full = (1 << g.n) - 1
    for s in range(g.n):
        above = full & ~((1 << (s + 1)) - 1)
        for c in _cycles_from(g, s, max_len, above):
            if c[1] < c[-1]:
                out.append(ShortCycle(c))
    out.sort(key=lambda c: (c.length, c.vertices))
    return out


def count_cycles(g: Graph, length: int) -> int:
    return sum(1 for c in all_cycles(g, length) if c.length == length)


# -- intersections and repeats in a cycle -----------------------------------


class _NotAPath:
    __slots__ = ()

    def __repr__(self) -> str:
        return "NOT_A_PATH"

    def __bool__(self) -> bool:
        return False


NOT_A_PATH = _NotAPath()
EMPTY_PATH = PathSeq(())


def intersection_path(c1: ShortCycle, c2: ShortCycle) -> PathSeq | _NotAPath:
    """Common subgraph of two cycles as a path, EMPTY_PATH, or NOT_A_PATH."""
    common = c1.vertex_set() & c2.vertex_set()
    if not common:
        return EMPTY_PATH
    edges = c1.edges() & c2.edges()
    if len(edges) != len(common) - 1:
        return NOT_A_PATH
    nbrs: dict[int, list[int]] = {v: [] for v in common}
    for e in edges:
        a, b = tuple(e)
        nbrs[a].append(b)
        nbrs[b].append(a)
    ends = sorted(v for v, ns in nbrs.items() if len(ns) <= 1)
    if not ends:
        return NOT_A_PATH
    seq = [ends[0]]
    prev = None
    while True:
        nxt = [w for w in nbrs[seq[-1]] if w != prev]
        if not nxt:
            break
        prev = seq[-1]
        seq.append(nxt[0])
    if len(seq) != len(common):
        return NOT_A_PATH
    return PathSeq(tuple(seq))


def rep_in_cycle(c: ShortCycle, x: int, diam: int) -> int:
    """The vertex opposite x on a 2D-cycle."""
    if c.length != 2 * diam:
        raise ValueError(f"repeat vertex needs a {2 * diam}-cycle, got length {c.length}")
    i = c.position(x)
    return c.vertices[(i + diam) % c.length]


def cycle_repeats(c: ShortCycle, x: int, diam: int) -> tuple[int, ...]:
    """Repeats of x on c: one on a 2D-cycle, two on a (2D-1)-cycle."""
    i = c.position(x)
    L = c.length
    if L == 2 * diam:
        return (c.vertices[(i + diam) % L],)
    if L == 2 * diam - 1:
        return (c.vertices[(i + diam - 1) % L], c.vertices[(i - diam + 1) % L])
    raise ValueError(f"cycle of length {L} is not a (2D-1)- or 2D-cycle for D={diam}")


def are_repeats_in(c: ShortCycle, x: int, y: int, diam: int) -> bool:
    if x not in c or y not in c or c.length not in (2 * diam - 1, 2 * diam):
        return False
    return y in cycle_repeats(c, x, diam)


def _subpath_start(c: ShortCycle, p: PathSeq) -> tuple[int, int]:
    """(start position, step) with p[j] == c[start + j*step]."""
    L = c.length
    i = c.position(p.vertices[0])
    if p.length == 0:
        return i, 1
    for step in (1, -1):
        if all(c.vertices[(i + j * step) % L] == v for j, v in enumerate(p.vertices)):
            return i, step
    raise ValueError(f"{p.vertices} is not a subpath of cycle {c.vertices}")


def rep_path_in_cycle(c: ShortCycle, p: PathSeq, diam: int) -> PathSeq:
    if c.length != 2 * diam:
        raise ValueError(f"path repeats need a {2 * diam}-cycle, got length {c.length}")
    if p.is_empty:
        raise ValueError("empty path has no repeat")
    if p.length > diam - 1:
        raise ValueError(f"path of length {p.length} exceeds D-1 = {diam - 1}")
    _subpath_start(c, p)
    return PathSeq(tuple(rep_in_cycle(c, v, diam) for v in p.vertices))


# -- repeats ----------------------------------------------------------------


@dataclass(frozen=True)
class RepeatRecord:
    x: int
    x_rep: int
    multiplicity: int
    witnesses: tuple[PathSeq, ...]


def paths_from(g: Graph, x: int, max_len: int) -> dict[int, list[PathSeq]]:
    """All simple paths of length 1..max_len starting at x, grouped by end."""
    out: dict[int, list[PathSeq]] = {}
    path = [x]

    def extend(u: int, on_path: int) -> None:
        if len(path) - 1 == max_len:
            return
        for w in g.adj[u]:
            if on_path >> w & 1:
                continue
            path.append(w)
            out.setdefault(w, []).append(PathSeq(tuple(path)))
            extend(w, on_path | 1 << w)
            path.pop()

    extend(x, 1 << x)
    return out


def repeats_of(g: Graph, x: int, diam: int) -> list[RepeatRecord]:
    if not 0 <= x < g.n:
        raise IndexError(f"vertex {x} out of range")
    recs = []
    for y, ps in sorted(paths_from(g, x, diam).items()):
        if len(ps) >= 2:
            recs.append(RepeatRecord(x, y, len(ps) - 1, tuple(ps)))
    return recs


# -- theta subgraphs --------------------------------------------------------


@dataclass(frozen=True)
class ThetaSubgraph:
    a: int
    b: int
    paths: tuple[PathSeq, PathSeq, PathSeq]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.vertices)

    def cycles(self) -> list[ShortCycle]:
        out = []
        for p, q in combinations(self.paths, 2):
            out.append(ShortCycle.canonical(p.vertices + q.vertices[-2:0:-1]))
        return out


def _paths_between(g: Graph, a: int, b: int, length: int) -> list[PathSeq]:
    dist_b = bfs_distances(g, b)
    out = []
    path = [a]

    def extend(u: int, on_path: int) -> None:
        used = len(path) - 1
        if used == length:
            if u == b:
                out.append(PathSeq(tuple(path)))
            return
        for w in g.adj[u]:
            if on_path >> w & 1 or used + 1 + dist_b[w] > length:
                continue
            if w == b and used + 1 != length:
                continue
            path.append(w)
            extend(w, on_path | 1 << w)
            path.pop()

    extend(a, 1 << a)
    return out


def _disjoint_triple(paths: list[PathSeq]):
    inner = [frozenset(p.vertices[1:-1]) for p in paths]
    for i, j, k in combinations(range(len(paths)), 3):
        if inner[i].isdisjoint(inner[j]) and inner[i].isdisjoint(inner[k]) and inner[j].isdisjoint(inner[k]):
            return paths[i], paths[j], paths[k]
    return None


def find_theta(g: Graph, diam: int) -> ThetaSubgraph | None:
    """A Θ_D subgraph, scanning vertex pairs in order; None if there is none."""
    if diam < 2:
        return None
    for a in range(g.n):
        if g.degree(a) < 3:
            continue
        dist = bfs_distances(g, a)
        for b in range(a + 1, g.n):
            if g.degree(b) < 3 or dist[b] > diam:
                continue
            paths = _paths_between(g, a, b, diam)
            if len(paths) < 3:
                continue
            triple = _disjoint_triple(paths)
            if triple is not None:
                return ThetaSubgraph(a, b, triple)
    return None


def theta_from_cycles(cycles: list[ShortCycle], diam: int) -> ThetaSubgraph | None:
    """The Θ_D whose edge set is the union of the given cycles, if it is one."""
    edges = frozenset().union(*(c.edges() for c in cycles))
    nbrs: dict[int, list[int]] = {}
    for e in edges:
        a, b = tuple(e)
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    branch = sorted(v for v, ns in nbrs.items() if len(ns) == 3)
    if len(branch) != 2 or any(len(ns) not in (2, 3) for ns in nbrs.values()):
        return None
    a, b = branch
    paths = []
    for start in sorted(nbrs[a]):
        seq = [a, start]
        while seq[-1] != b:
            nxt = [w for w in nbrs[seq[-1]] if w != seq[-2]]
            if len(nxt) != 1 or nxt[0] == a:
                return None
            seq.append(nxt[0])
        paths.append(PathSeq(tuple(seq)))
    if len(edges) != 3 * diam or any(p.length != diam for p in paths):
        return None
    return ThetaSubgraph(a, b, tuple(paths))


# -- vertex types -----------------------------------------------------------


class Tag(enum.Enum):
    TYPE_I = "i"
    TYPE_II = "ii"
    TYPE_III = "iii"


@dataclass(frozen=True)
class VertexType:
    vertex: int
    tag: Tag
    cycles: tuple[ShortCycle, ...]
    theta: ThetaSubgraph | None = None
    intersection: PathSeq | None = None


def classify_vertex(g: Graph, v: int, diam: int) -> VertexType:
    cycles = short_cycles_through(g, v, diam)
    lengths = [c.length for c in cycles]
    if lengths == [2 * diam - 1]:
        return VertexType(v, Tag.TYPE_I, tuple(cycles))
    if len(cycles) in (2, 3) and all(L == 2 * diam for L in lengths):
        if len(cycles) == 2:
            inter = intersection_path(cycles[0], cycles[1])
            if isinstance(inter, PathSeq) and not inter.is_empty and inter.length <= diam - 1:
                return VertexType(v, Tag.TYPE_III, tuple(cycles), intersection=inter)
        theta = theta_from_cycles(cycles, diam)
        if theta is not None:
            on = [c for c in theta.cycles() if v in c]
            if sorted(on, key=lambda c: c.vertices) == sorted(cycles, key=lambda c: c.vertices):
                return VertexType(v, Tag.TYPE_II, tuple(cycles), theta=theta)
    raise ClassificationError(
        f"vertex {v}: short cycles of lengths {lengths} match no type for D={diam}"
    )


def classify_all(g: Graph, diam: int) -> list[VertexType]:
    return [classify_vertex(g, v, diam) for v in range(g.n)]


def same_type_violations(g: Graph, types: list[VertexType], diam: int) -> list[ShortCycle]:
    """Short cycles whose vertices do not all share one type."""
    bad = []
    for c in all_cycles(g, 2 * diam):
        if len({types[v].tag for v in c.vertices}) > 1:
            bad.append(c)
    return bad


# -- repeat cycles ----------------------------------------------------------


def neighbour_cycles(g: Graph, c: ShortCycle, diam: int) -> list[ShortCycle]:
    """2D-cycles other than c sharing a vertex with c."""
    found = set()
    for v in c.vertices:
        for other in short_cycles_through(g, v, diam):
            if other.length == 2 * diam and other != c:
                found.add(other)
    return sorted(found, key=lambda x: x.vertices)


def repeat_cycle(g: Graph, c: ShortCycle, diam: int) -> ShortCycle:
    """The repeat cycle of a 2D-cycle, assembled from its neighbours' repeats."""
    L = 2 * diam
    if c.length != L or not c.is_valid_in(g):
        raise PreconditionError(f"{c.vertices} is not a {L}-cycle of the graph")
    nbrs = neighbour_cycles(g, c, diam)
    if not nbrs:
        raise PreconditionError("cycle has no neighbour cycles")
    blocks = []
    for other in nbrs:
        inter = intersection_path(c, other)
        if not isinstance(inter, PathSeq) or inter.is_empty:
            raise PreconditionError(f"intersection with {other.vertices} is not a path")
        if inter.length > diam - 1:
            raise PreconditionError(f"intersection with {other.vertices} has length {inter.length} > D-1")
        start, step = _subpath_start(c, inter)
        if step == -1:
            start = (start - inter.length) % L
        oriented = tuple(c.vertices[(start + j) % L] for j in range(inter.length + 1))
        blocks.append((start, oriented, other))
    if all(len(b[1]) - 1 >= diam - 1 for b in blocks):
        raise PreconditionError("every intersection has length >= D-1")
    blocks.sort(key=lambda b: b[0])
    covered = sum(len(b[1]) for b in blocks)
    for (s1, p1, _), (s2, _, _) in zip(blocks, blocks[1:] + blocks[:1]):
        if (s1 + len(p1)) % L != s2:
            covered = -1
    if covered != L:
        raise PreconditionError("neighbour-cycle intersections do not tile the cycle")

    seq: list[int] = []
    for _, path, other in blocks:
        rep = [rep_in_cycle(other, v, diam) for v in path]
        if seq and not g.has_edge(seq[-1], rep[0]):
            raise AssemblyError(f"forced edge {seq[-1]}~{rep[0]} is absent")
        seq.extend(rep)
    if not g.has_edge(seq[-1], seq[0]):
        raise AssemblyError(f"forced edge {seq[-1]}~{seq[0]} is absent")
    if len(set(seq)) != L:
        raise AssemblyError(f"assembled walk {seq} repeats a vertex")
    if set(seq) & c.vertex_set():
        raise AssemblyError("assembled cycle meets the original cycle")
    return ShortCycle.canonical(seq)


# -- saturating witnesses ---------------------------------------------------


def saturating_witness(
    g: Graph,
    c: ShortCycle,
    alpha: int,
    gamma: int,
    diam: int,
    partner: int | None = None,
) -> tuple[int, ShortCycle]:
    """Find (mu, C1): mu adjacent to the repeat of alpha, off c, with gamma and mu repeats in C1 and C1 disjoint from c.

    A (2D-1)-cycle ``c`` selects the odd form, a 2D-cycle the even form.  In
    the odd form ``partner`` picks which of alpha's two repeats plays the
    role of the far repeat; by default both are tried in order.
    """
    if not c.is_valid_in(g):
        raise HypothesisError(f"{c.vertices} is not a cycle of the graph")
    if alpha not in c:
        raise HypothesisError(f"alpha={alpha} is not on the cycle")
    if gamma in c:
        raise HypothesisError(f"gamma={gamma} lies on the cycle")
    if not g.has_edge(alpha, gamma):
        raise HypothesisError(f"gamma={gamma} is not a neighbour of alpha={alpha}")

    if c.length == 2 * diam - 1:
        partners = cycle_repeats(c, alpha, diam)
        if partner is not None:
            if partner not in partners:
                raise HypothesisError(f"{partner} is not a repeat of {alpha} on the cycle")
            partners = (partner,)
        c1_lengths = (2 * diam,)
    elif c.length == 2 * diam:
        for other in short_cycles_through(g, gamma, diam):
            if not other.edges() & {frozenset((alpha, gamma))}:
                continue
            inter = intersection_path(c, other)
            if isinstance(inter, PathSeq) and inter.length > diam - 2:
                raise HypothesisError(
                    f"short cycle {other.vertices} through {alpha}~{gamma} meets c in a path of length {inter.length}"
                )
        partners = (rep_in_cycle(c, alpha, diam),)
        c1_lengths = (2 * diam - 1, 2 * diam)
    else:
        raise HypothesisError(f"cycle length {c.length} is neither 2D-1 nor 2D for D={diam}")

    cset = c.vertex_set()
    gamma_cycles = [o for o in short_cycles_through(g, gamma, diam) if o.length in c1_lengths]
    for far in partners:
        for mu in g.adj[far]:
            if mu in cset:
                continue
            for c1 in gamma_cycles:
                if mu in c1 and cset.isdisjoint(c1.vertices) and are_repeats_in(c1, gamma, mu, diam):
                    return mu, c1
    raise NoWitness(f"no witness for alpha={alpha}, gamma={gamma} on {c.vertices}")


# -- verification -----------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail", "skip"
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class ConsistencyReport:
    delta: int
    diam: int
    order: int
    checks: list[CheckResult] = field(default_factory=list)
    types: list[VertexType] | None = None

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        return next((c.name for c in self.checks if c.status == "fail"), None)

    def check(self, name: str) -> CheckResult | None:
        return next((c for c in self.checks if c.name == name), None)

    def to_dict(self) -> dict:
        hist = None
        if self.types is not None:
            hist = {t.value: sum(1 for vt in self.types if vt.tag is t) for t in Tag}
        return {
            "delta": self.delta,
            "diam": self.diam,
            "order": self.order,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "checks": [c.to_dict() for c in self.checks],
            "type_histogram": hist,
        }


def _two_2d_cycles_antipodes(types: list[VertexType], g: Graph, diam: int) -> str | None:
    for vt in types:
        if len(vt.cycles) != 2:
            continue
        c1, c2 = vt.cycles
        y1 = rep_in_cycle(c1, vt.vertex, diam)
        y2 = rep_in_cycle(c2, vt.vertex, diam)
        if g.has_edge(y1, y2):
            return f"vertex {vt.vertex}: antipodes {y1} and {y2} are adjacent"
    return None


def verify_defect2(g: Graph, delta: int, diam: int, full: bool = False) -> ConsistencyReport:
    """Check g against everything known about (delta, diam, -2)-graphs.

    Checks run cheapest first and stop at the first failure unless ``full``.
    """
    report = ConsistencyReport(delta, diam, g.n)
    structural = delta >= 3 and diam >= 2
    big = delta >= 4 and diam >= 4
    deg4 = delta == 4 and diam >= 3
    state: dict = {}

    def c_order():
        want = bounds.moore_bound(delta, diam) - 2
        return g.n == want, f"order {g.n}, expected M-2 = {want}"

    def c_max_degree():
        hi = degree_stats(g)[1]
        return hi == delta, f"maximum degree {hi}"

    def c_regular():
        lo, hi, reg = degree_stats(g)
        return reg, f"degrees in [{lo}, {hi}]"

    def c_girth_window():
        gi = state["girth"] = girth(g)
        return 2 * diam - 1 <= gi <= 2 * diam, f"girth {format_metric(gi)}"

    def c_girth_2d():
        gi = state.get("girth", None)
        if gi is None:
            gi = girth(g)
        return gi == 2 * diam, f"girth {format_metric(gi)}, expected {2 * diam}"

    def c_diameter():
        dm = diameter(g) if g.n else INF
        return dm == diam, f"diameter {format_metric(dm)}"

    def c_typing():
        try:
            state["types"] = report.types = classify_all(g, diam)
        except ClassificationError as exc:
            return False, str(exc)
        return True, ""

    def c_same_type():
        if "types" not in state:
            return False, "vertex typing unavailable"
        bad = same_type_violations(g, state["types"], diam)
        return not bad, f"{len(bad)} mixed-type short cycles"

    def c_type_iii():
        if "types" not in state:
            return False, "vertex typing unavailable"
        off = [vt.vertex for vt in state["types"] if vt.tag is not Tag.TYPE_III]
        return not off, f"vertices not of type (iii): {off[:10]}"

    def c_theta():
        th = find_theta(g, diam)
        if th is None:
            return True, ""
        return False, f"Θ_{diam} with branch vertices {th.a}, {th.b}"

    def c_antipodes():
        if "types" not in state:
            return False, "vertex typing unavailable"
        msg = _two_2d_cycles_antipodes(state["types"], g, diam)
        return msg is None, msg or ""

    def c_repeat_sum():
        for x in range(g.n):
            total = sum(r.multiplicity for r in repeats_of(g, x, diam))
            if total != 2:
                return False, f"vertex {x}: repeat multiplicities sum to {total}"
        return True, ""

    plan = [
        ("order", True, c_order),
        ("max_degree", True, c_max_degree),
        ("regularity", structural, c_regular),
        ("girth_window", structural, c_girth_window),
        ("girth_2d", big or deg4, c_girth_2d),
        ("diameter", True, c_diameter),
        ("vertex_typing", structural, c_typing),
        ("same_cycle_same_type", structural, c_same_type),
        ("type_iii", big or deg4, c_type_iii),
        ("theta_free", big or deg4, c_theta),
        ("antipodes_nonadjacent", deg4, c_antipodes),
        ("repeat_sum", structural, c_repeat_sum),
    ]
    failed = False
    for name, applies, fn in plan:
        if not applies:
            report.checks.append(CheckResult(name, "skip", "hypotheses do not apply"))
            continue
        if failed and not full:
            report.checks.append(CheckResult(name, "skip", "not run after earlier failure"))
            continue
        ok, detail = fn()
        report.checks.append(CheckResult(name, "pass" if ok else "fail", "" if ok else detail))
        failed = failed or not ok
    return report
