"""Toolkit for graphs close to the Moore bound.

Submodules: ``graph`` (graph type, graph6, hop metrics), ``bounds`` (Moore
arithmetic and defect-2 feasibility), ``structure`` (short cycles, repeats,
vertex types, consistency checks), ``canon`` (canonical labelling),
``search`` (exhaustive generation) and ``cli``.
"""

__version__ = "0.1.0"

from .bounds import (
    FeasibilityVerdict,
    Reason,
    Status,
    feasibility,
    forces_regular,
    moore_bound,
    n2d1_count_deg4,
    n2d_count,
    order,
    regularity_threshold,
    residue_table,
)
from .canon import CanonicalForm, canonical_form, canonical_graph6, is_isomorphic
from .graph import (
    INF,
    Graph,
    Graph6Error,
    PathSeq,
    bfs_distances,
    degree_stats,
    diameter,
    distance_matrix,
    eccentricity,
    girth,
    parse_graph6,
    read_graph6_file,
    write_graph6,
)
from .search import SearchConfig, SearchResult, brute_force_filter, enumerate_defect_graphs
from .structure import (
    ConsistencyReport,
    ShortCycle,
    Tag,
    classify_vertex,
    find_theta,
    intersection_path,
    rep_in_cycle,
    repeat_cycle,
    repeats_of,
    saturating_witness,
    short_cycles_through,
    verify_defect2,
)
