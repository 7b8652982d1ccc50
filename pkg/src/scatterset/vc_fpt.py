"""Unweighted d-scattered sets (d >= 3) parameterized by vertex cover size.

The graph is split into a minimum vertex cover C and the independent rest I.
Vertices of I that share the same neighborhood in C are interchangeable, so
one representative per neighborhood class suffices.  Selection then becomes
a set-packing question over the elements of C: each candidate vertex carries
a per-element inclusion coefficient (how much of the distance budget around
that cover vertex it consumes), and two candidates may coexist iff their
coefficients sum to at most 1 on every element.  A forward DP over
coefficient profiles solves the packing in O*(3^|C|) for even d and
O*(4^|C|) for odd d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph_core import (
    INF,
    VertexSet,
    WeightedGraph,
    all_pairs_distances,
    is_scattered,
    vertex_set,
)

# Distinct coefficient profiles materialized by the most recent solve_packing
# run; lets tests confirm the 3^|C| / 4^|C| state bound.
LAST_PROFILE_COUNT = 0


@dataclass(frozen=True)
class PackingSet:
    """One candidate vertex with its per-element inclusion coefficients."""

    origin_vertex: int
    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class PackingInstance:
    """Partial set packing over the cover elements.

    Elements are the vertex-cover vertices in sorted order; `sets` holds one
    entry per candidate origin vertex.  Even-d instances use coefficients
    {0, 1/2, 1}; odd-d instances use {0, 1/3, 2/3, 1}.
    """

    universe_size: int
    sets: tuple[PackingSet, ...]

    def __post_init__(self) -> None:
        for s in self.sets:
            if len(s.coefficients) != self.universe_size:
                raise ValueError(
                    f"set for vertex {s.origin_vertex} has "
                    f"{len(s.coefficients)} coefficients, expected {self.universe_size}"
                )


def _cover_deficiency(g: WeightedGraph, cover: frozenset[int]) -> tuple[int, int] | None:
    for u, v, _ in g.edges:
        if u not in cover and v not in cover:
            return (u, v)
    return None


def compute_vertex_cover(g: WeightedGraph) -> VertexSet:
    """Minimum vertex cover by branching on an uncovered edge.

    The higher-degree endpoint is tried first (ties toward the lower id) and
    only strictly smaller covers replace the incumbent, which keeps the
    result deterministic.
    """
    if not g.has_unit_weights():
        raise ValueError("vertex cover solving expects unit weights")
    degree = [g.degree(v) for v in range(g.n)]
    best: set[int] = {v for v in range(g.n) if degree[v] > 0}

    def branch(cover: set[int]) -> None:
        nonlocal best
        if len(cover) >= len(best):
            return
        edge = _cover_deficiency(g, frozenset(cover))
        if edge is None:
            best = set(cover)
            return
        u, v = edge
        first, second = (u, v) if (-degree[u], u) <= (-degree[v], v) else (v, u)
        for w in (first, second):
            cover.add(w)
            branch(cover)
            cover.remove(w)

    branch(set())
    return tuple(sorted(best))


def neighborhood_classes(g: WeightedGraph, cover: VertexSet) -> VertexSet:
    """One representative (lowest id) per distinct neighborhood N(v) in C."""
    cset = frozenset(cover)
    bad = _cover_deficiency(g, cset)
    if bad is not None:
        raise ValueError(f"not a vertex cover: edge {bad} is uncovered")
    reps: dict[frozenset[int], int] = {}
    for v in range(g.n):
        if v in cset:
            continue
        signature = frozenset(g.adjacency[v])
        if signature not in reps:
            reps[signature] = v
    return tuple(sorted(reps.values()))


def _coefficient(dist_uv: int, d: int) -> Fraction:
    if d % 2 == 0:
        half = d // 2
        if dist_uv < half:
            return Fraction(1)
        if dist_uv == half:
            return Fraction(1, 2)
        return Fraction(0)
    lo, hi = d // 2, d // 2 + 1
    if dist_uv < lo:
        return Fraction(1)
    if dist_uv == lo:
        return Fraction(2, 3)
    if dist_uv == hi:
        return Fraction(1, 3)
    return Fraction(0)


def reduce_to_packing(
    g: WeightedGraph, cover: VertexSet, reps: VertexSet, d: int
) -> PackingInstance:
    """Build the packing instance whose elements are the cover vertices."""
    if d < 3:
        raise ValueError("d must be >= 3 here; for d = 2 use the tw_exact module")
    if not g.has_unit_weights():
        raise ValueError("packing reduction expects unit weights")
    elements = tuple(sorted(cover))
    dist = all_pairs_distances(g).dist
    sets = []
    for origin in sorted(set(elements) | set(reps)):
        row = dist[origin]
        sets.append(
            PackingSet(origin, tuple(_coefficient(row[u], d) for u in elements))
        )
    return PackingInstance(universe_size=len(elements), sets=tuple(sets))


def solve_packing(inst: PackingInstance) -> tuple[int, VertexSet]:
    """Maximum subfamily where per element the top two coefficients sum <= 1.

    Equivalently every pair of chosen sets is elementwise compatible, so a
    forward DP suffices: the profile keeps each element's maximum coefficient
    among chosen sets, and a set may join iff profile + its coefficient stays
    within 1 everywhere.  Coefficients run in small-integer codes (halves for
    even d, thirds for odd) to keep the hot loop free of rational arithmetic.
    """
    global LAST_PROFILE_COUNT
    denom = 1
    for s in inst.sets:
        for c in s.coefficients:
            denom = max(denom, c.denominator)
    if denom > 3:
        raise ValueError(f"unsupported coefficient denominator {denom}")
    coded = [
        tuple(int(c * denom) for c in s.coefficients) for s in inst.sets
    ]
    budget = denom  # per-element cap in code units
    profiles: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {
        (0,) * inst.universe_size: (0, ())
    }
    order = sorted(range(len(inst.sets)), key=lambda i: inst.sets[i].origin_vertex)
    for idx in order:
        codes = coded[idx]
        origin = inst.sets[idx].origin_vertex
        additions: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
        for profile, (count, chosen) in profiles.items():
            if any(p + c > budget for p, c in zip(profile, codes)):
                continue
            new_profile = tuple(max(p, c) for p, c in zip(profile, codes))
            candidate = (count + 1, chosen + (origin,))
            incumbent = additions.get(new_profile)
            if incumbent is None:
                incumbent = profiles.get(new_profile)
            if (
                incumbent is None
                or candidate[0] > incumbent[0]
                or (candidate[0] == incumbent[0] and candidate[1] < incumbent[1])
            ):
                additions[new_profile] = candidate
        profiles.update(additions)
    LAST_PROFILE_COUNT = len(profiles)
    best_count, best_chosen = 0, ()
    for count, chosen in profiles.values():
        if count > best_count or (count == best_count and chosen < best_chosen):
            best_count, best_chosen = count, chosen
    return best_count, tuple(sorted(best_chosen))


def max_scattered_vc(
    g: WeightedGraph, d: int, cover: VertexSet | None = None
) -> tuple[int, VertexSet]:
    """Maximum d-scattered set via the cover reduction (unit weights, d >= 3)."""
    if not g.has_unit_weights():
        raise ValueError("max_scattered_vc expects unit weights")
    if d < 3:
        raise ValueError("d must be >= 3 here; for d = 2 use the tw_exact module")
    if cover is None:
        cover = compute_vertex_cover(g)
    else:
        cover = vertex_set(g, cover)
        bad = _cover_deficiency(g, frozenset(cover))
        if bad is not None:
            raise ValueError(f"provided set is not a vertex cover: edge {bad} uncovered")
    reps = neighborhood_classes(g, cover)
    # isolated non-cover vertices are all freely selectable, not one per
    # class: give each its own (all-zero) packing set
    cset = frozenset(cover)
    isolated = [v for v in range(g.n) if v not in cset and not g.adjacency[v]]
    reps_eff = tuple(sorted(set(reps) | set(isolated)))
    inst = reduce_to_packing(g, cover, reps_eff, d)
    size, chosen = solve_packing(inst)
    witness = tuple(sorted(chosen))
    if not is_scattered(g, witness, d):
        raise AssertionError("internal error: packing produced an invalid witness")
    return size, witness
