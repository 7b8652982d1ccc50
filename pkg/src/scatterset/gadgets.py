"""Benchmark-instance generators with known scattered-set witnesses.

Four constructions turn small source instances (CNF formulas or k-partite
independence instances) into d-scattered-set benchmarks:

* ``gen_w1_vc``: edge-weighted graphs whose optimum reaches k*k exactly when
  the source admits one vertex per class with no edges between the choices.
* ``gen_fvs_unweighted``: the unit-weight subdivision of the same graphs.
* ``gen_seth``: unit-weight column chains built from a CNF formula at a
  chosen distance d, with the path count p and the group capacity gamma
  derived from (d, epsilon) by exact rational arithmetic.
* ``gen_td_eth``: unit-weight instances from 3-SAT whose clause groups are
  glued through pairwise-consistency verifier vertices.

Generators never solve the graphs they emit.  Witnesses are produced only
from a valid source assignment and re-validated with ``is_scattered`` before
release; structural certificates (vertex covers, feedback vertex sets) are
checked against their definitions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph_core import VertexSet, WeightedGraph, is_scattered, vertex_set

# Refuse constructions beyond these sizes instead of thrashing; the
# generators target desk-scale benchmark instances.
_MAX_VERTICES = 2_000_000
_MAX_EDGES = 8_000_000


@dataclass(frozen=True)
class CnfFormula:
    """Propositional CNF; clauses are tuples of nonzero signed variable ids."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        for idx, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ValueError(f"clause {idx} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {idx}: literal {lit} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def max_clause_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_vars:
            raise ValueError("assignment length must equal the variable count")
        return all(
            any(bool(assignment[abs(lit) - 1]) == (lit > 0) for lit in clause)
            for clause in self.clauses
        )


@dataclass(frozen=True)
class McisInstance:
    """k classes of n vertices each; edges may only join distinct classes.

    Vertices are (class_id, index) pairs, both 1-based.  Every class is an
    independent set by construction, so an edge's lower class id comes first.
    """

    num_classes: int
    class_size: int
    edges: frozenset[tuple[tuple[int, int], tuple[int, int]]]

    def __post_init__(self) -> None:
        if self.num_classes < 1 or self.class_size < 1:
            raise ValueError("need at least one class and one vertex per class")
        for (i, l), (j, o) in self.edges:
            if i >= j:
                raise ValueError("edge endpoints must be in distinct classes, lower id first")
            if not (1 <= i <= self.num_classes and 1 <= j <= self.num_classes):
                raise ValueError(f"class id out of range in edge ({i}.{l}, {j}.{o})")
            if not (1 <= l <= self.class_size and 1 <= o <= self.class_size):
                raise ValueError(f"vertex index out of range in edge ({i}.{l}, {j}.{o})")

    def has_edge(self, i: int, l: int, j: int, o: int) -> bool:
        if i > j:
            i, l, j, o = j, o, i, l
        return ((i, l), (j, o)) in self.edges

    def non_edges(self, i: int, j: int) -> list[tuple[int, int]]:
        """Index pairs (l, o) with no edge between class i and class j."""
        return [
            (l, o)
            for l in range(1, self.class_size + 1)
            for o in range(1, self.class_size + 1)
            if not self.has_edge(i, l, j, o)
        ]


@dataclass(frozen=True)
class GadgetOutput:
    """A generated benchmark graph plus everything needed to check it."""

    graph: WeightedGraph
    d: int
    target_size: int
    witness: VertexSet | None
    certificate: VertexSet
    certificate_kind: str  # "vertex-cover", "feedback-vertex-set" or "none"
    params: dict[str, object]
    vertex_names: tuple[str, ...]


def parse_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF: 'c' comments, 'p cnf <vars> <clauses>', 0-terminated clauses."""
    num_vars: int | None = None
    declared = 0
    tokens: list[int] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if num_vars is not None:
                raise ValueError(f"line {line_no}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {line_no}: expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ValueError(f"line {line_no}: non-integer header field") from None
            continue
        if num_vars is None:
            raise ValueError(f"line {line_no}: clause before the problem line")
        try:
            tokens.extend(int(tok) for tok in parts)
        except ValueError:
            raise ValueError(f"line {line_no}: non-integer literal") from None
    if num_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if not current:
                raise ValueError("empty clause")
            clauses.append(tuple(current))
            current = []
        else:
            current.append(tok)
    if current:
        raise ValueError("last clause is not 0-terminated")
    if declared != len(clauses):
        raise ValueError(f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def _parse_class_vertex(token: str, line_no: int) -> tuple[int, int]:
    cls, sep, idx = token.partition(".")
    if sep != ".":
        raise ValueError(f"line {line_no}: vertex '{token}' is not <class>.<index>")
    try:
        return int(cls), int(idx)
    except ValueError:
        raise ValueError(f"line {line_no}: vertex '{token}' is not <class>.<index>") from None


def parse_mcis(text: str) -> McisInstance:
    """Parse 'p mcis <k> <n>' plus 'e <class.index> <class.index>' lines."""
    header: tuple[int, int] | None = None
    edges: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise ValueError(f"line {line_no}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "mcis":
                raise ValueError(f"line {line_no}: expected 'p mcis <k> <n>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ValueError(f"line {line_no}: non-integer header field") from None
        elif parts[0] == "e":
            if header is None:
                raise ValueError(f"line {line_no}: edge before the problem line")
            if len(parts) != 3:
                raise ValueError(f"line {line_no}: expected 'e <class.index> <class.index>'")
            a = _parse_class_vertex(parts[1], line_no)
            b = _parse_class_vertex(parts[2], line_no)
            if a[0] == b[0]:
                raise ValueError(f"line {line_no}: edge inside class {a[0]}")
            if a[0] > b[0]:
                a, b = b, a
            edges.add((a, b))
        else:
            raise ValueError(f"line {line_no}: unknown record '{parts[0]}'")
    if header is None:
        raise ValueError("missing 'p mcis' problem line")
    return McisInstance(header[0], header[1], frozenset(edges))


class _GraphBuilder:
    """Accumulates named vertices and positive-integer-weighted edges."""

    def __init__(self) -> None:
        self.names: list[str] = []
        self.edges: list[tuple[int, int, int]] = []

    def vertex(self, name: str) -> int:
        self.names.append(name)
        return len(self.names) - 1

    def edge(self, u: int, v: int, w: int = 1) -> None:
        self.edges.append((u, v, w))

    def path(self, u: int, v: int, length: int, label: str) -> None:
        """Join u and v by a unit path of the given length (length-1 interior vertices)."""
        if length < 1:
            raise ValueError("path length must be >= 1")
        prev = u
        for step in range(1, length):
            nxt = self.vertex(f"{label}:{step}")
            self.edge(prev, nxt)
            prev = nxt
        self.edge(prev, v)

    def clique(self, members: Sequence[int]) -> None:
        for u, v in itertools.combinations(members, 2):
            self.edge(u, v)

    def build(self) -> WeightedGraph:
        if len(self.names) > _MAX_VERTICES or len(self.edges) > _MAX_EDGES:
            raise ValueError("generated graph would be too large")
        return WeightedGraph(len(self.names), tuple(self.edges))


def _check_vertex_cover(graph: WeightedGraph, cover: Iterable[int]) -> None:
    covered = set(cover)
    for u, v, _ in graph.edges:
        if u not in covered and v not in covered:
            raise AssertionError(f"certificate misses edge ({u},{v})")


def _check_feedback_vertex_set(graph: WeightedGraph, removed: Iterable[int]) -> None:
    gone = set(removed)
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in graph.edges:
        if u in gone or v in gone:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            raise AssertionError(f"cycle survives certificate removal near edge ({u},{v})")
        parent[ru] = rv


def _check_witness(graph: WeightedGraph, witness: VertexSet, d: int, target: int) -> None:
    if len(witness) != target:
        raise AssertionError(f"witness has {len(witness)} vertices, expected {target}")
    if not is_scattered(graph, witness, d):
        raise AssertionError("constructed witness is not scattered at the emitted d")


def _class_choice(assignment: Sequence[int], k: int, n: int) -> list[int]:
    choice = list(assignment)
    if len(choice) != k:
        raise ValueError(f"assignment must pick one index per class ({k} values)")
    for idx in choice:
        if not (1 <= int(idx) <= n):
            raise ValueError(f"class choice {idx} out of range 1..{n}")
    return [int(idx) for idx in choice]


def _is_independent_choice(inst: McisInstance, choice: Sequence[int]) -> bool:
    k = inst.num_classes
    return not any(
        inst.has_edge(i, choice[i - 1], j, choice[j - 1])
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    )


def gen_w1_vc(
    inst: McisInstance, assignment: Sequence[int] | None = None
) -> GadgetOutput:
    """Edge-weighted benchmark from a k-partite independence instance.

    Each class i gets two anchors a_i, b_i joined to its selection vertices
    p[i,l] with complementary weights; every cross-class non-edge gets a pair
    verifier u joined to the four anchors of its two classes; each class pair
    with at least one verifier gets a g vertex adjacent to its verifiers plus
    a pendant g'.  All weights are doubled so the two g-side weights stay
    integral, giving d = 12n.  The target k*k is reachable exactly when some
    choice of one vertex per class is pairwise non-adjacent; a valid
    assignment (1-based index per class) yields that witness, an invalid one
    is refused while the graph is still emitted.  The certificate is a
    vertex cover: all a, b and g vertices.
    """
    k, n = inst.num_classes, inst.class_size
    d = 12 * n
    b = _GraphBuilder()
    av = {i: b.vertex(f"a[{i}]") for i in range(1, k + 1)}
    bv = {i: b.vertex(f"b[{i}]") for i in range(1, k + 1)}
    pv: dict[tuple[int, int], int] = {}
    for i in range(1, k + 1):
        for l in range(1, n + 1):
            pv[(i, l)] = b.vertex(f"p[{i},{l}]")
            b.edge(av[i], pv[(i, l)], 2 * (n + l))
            b.edge(bv[i], pv[(i, l)], 2 * (2 * n - l))
    uv: dict[tuple[int, int, int, int], int] = {}
    gpv: dict[tuple[int, int], int] = {}
    g_ids: list[int] = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            pair_us = []
            for l, o in inst.non_edges(i, j):
                u = b.vertex(f"u[{i}.{l},{j}.{o}]")
                uv[(i, l, j, o)] = u
                b.edge(u, av[i], 2 * (5 * n - l))
                b.edge(u, bv[i], 2 * (4 * n + l))
                b.edge(u, av[j], 2 * (5 * n - o))
                b.edge(u, bv[j], 2 * (4 * n + o))
                pair_us.append(u)
            if pair_us:
                g = b.vertex(f"g[{i},{j}]")
                gp = b.vertex(f"g'[{i},{j}]")
                g_ids.append(g)
                gpv[(i, j)] = gp
                for u in pair_us:
                    b.edge(g, u, 6 * n - 1)
                b.edge(g, gp, 6 * n + 1)
    graph = b.build()
    certificate = vertex_set(graph, list(av.values()) + list(bv.values()) + g_ids)
    _check_vertex_cover(graph, certificate)
    target = k * k
    witness: VertexSet | None = None
    accepted: bool | None = None
    if assignment is not None:
        choice = _class_choice(assignment, k, n)
        accepted = _is_independent_choice(inst, choice)
        if accepted:
            members = [pv[(i, choice[i - 1])] for i in range(1, k + 1)]
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    members.append(uv[(i, choice[i - 1], j, choice[j - 1])])
            members.extend(gpv.values())
            witness = vertex_set(graph, members)
            _check_witness(graph, witness, d, target)
    params: dict[str, object] = {
        "k": k,
        "n": n,
        "d": d,
        "weight_scale": 2,
        "pair_verifiers": len(uv),
        "verified_pairs": len(gpv),
        "assignment_accepted": accepted,
    }
    return GadgetOutput(
        graph, d, target, witness, certificate, "vertex-cover", params, tuple(b.names)
    )


def gen_fvs_unweighted(
    inst: McisInstance, assignment: Sequence[int] | None = None
) -> GadgetOutput:
    """Unit-weight subdivision of the weighted construction, d = 6n.

    Every weighted anchor edge becomes a unit path of the undoubled length.
    The two half-integral g-side weights split into integral paths of
    lengths 3n-1 (g to each of its verifiers) and 3n+1 (g to the pendant
    g'), keeping verifier-to-g' distances at exactly 6n while two verifiers
    of the same pair stay within 6n-2 of each other.  Witness recipe and
    target k*k carry over; the certificate is a feedback vertex set: all a
    and b vertices.
    """
    k, n = inst.num_classes, inst.class_size
    d = 6 * n
    b = _GraphBuilder()
    av = {i: b.vertex(f"a[{i}]") for i in range(1, k + 1)}
    bv = {i: b.vertex(f"b[{i}]") for i in range(1, k + 1)}
    pv: dict[tuple[int, int], int] = {}
    for i in range(1, k + 1):
        for l in range(1, n + 1):
            pv[(i, l)] = b.vertex(f"p[{i},{l}]")
            b.path(av[i], pv[(i, l)], n + l, f"ap[{i},{l}]")
            b.path(bv[i], pv[(i, l)], 2 * n - l, f"bp[{i},{l}]")
    uv: dict[tuple[int, int, int, int], int] = {}
    gpv: dict[tuple[int, int], int] = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            pair_us = []
            for l, o in inst.non_edges(i, j):
                u = b.vertex(f"u[{i}.{l},{j}.{o}]")
                uv[(i, l, j, o)] = u
                b.path(u, av[i], 5 * n - l, f"ua[{i}.{l},{j}.{o}]")
                b.path(u, bv[i], 4 * n + l, f"ub[{i}.{l},{j}.{o}]")
                b.path(u, av[j], 5 * n - o, f"ua[{j}.{o},{i}.{l}]")
                b.path(u, bv[j], 4 * n + o, f"ub[{j}.{o},{i}.{l}]")
                pair_us.append(u)
            if pair_us:
                g = b.vertex(f"g[{i},{j}]")
                gp = b.vertex(f"g'[{i},{j}]")
                gpv[(i, j)] = gp
                for u in pair_us:
                    b.path(g, u, 3 * n - 1, f"gu[{i},{j}]@{u}")
                b.path(g, gp, 3 * n + 1, f"gg[{i},{j}]")
    graph = b.build()
    certificate = vertex_set(graph, list(av.values()) + list(bv.values()))
    _check_feedback_vertex_set(graph, certificate)
    target = k * k
    witness: VertexSet | None = None
    accepted: bool | None = None
    if assignment is not None:
        choice = _class_choice(assignment, k, n)
        accepted = _is_independent_choice(inst, choice)
        if accepted:
            members = [pv[(i, choice[i - 1])] for i in range(1, k + 1)]
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    members.append(uv[(i, choice[i - 1], j, choice[j - 1])])
            members.extend(gpv.values())
            witness = vertex_set(graph, members)
            _check_witness(graph, witness, d, target)
    params: dict[str, object] = {
        "k": k,
        "n": n,
        "d": d,
        "pair_verifiers": len(uv),
        "verified_pairs": len(gpv),
        "assignment_accepted": accepted,
    }
    return GadgetOutput(
        graph, d, target, witness, certificate, "feedback-vertex-set", params, tuple(b.names)
    )


def _floor_pow_log2(d: int, p: int) -> int:
    """Exact floor of (log2 d)**p, by rational bracketing of the logarithm.

    For d a power of two the logarithm is an integer.  Otherwise it is
    irrational, so some dyadic bracket [a/s, (a+1)/s] around it has both
    endpoint p-th powers in the same unit interval, which pins the floor.
    """
    if d & (d - 1) == 0:
        return (d.bit_length() - 1) ** p
    scale = 1
    power = d
    for _ in range(21):
        scale *= 2
        power *= power
        a = power.bit_length() - 1  # floor(scale * log2 d), exactly
        lo = math.floor(Fraction(a, scale) ** p)
        hi = math.floor(Fraction(a + 1, scale) ** p)
        if lo == hi:
            return lo
    raise ValueError("log bracketing for gamma needs an impractically fine scale")


def _base_digits(code: int, base: int, width: int) -> tuple[int, ...]:
    digits = []
    for _ in range(width):
        digits.append(code % base)
        code //= base
    return tuple(digits)


def gen_seth(
    phi: CnfFormula,
    d: int,
    epsilon: Fraction | int,
    assignment: Sequence[bool] | None = None,
) -> GadgetOutput:
    """Unit-weight column-chain benchmark from a CNF formula at distance d.

    Variables are cut into t groups of up to gamma = floor(log2(d)**p)
    variables, where p is the smallest integer with d**p >= 2*(d-epsilon)**p
    (all arithmetic exact).  The graph is a chain of m*(t*p*(d-1)+1)
    columns; each column holds one selection gadget per group (p paths of d
    vertices, chained to the next column) and one clause gadget whose input
    vertices stand for the group assignments satisfying one literal of the
    column's clause, encoded as base-d digit tuples of the assignment index
    modulo d**p.  Inputs reach the paths through per-input connector trees
    that leave exactly the encoded positions at distance d.  A satisfying
    assignment yields a witness selecting, per column, the encoded position
    on every path, the input matching the first satisfied literal, and the
    free end of the clause gadget: (t*p+2) vertices per column.
    """
    if d <= 2:
        raise ValueError("d must be at least 3")
    eps = Fraction(epsilon)
    if not 0 < eps < d:
        raise ValueError("epsilon must lie strictly between 0 and d")
    if not phi.clauses:
        raise ValueError("formula needs at least one clause")
    n, m = phi.num_vars, phi.num_clauses
    shortfall = Fraction(d) - eps
    p = 1
    while Fraction(d) ** p < 2 * shortfall**p:
        p += 1
        if p > 24:
            raise ValueError("epsilon is too small for this d: path count p > 24")
    assert Fraction(d) ** p >= 2 * shortfall**p
    gamma = _floor_pow_log2(d, p)
    t = -(-n // gamma)
    codes = d**p
    columns = m * (t * p * (d - 1) + 1)
    target = (t * p + 2) * columns

    group_vars = [
        list(range(g * gamma + 1, min((g + 1) * gamma, n) + 1)) for g in range(t)
    ]
    group_of = lambda var: (var - 1) // gamma

    # Distinct digit tuples per literal occurrence, smallest-first.
    clause_inputs: list[list[tuple[int, int, tuple[tuple[int, ...], ...]]]] = []
    for clause in phi.clauses:
        per_lit = []
        for lit_idx, lit in enumerate(clause, start=1):
            var = abs(lit)
            grp = group_of(var)
            gvars = group_vars[grp]
            if len(gvars) > 20:
                raise ValueError("group assignment space too large to enumerate")
            pos = gvars.index(var)
            want = 1 if lit > 0 else 0
            images: set[tuple[int, ...]] = set()
            for mask in range(1 << len(gvars)):
                if (mask >> pos) & 1 != want:
                    continue
                images.add(_base_digits(mask % codes, d, p))
                if len(images) == codes:
                    break
            per_lit.append((lit_idx, grp, tuple(sorted(images))))
        clause_inputs.append(per_lit)

    # Connector geometry; a_len may be zero (inputs then touch the hub).
    a_len = d // 2 - 1
    b_len = (d + 1) // 2 + 1
    w_len = d // 2 - 1 if d % 2 == 0 else d // 2

    inputs_per_clause = [
        sum(len(images) for _, _, images in per_lit) for per_lit in clause_inputs
    ]
    per_input = 1 + a_len + w_len + p * (d - 1) * w_len
    est_vertices = sum(
        t * p * d + b_len + inputs_per_clause[(j - 1) % m] * per_input
        for j in range(1, columns + 1)
    )
    if est_vertices > _MAX_VERTICES:
        raise ValueError("generated graph would be too large")

    # Witness bookkeeping, fixed before the build so selections are made
    # while each column's vertices are at hand.
    witnessing = False
    group_tuple: list[tuple[int, ...]] = []
    clause_pick: list[tuple[int, int, tuple[int, ...]]] = []
    if assignment is not None:
        values = [bool(v) for v in assignment]
        if len(values) != n:
            raise ValueError("assignment length must equal the variable count")
        if phi.satisfied_by(values):
            witnessing = True
            for gvars in group_vars:
                mask = sum(1 << idx for idx, var in enumerate(gvars) if values[var - 1])
                group_tuple.append(_base_digits(mask % codes, d, p))
            for clause in phi.clauses:
                for lit_idx, lit in enumerate(clause, start=1):
                    if values[abs(lit) - 1] == (lit > 0):
                        grp = group_of(abs(lit))
                        clause_pick.append((lit_idx, grp, group_tuple[grp]))
                        break

    b = _GraphBuilder()
    members: list[int] = []
    prev_ends: dict[tuple[int, int], int] | None = None
    for j in range(1, columns + 1):
        mu = (j - 1) % m
        col_cells: dict[tuple[int, int], list[int]] = {}
        new_ends: dict[tuple[int, int], int] = {}
        for grp in range(t):
            for path in range(p):
                cells = [b.vertex(f"P[{j},{grp + 1},{path + 1},1]")]
                for i in range(2, d + 1):
                    v = b.vertex(f"P[{j},{grp + 1},{path + 1},{i}]")
                    b.edge(cells[-1], v)
                    cells.append(v)
                if prev_ends is not None:
                    b.edge(prev_ends[(grp, path)], cells[0])
                new_ends[(grp, path)] = cells[-1]
                col_cells[(grp, path)] = cells
                if witnessing:
                    members.append(cells[group_tuple[grp][path]])
        prev_ends = new_ends

        bpath = [b.vertex(f"B[{j},{i}]") for i in range(1, b_len + 1)]
        for x, y in zip(bpath, bpath[1:]):
            b.edge(x, y)
        hub = bpath[-1]
        if witnessing:
            members.append(bpath[0])
        a_ends: list[int] = []
        for lit_idx, grp, images in clause_inputs[mu]:
            for s in images:
                tag = ".".join(str(x) for x in s)
                v = b.vertex(f"in[{j},{lit_idx},{tag}]")
                if witnessing and (lit_idx, grp, s) == clause_pick[mu]:
                    members.append(v)
                aend = v
                prev = v
                for step in range(1, a_len + 1):
                    aend = b.vertex(f"A[{j},{lit_idx},{tag}]:{step}")
                    b.edge(prev, aend)
                    prev = aend
                b.edge(aend, hub)
                a_ends.append(aend)
                wpath = [b.vertex(f"W[{j},{lit_idx},{tag}]:1")]
                b.edge(v, wpath[0])
                for step in range(2, w_len + 1):
                    nxt = b.vertex(f"W[{j},{lit_idx},{tag}]:{step}")
                    b.edge(wpath[-1], nxt)
                    wpath.append(nxt)
                wend = wpath[-1]
                for path in range(p):
                    y_ends = []
                    for i in range(1, d + 1):
                        if i == s[path] + 1:
                            continue
                        ylab = f"Y[{j},{lit_idx},{tag},{path + 1},{i}]"
                        ycur = b.vertex(f"{ylab}:1")
                        b.edge(ycur, col_cells[(grp, path)][i - 1])
                        for step in range(2, w_len + 1):
                            nxt = b.vertex(f"{ylab}:{step}")
                            b.edge(ycur, nxt)
                            ycur = nxt
                        b.edge(ycur, wend)
                        y_ends.append(ycur)
                    if d % 2 == 0:
                        b.clique(y_ends)
        if d % 2 == 0:
            b.clique(a_ends)

    graph = b.build()
    witness: VertexSet | None = None
    if witnessing:
        witness = vertex_set(graph, members)
        _check_witness(graph, witness, d, target)
    lam = math.log(float(shortfall)) / math.log(d)
    params: dict[str, object] = {
        "p": p,
        "t": t,
        "gamma": gamma,
        "lambda": lam,
        "d": d,
        "epsilon": str(eps),
        "codes": codes,
        "columns": columns,
        "inputs_total": sum(
            inputs_per_clause[(j - 1) % m] for j in range(1, columns + 1)
        ),
        "assignment_accepted": witnessing if assignment is not None else None,
    }
    return GadgetOutput(
        graph, d, target, witness, vertex_set(graph, ()), "none", params, tuple(b.names)
    )


def gen_td_eth(
    phi: CnfFormula, assignment: Sequence[bool] | None = None
) -> GadgetOutput:
    """Unit-weight benchmark from 3-SAT glued by assignment-consistency.

    The variable count is padded to a perfect square n (fresh variables with
    always-true clauses), clauses are cut into sqrt(n) contiguous groups,
    and each group contributes one vertex per satisfying partial assignment
    of its clause variables, hung between two anchors by complementary
    paths.  Every consistent assignment pair across two groups gets a
    verifier vertex wired to the four anchors; each group pair with at least
    one verifier gets a g vertex reaching its verifiers by paths of length
    3N-1 and a pendant g' on a path of length 3N+1, putting every verifier
    at exactly 6N from g' and two same-pair verifiers within 6N-2.  With
    capacity N = 8**sqrt(n) the distance is d = 6N and the target is n; a
    satisfying assignment yields the witness (one vertex per group, one
    verifier per pair, every g').  The certificate is a feedback vertex
    set: all anchors.
    """
    if phi.max_clause_width() > 3:
        raise ValueError("only clauses of width <= 3 are supported")
    clauses = list(phi.clauses)
    nv = phi.num_vars
    while math.isqrt(nv) ** 2 != nv:
        nv += 1
        clauses.append((nv, -nv))  # always true, keeps the padding variable used
    r = math.isqrt(nv)
    cap = 8**r
    d = 6 * cap
    size = -(-len(clauses) // r)
    groups = [clauses[g * size : (g + 1) * size] for g in range(r)]
    group_vars = [sorted({abs(lit) for cl in grp for lit in cl}) for grp in groups]

    profiles: list[list[tuple[bool, ...]]] = []
    for grp, gvars in zip(groups, group_vars):
        if len(gvars) > 20:
            raise ValueError("group assignment space too large to enumerate")
        sats = []
        for mask in range(1 << len(gvars)):
            values = {v: bool((mask >> idx) & 1) for idx, v in enumerate(gvars)}
            if all(any(values[abs(lit)] == (lit > 0) for lit in cl) for cl in grp):
                sats.append(tuple(values[v] for v in gvars))
        if len(sats) > cap:
            raise ValueError("group has more satisfying assignments than its capacity")
        profiles.append(sats)
    if sum(len(s) for s in profiles) > 2000:
        raise ValueError("too many satisfying partial assignments to wire")

    def conflicts(i: int, li: tuple[bool, ...], j: int, lj: tuple[bool, ...]) -> bool:
        shared = set(group_vars[i]) & set(group_vars[j])
        for var in shared:
            if li[group_vars[i].index(var)] != lj[group_vars[j].index(var)]:
                return True
        return False

    b = _GraphBuilder()
    av = [b.vertex(f"a[{i + 1}]") for i in range(r)]
    bv = [b.vertex(f"b[{i + 1}]") for i in range(r)]
    pv: list[list[int]] = []
    for i in range(r):
        row = []
        for l, _ in enumerate(profiles[i], start=1):
            v = b.vertex(f"p[{i + 1},{l}]")
            b.path(av[i], v, cap + l, f"ap[{i + 1},{l}]")
            b.path(bv[i], v, 2 * cap - l, f"bp[{i + 1},{l}]")
            row.append(v)
        pv.append(row)
    uv: dict[tuple[int, int, int, int], int] = {}
    gpv: dict[tuple[int, int], int] = {}
    for i in range(r):
        for j in range(i + 1, r):
            pair_us = []
            for l, li in enumerate(profiles[i], start=1):
                for o, lj in enumerate(profiles[j], start=1):
                    if conflicts(i, li, j, lj):
                        continue
                    u = b.vertex(f"u[{i + 1}.{l},{j + 1}.{o}]")
                    uv[(i, l, j, o)] = u
                    b.path(u, av[i], 5 * cap - l, f"ua[{i + 1}.{l},{j + 1}.{o}]")
                    b.path(u, bv[i], 4 * cap + l, f"ub[{i + 1}.{l},{j + 1}.{o}]")
                    b.path(u, av[j], 5 * cap - o, f"ua[{j + 1}.{o},{i + 1}.{l}]")
                    b.path(u, bv[j], 4 * cap + o, f"ub[{j + 1}.{o},{i + 1}.{l}]")
                    pair_us.append(u)
            if pair_us:
                g = b.vertex(f"g[{i + 1},{j + 1}]")
                gp = b.vertex(f"g'[{i + 1},{j + 1}]")
                gpv[(i, j)] = gp
                for u in pair_us:
                    b.path(g, u, 3 * cap - 1, f"gu[{i + 1},{j + 1}]@{u}")
                b.path(g, gp, 3 * cap + 1, f"gg[{i + 1},{j + 1}]")
    graph = b.build()
    certificate = vertex_set(graph, av + bv)
    _check_feedback_vertex_set(graph, certificate)
    target = nv
    witness: VertexSet | None = None
    accepted: bool | None = None
    if assignment is not None:
        values = [bool(v) for v in assignment]
        if len(values) != phi.num_vars:
            raise ValueError("assignment length must equal the variable count")
        accepted = phi.satisfied_by(values)
        if accepted:
            full = values + [False] * (nv - phi.num_vars)
            chosen: list[int] = []
            for i in range(r):
                restriction = tuple(full[v - 1] for v in group_vars[i])
                chosen.append(profiles[i].index(restriction) + 1)
            members = [pv[i][chosen[i] - 1] for i in range(r)]
            for i in range(r):
                for j in range(i + 1, r):
                    members.append(uv[(i, chosen[i], j, chosen[j])])
            members.extend(gpv.values())
            witness = vertex_set(graph, members)
            _check_witness(graph, witness, d, target)
    params: dict[str, object] = {
        "c": 8,
        "groups": r,
        "capacity": cap,
        "d": d,
        "padded_vars": nv,
        "original_vars": phi.num_vars,
        "clauses": len(clauses),
        "profile_counts": tuple(len(s) for s in profiles),
        "pair_verifiers": len(uv),
        "assignment_accepted": accepted,
    }
    return GadgetOutput(
        graph, d, target, witness, certificate, "feedback-vertex-set", params, tuple(b.names)
    )
