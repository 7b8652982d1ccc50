"""Tree decompositions: validation, construction, nice form, balancing.

A decomposition node is identified by its index into `bags`.  Nice
decompositions are rooted binary trees of typed nodes (leaf / introduce /
forget / join) whose root bag is empty, so dynamic programs read their
answer from a single root entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph_core import WeightedGraph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]
    root: int = 0

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def node_count(self) -> int:
        return len(self.bags)


@dataclass(frozen=True)
class Violation:
    """First failed decomposition property, with witnesses."""

    kind: str  # "structure" | "vertex-coverage" | "edge-coverage" | "connectivity"
    message: str
    witness: tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: tuple[int, ...]
    children: tuple[int, ...]
    vertex: int | None = None  # the vertex added (introduce) or removed (forget)


@dataclass(frozen=True)
class NiceDecomposition:
    nodes: tuple[NiceNode, ...]
    root: int

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1


def _adjacency(num_nodes: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(num_nodes)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _check_tree(td: TreeDecomposition) -> Violation | None:
    n = len(td.bags)
    if n == 0:
        return Violation("structure", "decomposition has no nodes")
    if not (0 <= td.root < n):
        return Violation("structure", f"root {td.root} out of range")
    if len(td.tree_edges) != n - 1:
        return Violation(
            "structure", f"{len(td.tree_edges)} edges for {n} nodes, want {n - 1}"
        )
    for a, b in td.tree_edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            return Violation("structure", f"bad tree edge ({a},{b})", (a, b))
    adj = _adjacency(n, td.tree_edges)
    seen = [False] * n
    stack = [td.root]
    seen[td.root] = True
    reached = 0
    while stack:
        u = stack.pop()
        reached += 1
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    if reached != n:
        return Violation("structure", "decomposition tree is not connected")
    return None


def validate_decomposition(g: WeightedGraph, td: TreeDecomposition) -> Violation | None:
    """Check tree shape plus the three decomposition properties.

    Returns None when valid, otherwise the first violation found.
    """
    bad = _check_tree(td)
    if bad is not None:
        return bad
    covered = set()
    for bag in td.bags:
        for v in bag:
            if not (0 <= v < g.n):
                return Violation("structure", f"bag vertex {v} out of range", (v,))
        covered.update(bag)
    for v in range(g.n):
        if v not in covered:
            return Violation("vertex-coverage", f"vertex {v} in no bag", (v,))
    bag_sets = [set(b) for b in td.bags]
    for u, v, _ in g.edges:
        if not any(u in bs and v in bs for bs in bag_sets):
            return Violation("edge-coverage", f"edge ({u},{v}) in no bag", (u, v))
    adj = _adjacency(len(td.bags), td.tree_edges)
    for v in range(g.n):
        holders = [i for i, bs in enumerate(bag_sets) if v in bs]
        if len(holders) <= 1:
            continue
        holder_set = set(holders)
        stack = [holders[0]]
        seen = {holders[0]}
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in holder_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(holders):
            return Violation(
                "connectivity",
                f"bags containing vertex {v} are not connected in the tree",
                (v,),
            )
    return None


def heuristic_decomposition(g: WeightedGraph) -> TreeDecomposition:
    """Min-fill elimination ordering; ties broken by lowest vertex id.

    The bag of an eliminated vertex is the vertex plus its current
    neighborhood; each bag attaches to the bag of its earliest-eliminated
    surviving neighbor, which yields a valid decomposition.
    """
    n = g.n
    work: list[set[int]] = [set() for _ in range(n)]
    for u, v, _ in g.edges:
        work[u].add(v)
        work[v].add(u)
    alive = set(range(n))
    order: list[int] = []
    position = [0] * n
    elim_bags: list[tuple[int, ...]] = []
    for step in range(n):
        best_v = -1
        best_fill = -1
        for v in sorted(alive):
            nb = [u for u in work[v] if u in alive]
            fill = 0
            for i in range(len(nb)):
                for j in range(i + 1, len(nb)):
                    if nb[j] not in work[nb[i]]:
                        fill += 1
            if best_fill < 0 or fill < best_fill:
                best_fill = fill
                best_v = v
        nb = sorted(u for u in work[best_v] if u in alive)
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                work[nb[i]].add(nb[j])
                work[nb[j]].add(nb[i])
        alive.remove(best_v)
        order.append(best_v)
        position[best_v] = step
        elim_bags.append(tuple(sorted([best_v] + nb)))
    edges: list[tuple[int, int]] = []
    for step, v in enumerate(order):
        later = [u for u in elim_bags[step] if u != v]
        if later:
            parent = min(later, key=lambda u: position[u])
            edges.append((step, position[parent]))
        elif step + 1 < n:
            # isolated remainder: chain to the next eliminated node
            edges.append((step, step + 1))
    return TreeDecomposition(bags=tuple(elim_bags), tree_edges=tuple(edges), root=n - 1)


def _rooted_children(td: TreeDecomposition) -> list[list[int]]:
    adj = _adjacency(len(td.bags), td.tree_edges)
    children: list[list[int]] = [[] for _ in td.bags]
    seen = [False] * len(td.bags)
    seen[td.root] = True
    stack = [td.root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                children[u].append(v)
                stack.append(v)
    return children


def make_nice(td: TreeDecomposition) -> NiceDecomposition:
    """Convert to a nice decomposition of identical width, empty root bag.

    Each original bag appears verbatim as some nice node's bag; between
    original bags the chains forget then introduce one vertex at a time in
    sorted order, and multi-child nodes become cascades of join nodes.
    """
    bad = _check_tree(td)
    if bad is not None:
        raise ValueError(f"invalid decomposition: {bad.message}")
    children = _rooted_children(td)

    # Drop empty-bag leaves; they contribute nothing to a nice form.
    alive = set(range(len(td.bags)))
    changed = True
    while changed:
        changed = False
        for u in sorted(alive):
            kids = [c for c in children[u] if c in alive]
            if not kids and not td.bags[u] and len(alive) > 1 and u != td.root:
                alive.remove(u)
                changed = True
    if all(not td.bags[u] for u in alive):
        raise ValueError("decomposition has no nonempty bags")

    nodes: list[NiceNode] = []

    def emit(kind: str, bag: Iterable[int], kids: tuple[int, ...], vertex: int | None = None) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), kids, vertex))
        return len(nodes) - 1

    def lift(top: int, from_bag: tuple[int, ...], to_bag: tuple[int, ...]) -> int:
        cur = set(from_bag)
        for v in sorted(set(from_bag) - set(to_bag)):
            cur.remove(v)
            top = emit("forget", cur, (top,), v)
        for v in sorted(set(to_bag) - set(from_bag)):
            cur.add(v)
            top = emit("introduce", cur, (top,), v)
        return top

    def leaf_chain(bag: tuple[int, ...]) -> int:
        vs = sorted(bag)
        top = emit("leaf", (vs[0],), ())
        cur = {vs[0]}
        for v in vs[1:]:
            cur.add(v)
            top = emit("introduce", cur, (top,), v)
        return top

    # Post-order over the pruned tree.
    post: list[int] = []
    stack: list[tuple[int, bool]] = [(td.root, False)]
    while stack:
        u, done = stack.pop()
        if u not in alive:
            continue
        if done:
            post.append(u)
        else:
            stack.append((u, True))
            for c in children[u]:
                stack.append((c, False))
    top_of: dict[int, int] = {}
    for u in post:
        kids = [c for c in children[u] if c in alive]
        bag_u = td.bags[u]
        if not kids:
            top_of[u] = leaf_chain(bag_u)
            continue
        lifted = [lift(top_of[c], td.bags[c], bag_u) for c in kids]
        acc = lifted[0]
        for other in lifted[1:]:
            acc = emit("join", bag_u, (acc, other))
        top_of[u] = acc
    top = top_of[td.root]
    cur = set(td.bags[td.root])
    for v in sorted(cur):
        cur.remove(v)
        top = emit("forget", cur.copy(), (top,), v)
    return NiceDecomposition(nodes=tuple(nodes), root=top)


def nice_to_tree(nd: NiceDecomposition) -> TreeDecomposition:
    """View a nice decomposition as a plain TreeDecomposition."""
    edges = []
    for i, node in enumerate(nd.nodes):
        for c in node.children:
            edges.append((i, c))
    return TreeDecomposition(
        bags=tuple(node.bag for node in nd.nodes),
        tree_edges=tuple(edges),
        root=nd.root,
    )


def validate_nice(nd: NiceDecomposition) -> str | None:
    """Structural nice-form checks; returns a message or None."""
    for i, node in enumerate(nd.nodes):
        kids = node.children
        if node.kind == "leaf":
            if kids or len(node.bag) != 1:
                return f"node {i}: leaf must have no children and a size-1 bag"
        elif node.kind in ("introduce", "forget"):
            if len(kids) != 1:
                return f"node {i}: {node.kind} needs exactly one child"
            child = set(nd.nodes[kids[0]].bag)
            own = set(node.bag)
            if node.kind == "introduce":
                if node.vertex is None or own != child | {node.vertex} or node.vertex in child:
                    return f"node {i}: introduce bag mismatch"
            else:
                if node.vertex is None or child != own | {node.vertex} or node.vertex in own:
                    return f"node {i}: forget bag mismatch"
        elif node.kind == "join":
            if len(kids) != 2:
                return f"node {i}: join needs two children"
            if any(nd.nodes[c].bag != node.bag for c in kids):
                return f"node {i}: join children bags differ from own bag"
        else:
            return f"node {i}: unknown kind {node.kind!r}"
    if nd.nodes[nd.root].bag != ():
        return "root bag is not empty"
    return None


def decomposition_depth(td: TreeDecomposition) -> int:
    """Edges on the longest root-to-leaf path."""
    children = _rooted_children(td)
    depth = 0
    stack = [(td.root, 0)]
    while stack:
        u, h = stack.pop()
        depth = max(depth, h)
        for c in children[u]:
            stack.append((c, h + 1))
    return depth


def nice_depth(nd: NiceDecomposition) -> int:
    return decomposition_depth(nice_to_tree(nd))


def max_introduce_depth(nd: NiceDecomposition) -> int:
    """Largest number of introduce nodes on any root-to-leaf path."""
    best = 0
    stack = [(nd.root, 0)]
    while stack:
        i, acc = stack.pop()
        node = nd.nodes[i]
        if node.kind == "introduce":
            acc += 1
        if not node.children:
            best = max(best, acc)
        for c in node.children:
            stack.append((c, acc))
    return best


def _compress(td: TreeDecomposition) -> tuple[list[set[int]], list[set[int]]]:
    """Contract edges whose one bag is a subset of the other.

    Returns (bags, adjacency) of the contracted tree.
    """
    n = len(td.bags)
    bags = [set(b) for b in td.bags]
    adj = [set() for _ in range(n)]
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        for u in sorted(alive):
            if u not in alive:
                continue
            for v in sorted(adj[u]):
                if bags[u] <= bags[v] or bags[v] <= bags[u]:
                    # merge u into v (keep the superset bag on v)
                    if bags[v] <= bags[u]:
                        bags[v] = bags[u]
                    adj[v].discard(u)
                    for w in adj[u]:
                        if w != v:
                            adj[w].discard(u)
                            adj[w].add(v)
                            adj[v].add(w)
                    adj[u] = set()
                    alive.remove(u)
                    changed = True
                    break
    index = {u: i for i, u in enumerate(sorted(alive))}
    new_bags = [bags[u] for u in sorted(alive)]
    new_adj: list[set[int]] = [set() for _ in alive]
    for u in sorted(alive):
        for v in adj[u]:
            new_adj[index[u]].add(index[v])
    return new_bags, new_adj


def balance(td: TreeDecomposition, g: WeightedGraph) -> TreeDecomposition:
    """Rooted binary decomposition with width <= 3w+2 and logarithmic depth.

    Recursive splitting of the (subset-contracted) decomposition tree: each
    piece keeps at most two portal nodes whose bags are merged into the
    piece's emitted bag, so every emitted bag unions at most three original
    bags.  Both the width bound and the depth bound
    4*ceil(log2(n+1)) + 4 are checked on the result and a violation raises.
    """
    bad = validate_decomposition(g, td)
    if bad is not None:
        raise ValueError(f"invalid decomposition: {bad.message}")
    width = td.width
    bags, adj = _compress(td)
    total_nodes = len(bags)

    out_bags: list[tuple[int, ...]] = []
    out_children: list[list[int]] = []

    def emit(bag: set[int], children: list[int]) -> int:
        out_bags.append(tuple(sorted(bag)))
        out_children.append(children)
        return len(out_bags) - 1

    def components(piece: frozenset[int], removed: int) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for start in sorted(piece):
            if start == removed or start in seen:
                continue
            comp = {start}
            seen.add(start)
            stack = [start]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if v in piece and v != removed and v not in seen:
                        seen.add(v)
                        comp.add(v)
                        stack.append(v)
            comps.append(frozenset(comp))
        return comps

    def centroid(piece: frozenset[int]) -> int:
        best = -1
        best_load = len(piece) + 1
        for cand in sorted(piece):
            load = max((len(c) for c in components(piece, cand)), default=0)
            if load < best_load:
                best_load = load
                best = cand
        return best

    def portal_path(piece: frozenset[int], a: int, b: int) -> list[int]:
        parent = {a: a}
        queue = [a]
        while queue:
            nxt: list[int] = []
            for u in queue:
                for v in sorted(adj[u]):
                    if v in piece and v not in parent:
                        parent[v] = u
                        nxt.append(v)
            queue = nxt
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def path_median(piece: frozenset[int], a: int, b: int) -> int:
        path = portal_path(piece, a, b)
        total = len(piece)
        body = []
        for idx, q in enumerate(path):
            # q itself plus everything hanging off q away from the path
            mass = 1
            for comp in components(piece, q):
                if idx > 0 and path[idx - 1] in comp:
                    continue
                if idx + 1 < len(path) and path[idx + 1] in comp:
                    continue
                mass += len(comp)
            body.append(mass)
        suffix = [0] * (len(path) + 1)
        for i in range(len(path) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + body[i]
        for i in range(len(path)):
            if 2 * suffix[i + 1] <= total:
                return path[i]
        return path[-1]

    def combine(bag: set[int], items: list[tuple[int, int]]) -> tuple[int, int]:
        """Weight-balanced binary merge; returns (emitted id, weight)."""
        if len(items) == 1:
            return items[0]
        total = sum(w for _, w in items)
        heavy = max(range(len(items)), key=lambda i: items[i][1])
        if 2 * items[heavy][1] > total:
            rest = items[:heavy] + items[heavy + 1 :]
            left = items[heavy]
            right = combine(bag, rest)
        else:
            acc = 0
            cut = 1
            for i, (_, w) in enumerate(items):
                acc += w
                if 2 * acc >= total:
                    cut = min(max(i + 1, 1), len(items) - 1)
                    break
            left = combine(bag, items[:cut])
            right = combine(bag, items[cut:])
        return emit(bag, [left[0], right[0]]), total

    def split(piece: frozenset[int], portals: tuple[int, ...]) -> int:
        if len(portals) >= 2:
            s = path_median(piece, portals[0], portals[1])
        elif len(piece) == 1:
            s = next(iter(piece))
        else:
            s = centroid(piece)
        merged = set(bags[s])
        for p in portals:
            merged |= bags[p]
        child_items: list[tuple[int, int]] = []
        for comp in sorted(components(piece, s), key=min):
            door = min(v for v in comp if s in adj[v])
            ports = sorted({p for p in portals if p in comp} | {door})
            if len(ports) > 2:
                raise RuntimeError("balance invariant breached: >2 portals")
            child_items.append((split(comp, tuple(ports)), len(comp)))
        if not child_items:
            return emit(merged, [])
        if len(child_items) == 1:
            return emit(merged, [child_items[0][0]])
        return combine(merged, child_items)[0]

    root = split(frozenset(range(total_nodes)), ())
    edges = []
    for i, kids in enumerate(out_children):
        for c in kids:
            edges.append((i, c))
    result = TreeDecomposition(bags=tuple(out_bags), tree_edges=tuple(edges), root=root)

    if any(len(kids) > 2 for kids in out_children):
        raise RuntimeError("balance produced a non-binary tree")
    if result.width > 3 * width + 2:
        raise RuntimeError(
            f"balance width {result.width} exceeds bound {3 * width + 2}"
        )
    depth_bound = 4 * (g.n).bit_length() + 4
    got_depth = decomposition_depth(result)
    if got_depth > depth_bound:
        raise RuntimeError(f"balance depth {got_depth} exceeds bound {depth_bound}")
    bad = validate_decomposition(g, result)
    if bad is not None:
        raise RuntimeError(f"balance output invalid: {bad.message}")
    return result


def parse_td(text: str) -> TreeDecomposition:
    """Parse the PACE-style .td format (1-based ids, 'c' comments)."""
    num_bags = -1
    bags: dict[int, tuple[int, ...]] = {}
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "s":
            if num_bags >= 0:
                raise ValueError(f"line {line_no}: duplicate solution line")
            if len(fields) != 5 or fields[1] != "td":
                raise ValueError(f"line {line_no}: malformed 's td' line")
            num_bags = int(fields[2])
        elif fields[0] == "b":
            idx = int(fields[1])
            bags[idx] = tuple(sorted(int(x) - 1 for x in fields[2:]))
        else:
            a, b = int(fields[0]), int(fields[1])
            edges.append((a - 1, b - 1))
            edge_lines.append(line_no)
    if num_bags < 0:
        raise ValueError("missing 's td' line")
    if set(bags) != set(range(1, num_bags + 1)):
        raise ValueError("bag ids must be 1..num_bags exactly")
    for (a, b), line_no in zip(edges, edge_lines):
        if not (0 <= a < num_bags and 0 <= b < num_bags):
            raise ValueError(
                f"line {line_no}: tree edge ({a + 1},{b + 1}) references a missing bag"
            )
    ordered = tuple(bags[i] for i in range(1, num_bags + 1))
    return TreeDecomposition(bags=ordered, tree_edges=tuple(edges), root=0)


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append("b " + " ".join([str(i)] + [str(v + 1) for v in bag]))
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
