"""Structural analyses of derived graphs.

Path reduction to vee shape, downward coverage, finite separators for
incomparable pairs, Menger-style pair connectivity, special cycles, complete
bipartite-with-apexes patterns, exact chromatic number at desk scale, and
the defeater construction that trades palette size against rung height.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidArgumentError,
    InvalidPathError,
    PreconditionError,
    ResourceLimitError,
)
from .graphs import LadderGraph, TreeGraph, covering_path, min_cover_label
from .ladder import is_coherent, is_transitive
from .tree import Tree

CHROMATIC_BUDGET = 200


# -- colorings ---------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """Total node coloring with an explicit palette size."""

    colors: tuple[int, ...]
    palette: int

    def validate(self, tree: Tree) -> "Coloring":
        if len(self.colors) != tree.n:
            raise InvalidArgumentError("coloring must assign a color to every node")
        if any(not isinstance(c, int) or not 0 <= c < self.palette for c in self.colors):
            raise InvalidArgumentError("colors must lie inside the palette")
        return self

    def of(self, v: int) -> int:
        return self.colors[v]

    def is_proper(self, graph: TreeGraph) -> bool:
        return all(self.colors[a] != self.colors[b] for a, b in graph.edge_set)


def constant_coloring(tree: Tree, color: int = 0, palette: int = 1) -> Coloring:
    return Coloring((color,) * tree.n, palette)


# -- path machinery ----------------------------------------------------------


def validate_path(graph: TreeGraph, path: Sequence[int]) -> list[int]:
    """A path is a nonempty list of distinct vertices joined by edges."""
    p = [graph.tree.check_node(v) for v in path]
    if not p:
        raise InvalidPathError("empty vertex list")
    if len(set(p)) != len(p):
        raise InvalidPathError("path repeats a vertex")
    for a, b in zip(p, p[1:]):
        if not graph.has_edge(a, b):
            raise InvalidPathError(f"missing edge ({a}, {b})")
    return p


def is_vee(tree: Tree, path: Sequence[int]) -> bool:
    """Strictly descending run followed by a strictly ascending run.

    Either run may be empty; every consecutive pair must be comparable.
    """
    if not path or len(set(path)) != len(path):
        return False
    dirs = []
    for a, b in zip(path, path[1:]):
        if tree.lt(b, a):
            dirs.append(-1)
        elif tree.lt(a, b):
            dirs.append(+1)
        else:
            return False
    return all(d <= e for d, e in zip(dirs, dirs[1:]))


def _cached_transitive(graph: LadderGraph) -> bool:
    if "transitive" not in graph._cache:
        ok, _ = is_transitive(graph.tree, graph.system)
        graph._cache["transitive"] = ok
    return graph._cache["transitive"]


def _cached_coherent(graph: LadderGraph) -> bool:
    if "coherent" not in graph._cache:
        ok, _ = is_coherent(graph.tree, graph.system)
        graph._cache["coherent"] = ok
    return graph._cache["coherent"]


def reduce_path(graph: LadderGraph, path: Sequence[int]) -> list[int]:
    """Shortest path between the endpoints using only the given vertices.

    In a transitive system the result is vee-shaped: a shortest path cannot
    have an interior local maximum, since the two neighbors of such a vertex
    sit on its rung chain and the lower one shortcuts to the higher.  Ties
    break deterministically toward canonical-least predecessors.
    """
    if not _cached_transitive(graph):
        raise PreconditionError("reduce_path needs a transitive system")
    p = validate_path(graph, path)
    s, t = p[0], p[-1]
    if s == t:
        return [s]
    allowed = set(p)
    tree = graph.tree
    order = sorted(allowed, key=tree.canonical_key)
    dist = {s: 0}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in sorted(graph.adj[v] & allowed, key=tree.canonical_key):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    out = [t]
    while out[-1] != s:
        v = out[-1]
        prev = min(
            (u for u in graph.adj[v] & allowed if dist.get(u, -1) == dist[v] - 1),
            key=tree.canonical_key,
        )
        out.append(prev)
    out.reverse()
    return out


def gamma_covered(graph: TreeGraph, v: int, gamma: int):
    """Whether a monotone path from label <= gamma reaches v; witness included."""
    graph.tree.check_node(v)
    ok = min_cover_label(graph, v) <= gamma
    return ok, (covering_path(graph, v, gamma) if ok else None)


# -- separation --------------------------------------------------------------


def separates(graph: TreeGraph, blocker: Iterable[int], s: int, t: int) -> bool:
    """True iff removing the blocker set disconnects s from t."""
    F = {graph.tree.check_node(v) for v in blocker}
    graph.tree.check_node(s)
    graph.tree.check_node(t)
    if s == t or s in F or t in F:
        raise InvalidArgumentError("endpoints must be distinct and outside the blocker")
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in graph.adj[v]:
            if w in F or w in seen:
                continue
            if w == t:
                return False
            seen.add(w)
            queue.append(w)
    return True


def separator(graph: LadderGraph, t: int, t2: int) -> tuple[int, ...]:
    """Finite blocker for an incomparable pair in a transitive coherent system.

    For ordinary t the whole rung works.  For supp-flagged t, cut the rung
    strictly below the branch point one step above the least eta_t member
    lying strictly above meet(t, t2); when eta_t has no such member (a
    finite-scale possibility the cofinal picture rules out) the whole rung
    is the fallback.  Size never exceeds the rung.
    """
    tree = graph.tree
    tree.check_node(t)
    tree.check_node(t2)
    if tree.comparable(t, t2):
        raise InvalidArgumentError("separator wants an incomparable pair")
    if not _cached_transitive(graph):
        raise PreconditionError("separator needs a transitive system")
    if not _cached_coherent(graph):
        raise PreconditionError("separator needs a coherent system")
    system = graph.system
    rung = system.rung(t)
    if t not in system.supp:
        return rung
    m = tree.meet(t, t2)
    eta_rung = system.eta.rung(t) if system.eta is not None else (t,)
    above = [u for u in eta_rung if tree.lt(m, u) and tree.lt(u, t)]
    if not above:
        return rung
    u = min(above, key=tree.depth.__getitem__)
    r = tree.ancestors(t)[tree.depth[u] + 1]
    return tuple(c for c in rung if tree.lt(c, r))


# -- connectivity ------------------------------------------------------------


def _max_flow(n_nodes, arcs, source, sink):
    """Integer max flow by BFS augmentation; arcs as (u, v, cap)."""
    cap = {}
    adj = [[] for _ in range(n_nodes)]
    for u, v, c in arcs:
        if (u, v) not in cap:
            adj[u].append(v)
            adj[v].append(u)
            cap[(u, v)] = 0
            cap[(v, u)] = cap.get((v, u), 0)
        cap[(u, v)] += c
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and cap.get((x, y), 0) > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            return flow, cap
        y = sink
        while parent[y] is not None:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1


def pair_connectivity(graph: TreeGraph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s-t paths.

    Equals the least vertex blocker size when s and t are not adjacent; an
    edge between them contributes exactly one extra path (standard
    vertex-split flow convention).
    """
    graph.tree.check_node(s)
    graph.tree.check_node(t)
    if s == t:
        raise InvalidArgumentError("pair_connectivity wants two distinct nodes")
    n = graph.n
    v_in = lambda v: 2 * v
    v_out = lambda v: 2 * v + 1
    big = graph.edge_count() + 1
    arcs = [(v_in(v), v_out(v), big if v in (s, t) else 1) for v in range(n)]
    for a, b in graph.edge_set:
        arcs.append((v_out(a), v_in(b), 1))
        arcs.append((v_out(b), v_in(a), 1))
    flow, _ = _max_flow(2 * n, arcs, v_out(s), v_in(t))
    return flow


def min_pair_connectivity_over(graph: TreeGraph, A: Iterable[int]):
    """Least pair connectivity over distinct pairs from A, with its pair."""
    tree = graph.tree
    members = sorted({tree.check_node(v) for v in A}, key=tree.canonical_key)
    if len(members) < 2:
        raise InvalidArgumentError("need at least two nodes")
    best = None
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            k = pair_connectivity(graph, a, b)
            if best is None or k < best[0]:
                best = (k, (a, b))
    return best


# -- cycles and patterns -----------------------------------------------------


@dataclass(frozen=True)
class SpecialCycle:
    """Cycle that is the union of two monotone paths sharing both endpoints."""

    bottom: int
    top: int
    arc_a: tuple[int, ...]
    arc_b: tuple[int, ...]

    def cycle(self) -> list[int]:
        return list(self.arc_a) + list(reversed(self.arc_b))[1:-1]


def _monotone_paths(graph: TreeGraph, chain: Sequence[int]) -> list[tuple[int, ...]]:
    """All strictly ascending paths from chain[0] to chain[-1] inside chain."""
    top = chain[-1]
    pos = {v: i for i, v in enumerate(chain)}
    out = []
    stack = [(chain[0],)]
    while stack:
        p = stack.pop()
        v = p[-1]
        if v == top:
            out.append(p)
            continue
        for w in sorted((u for u in graph.adj[v] if u in pos), key=pos.__getitem__, reverse=True):
            if pos[w] > pos[v]:
                stack.append(p + (w,))
    out.sort()
    return out


def find_special_cycle(graph: TreeGraph) -> Optional[SpecialCycle]:
    """First special cycle in canonical order of (top, bottom), if any.

    A special cycle decomposes at its unique top and bottom into two
    internally disjoint monotone arcs, so it is found by seeking two such
    arcs inside the branch interval of a comparable pair.
    """
    tree = graph.tree
    for top in sorted(range(graph.n), key=tree.canonical_key):
        if len(graph.down_neighbors(top)) < 2:
            continue
        branch = tree.ancestors(top)
        for bottom in branch[:-1]:
            chain = branch[tree.depth[bottom]:]
            paths = _monotone_paths(graph, chain)
            for i, pa in enumerate(paths):
                inner_a = set(pa[1:-1])
                for pb in paths[i + 1:]:
                    if inner_a.isdisjoint(pb[1:-1]):
                        return SpecialCycle(bottom, top, pa, pb)
    return None


def find_triangle(graph: TreeGraph) -> Optional[tuple[int, int, int]]:
    """Canonically first triangle, if any."""
    tree = graph.tree
    rank = {v: i for i, v in enumerate(sorted(range(graph.n), key=tree.canonical_key))}
    for a, b in sorted(graph.edge_set, key=lambda e: (rank[e[0]], rank[e[1]])):
        common = graph.adj[a] & graph.adj[b]
        if common:
            c = min(common, key=tree.canonical_key)
            return tuple(sorted((a, b, c), key=tree.canonical_key))
    return None


@dataclass(frozen=True)
class HEmbedding:
    """Vertices realizing the two-sided pattern with a pair of apexes.

    xs[i] is adjacent to ys[j] for i <= j, and both apexes see every xs[i].
    """

    xs: tuple[int, ...]
    ys: tuple[int, ...]
    z: int
    z2: int

    def vertices(self) -> tuple[int, ...]:
        return self.xs + self.ys + (self.z, self.z2)


def h_pattern_edges(m: int) -> list[tuple[int, int]]:
    """Index pairs of the pattern on 2m+2 vertices: x 0..m-1, y m..2m-1, apexes last."""
    edges = [(i, m + j) for i in range(m) for j in range(i, m)]
    edges += [(i, 2 * m) for i in range(m)]
    edges += [(i, 2 * m + 1) for i in range(m)]
    return edges


def find_h_pattern(graph: TreeGraph, m: int) -> Optional[HEmbedding]:
    """Search for a (not necessarily induced) embedding of the pattern.

    Backtracks over the x side first, preferring candidates comparable with
    the previous picks (embeddings in derived graphs tend to put the x side
    on one branch), then assigns the y column and the two apexes from the
    shared neighborhoods.
    """
    if m < 1:
        raise InvalidArgumentError("pattern needs m >= 1")
    tree = graph.tree
    order = sorted(range(graph.n), key=tree.canonical_key)
    rank = {v: i for i, v in enumerate(order)}

    def extend_x(xs: list[int], common: frozenset[int]):
        if len(xs) == m:
            return assign_y(xs, [], set(xs), common)
        need = (m - len(xs)) + 2
        cands = [v for v in order if v not in xs and len(graph.adj[v]) >= need]
        cands.sort(key=lambda v: (0 if all(tree.comparable(v, x) for x in xs) else 1, rank[v]))
        for v in cands:
            nxt = common & graph.adj[v] if xs else frozenset(graph.adj[v])
            # the deepest y and both apexes all live in the common neighborhood
            if len(nxt) >= 3:
                hit = extend_x(xs + [v], frozenset(nxt))
                if hit:
                    return hit
        return None

    def assign_y(xs, ys, used, common_all):
        j = len(ys)
        if j == m:
            pool = sorted((v for v in common_all if v not in used), key=rank.get)
            if len(pool) >= 2:
                return HEmbedding(tuple(xs), tuple(ys), pool[0], pool[1])
            return None
        cand = set(graph.adj[xs[0]])
        for i in range(1, j + 1):
            cand &= graph.adj[xs[i]]
        for v in sorted(cand, key=rank.get):
            if v in used:
                continue
            if len(common_all - used - {v}) < 2:
                continue
            hit = assign_y(xs, ys + [v], used | {v}, common_all)
            if hit:
                return hit
        return None

    return extend_x([], frozenset())


# -- cliques and chromatic number -------------------------------------------


def maximal_cliques(graph: TreeGraph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), canonically sorted."""
    tree = graph.tree
    out = []

    def walk(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R, key=tree.canonical_key)))
            return
        pivot = max(P | X, key=lambda v: len(graph.adj[v] & P))
        for v in sorted(P - graph.adj[pivot]):
            walk(R | {v}, P & graph.adj[v], X & graph.adj[v])
            P = P - {v}
            X = X | {v}

    walk(frozenset(), frozenset(range(graph.n)), frozenset())
    out.sort(key=lambda K: tuple(tree.canonical_key(v) for v in K))
    return out


def clique_chain_check(graph: LadderGraph):
    """Every maximal clique is a chain sitting inside the rung of its top.

    Returns (ok, witness); the witness names the clique and what failed.
    In particular the clique number is at most the largest rung plus one.
    """
    tree = graph.tree
    rung_of = graph.system.rung
    for K in maximal_cliques(graph):
        if len(K) < 2:
            continue
        chain = sorted(K, key=tree.depth.__getitem__)
        for a, b in zip(chain, chain[1:]):
            if not tree.comparable(a, b):
                return False, {"clique": list(K), "reason": "not a chain", "pair": [a, b]}
        top = chain[-1]
        rest = set(chain[:-1])
        if not rest <= set(rung_of(top)):
            return False, {
                "clique": list(K),
                "reason": "members outside the top rung",
                "top": top,
                "missing": sorted(rest - set(rung_of(top))),
            }
    return True, None


def _greedy_clique(graph: TreeGraph) -> list[int]:
    verts = sorted(range(graph.n), key=lambda v: -len(graph.adj[v]))
    best: list[int] = []
    for v in verts[:50]:
        K = [v]
        cand = set(graph.adj[v])
        while cand:
            w = max(cand, key=lambda u: len(graph.adj[u] & cand))
            K.append(w)
            cand &= graph.adj[w]
        if len(K) > len(best):
            best = K
    return best


def _dsatur(graph: TreeGraph) -> list[int]:
    n = graph.n
    color = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (len(sat[u]), len(graph.adj[u]), -u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        for w in graph.adj[v]:
            sat[w].add(c)
    return color

def _colorable(graph: TreeGraph, k: int) -> bool:
    """Exact k-colorability by saturation-guided backtracking."""
    n = graph.n
    if n == 0 or k >= n:
        return True
    color = [-1] * n
    domains = [set(range(k)) for _ in range(n)]

    def pick():
        live = [v for v in range(n) if color[v] < 0]
        if not live:
            return None
        return min(live, key=lambda v: (len(domains[v]), -len(graph.adj[v])))

    def assign(v, c, trail):
        color[v] = c
        for w in graph.adj[v]:
            if color[w] < 0 and c in domains[w]:
                domains[w].discard(c)
                trail.append(w)
                if not domains[w]:
                    return False
        return True

    def undo(v, c, trail):
        color[v] = -1
        for w in trail:
            domains[w].add(c)

    used = [0]

    def bt():
        v = pick()
        if v is None:
            return True
        cap = min(k, used[0] + 1)
        for c in sorted(domains[v]):
            if c >= cap:
                break
            trail: list[int] = []
            bumped = c == used[0]
            if assign(v, c, trail):
                if bumped:
                    used[0] += 1
                if bt():
                    return True
                if bumped:
                    used[0] -= 1
            undo(v, c, trail)
        return False

    return bt()


def chromatic_number(graph: TreeGraph, budget: int = CHROMATIC_BUDGET) -> int:
    """Exact chromatic number for graphs up to the vertex budget.

    Clique lower bound, saturation-greedy upper bound, then exact
    k-colorability between them.  Beyond the budget the refusal carries the
    bounds computed so far.
    """
    lb = max(1, len(_greedy_clique(graph))) if graph.n else 0
    if graph.n == 0:
        return 0
    ub = max(_dsatur(graph)) + 1
    if graph.n > budget:
        raise ResourceLimitError(
            f"exact coloring refused beyond {budget} vertices", lower=lb, upper=ub
        )
    for k in range(lb, ub):
        if _colorable(graph, k):
            return k
    return ub


# -- defeater ----------------------------------------------------------------


@dataclass(frozen=True)
class DefeaterColoring:
    """Refined coloring (f(t), rank within same-colored rung ancestry)."""

    coloring: Coloring
    g1: tuple[int, ...]
    height: int


def defeater_coloring(graph: LadderGraph, f: Coloring) -> DefeaterColoring:
    """Pair f with the recursion g1(t) = 1 + max g1 over C_t members of f's color.

    The empty maximum is -1, so fresh colors start at rank 0.  The paired
    coloring is proper on the derived graph and is returned flattened over a
    palette of size palette(f) * (height + 1).
    """
    if not _cached_transitive(graph):
        raise PreconditionError("defeater_coloring needs a transitive system")
    tree = graph.tree
    f.validate(tree)
    g1 = [0] * tree.n
    for t in sorted(range(tree.n), key=tree.canonical_key):
        same = [g1[s] for s in graph.system.rung(t) if f.of(s) == f.of(t)]
        g1[t] = max(same) + 1 if same else 0
    height = max(g1) if g1 else 0
    width = height + 1
    colors = tuple(f.of(t) * width + g1[t] for t in range(tree.n))
    return DefeaterColoring(Coloring(colors, f.palette * width), tuple(g1), height)


def find_mono_clique(graph: LadderGraph, f: Coloring):
    """Largest one-colored clique of the form rung-members plus their top.

    Returns (t, members) maximizing the member count (>= 1), canonical-least
    top on ties; None when every rung misses its top's color.
    """
    tree = graph.tree
    f.validate(tree)
    best = None
    for t in sorted(range(tree.n), key=tree.canonical_key):
        pool = [s for s in graph.system.rung(t) if f.of(s) == f.of(t)]
        if not pool:
            continue
        k, sub = _largest_clique_within(graph, pool)
        if k >= 1 and (best is None or k > best[0]):
            best = (k, t, sub)
    if best is None:
        return None
    return best[1], best[2]


def _largest_clique_within(graph: TreeGraph, pool: Sequence[int]):
    from itertools import combinations

    for size in range(len(pool), 0, -1):
        for sub in combinations(pool, size):
            if all(graph.has_edge(a, b) for i, a in enumerate(sub) for b in sub[i + 1:]):
                return size, tuple(sub)
    return 0, ()
