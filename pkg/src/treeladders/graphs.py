"""Graphs over tree nodes, plus downward-coverage primitives.

Both the comparability graph of a tree and the graph derived from a ladder
system have tree nodes as vertices, so they share one adjacency class that
keeps a reference to the tree.  Edges always join comparable nodes in the
intended constructions, but nothing here assumes it.
"""

from __future__ import annotations

from typing import Iterable

from .tree import Tree


class TreeGraph:
    """Undirected graph on the nodes of a fixed tree."""

    def __init__(self, tree: Tree, edges: Iterable[tuple[int, int]]):
        self.tree = tree
        adj: list[set[int]] = [set() for _ in range(tree.n)]
        eset = set()
        for a, b in edges:
            tree.check_node(a)
            tree.check_node(b)
            if a == b:
                continue
            adj[a].add(b)
            adj[b].add(a)
            eset.add((min(a, b), max(a, b)))
        self.adj = tuple(frozenset(s) for s in adj)
        self.edge_set = frozenset(eset)
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.tree.n

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edge_set

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_set)

    def edge_count(self) -> int:
        return len(self.edge_set)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def down_neighbors(self, v: int) -> list[int]:
        """Adjacent strict ancestors of v, ascending along the branch."""
        t = self.tree
        return sorted((u for u in self.adj[v] if t.lt(u, v)), key=t.depth.__getitem__)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={len(self.edge_set)})"


class LadderGraph(TreeGraph):
    """Derived graph of a ladder system, with edge provenance.

    provenance maps each edge (as an ordered id pair) to (t, i): the edge
    came from rung member number i of C_t.
    """

    def __init__(self, tree: Tree, system, edges, provenance):
        super().__init__(tree, edges)
        self.system = system
        self.provenance = dict(provenance)


def comparability_graph(tree: Tree) -> TreeGraph:
    """Graph joining every comparable pair of tree nodes."""
    edges = []
    for t in range(tree.n):
        for s in tree.strict_ancestors(t):
            edges.append((s, t))
    return TreeGraph(tree, edges)


# -- downward coverage -------------------------------------------------------
#
# A node v is gamma-covered when some monotone increasing path in the graph
# starts at a node of label <= gamma and ends at v; the zero-edge path makes
# v cover itself exactly when its own label is <= gamma.  Because labels
# strictly increase up the tree, a path descending through down-neighbors is
# automatically a chain, so coverage reduces to the least label reachable
# from v by descending edges.


def min_cover_label(graph: TreeGraph, v: int) -> int:
    """Least label from which v is reachable by a monotone increasing path.

    Equals the node's own label key when no edge descends from it; the
    root's bottom label counts as -1.
    """
    memo = graph._cache.setdefault("mincov", {})
    tree = graph.tree
    # iterative DFS over the descending DAG
    stack = [v]
    while stack:
        u = stack[-1]
        if u in memo:
            stack.pop()
            continue
        downs = graph.down_neighbors(u)
        missing = [w for w in downs if w not in memo]
        if missing:
            stack.extend(missing)
            continue
        best = tree.label_key(u)
        for w in downs:
            if memo[w] < best:
                best = memo[w]
        memo[u] = best
        stack.pop()
    return memo[v]


def covered(graph: TreeGraph, v: int, gamma: int) -> bool:
    return min_cover_label(graph, v) <= gamma


def covering_path(graph: TreeGraph, v: int, gamma: int) -> list[int] | None:
    """A monotone increasing witness path w .. v with label(w) <= gamma.

    Deterministic: at each step the canonical-least viable down-neighbor is
    taken.  None when v is not gamma-covered.
    """
    if not covered(graph, v, gamma):
        return None
    tree = graph.tree
    path = [v]
    cur = v
    while tree.label_key(cur) > gamma:
        step = min(
            (u for u in graph.down_neighbors(cur) if min_cover_label(graph, u) <= gamma),
            key=tree.canonical_key,
        )
        path.append(step)
        cur = step
    path.reverse()
    return path
