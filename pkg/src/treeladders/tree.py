"""Finite labeled trees ordered by end-extension.

A tree here is the desk-scale stand-in for a set-theoretic tree of closed
sets: nodes carry a strictly increasing natural-number label along every
edge, the root carries the bottom label (serialized as null), and the tree
order is the ancestor relation.  The canonical example is ``generate_ts_tree``,
whose nodes are exactly the strictly increasing sequences over a finite
ground set, ordered by initial segment.

Node identity is a dense integer index.  Canonical node order is
(depth, label, lexicographic label sequence); ``generate_ts_tree`` assigns
ids in that order, manually built trees may not, so comparisons should go
through ``canonical_key``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, InvalidTreeError

ROOT_KEY = -1  # sort stand-in for the root's bottom label


class Tree:
    """Rooted tree with strictly increasing labels along edges.

    parents[i] is the parent id of node i (None exactly for the root, which
    must be node 0); labels[i] is a natural number (None exactly for the
    root).  Instances are immutable by convention; growth happens through
    ``extend_leaf`` which returns a new tree.
    """

    def __init__(self, parents: Sequence[int | None], labels: Sequence[int | None]):
        if len(parents) != len(labels) or not parents:
            raise InvalidTreeError("parents and labels must be equal-length and nonempty")
        if parents[0] is not None or labels[0] is not None:
            raise InvalidTreeError("node 0 must be the root (parent null, label null)")
        n = len(parents)
        self.parents = tuple(parents)
        self.labels = tuple(labels)
        self.n = n
        depth = [0] * n
        children: list[list[int]] = [[] for _ in range(n)]
        for i in range(1, n):
            p = parents[i]
            if not isinstance(p, int) or not 0 <= p < n:
                raise InvalidTreeError(f"node {i}: bad parent {p!r}")
            if p >= i:
                raise InvalidTreeError(f"node {i}: parent {p} must precede its child")
            lab = labels[i]
            if not isinstance(lab, int) or lab < 0:
                raise InvalidTreeError(f"node {i}: label must be a natural number")
            plab = labels[p]
            if plab is not None and lab <= plab:
                raise InvalidTreeError(f"node {i}: label {lab} not above parent label {plab}")
            depth[i] = depth[p] + 1
            children[p].append(i)
        self.depth = tuple(depth)
        self.children = tuple(tuple(c) for c in children)
        # ancestor chain root..i inclusive, used for O(1) order queries
        anc: list[tuple[int, ...]] = [()] * n
        anc[0] = (0,)
        for i in range(1, n):
            anc[i] = anc[parents[i]] + (i,)
        self._anc = tuple(anc)
        self._seq = tuple(tuple(self.labels[j] for j in anc[i][1:]) for i in range(n))

    # -- basic accessors -------------------------------------------------

    def label_key(self, i: int) -> int:
        """Label usable in comparisons; the root's bottom label maps to -1."""
        lab = self.labels[i]
        return ROOT_KEY if lab is None else lab

    def seq(self, i: int) -> tuple[int, ...]:
        """Label sequence from the root down to node i (root excluded)."""
        return self._seq[i]

    def ancestors(self, i: int) -> tuple[int, ...]:
        """Chain of ids from the root to i, inclusive."""
        return self._anc[i]

    def strict_ancestors(self, i: int) -> tuple[int, ...]:
        return self._anc[i][:-1]

    def canonical_key(self, i: int):
        return (self.depth[i], self.label_key(i), self._seq[i])

    def order(self) -> list[int]:
        """All node ids in canonical order."""
        return sorted(range(self.n), key=self.canonical_key)

    def check_node(self, i) -> int:
        if not isinstance(i, int) or not 0 <= i < self.n:
            raise InvalidArgumentError(f"foreign node id {i!r}")
        return i

    # -- order queries ---------------------------------------------------

    def leq(self, s: int, t: int) -> bool:
        """True iff s is an ancestor of t or s == t."""
        if not 0 <= s < self.n or not 0 <= t < self.n:
            self.check_node(s)
            self.check_node(t)
        ds = self.depth[s]
        return ds <= self.depth[t] and self._anc[t][ds] == s

    def lt(self, s: int, t: int) -> bool:
        return s != t and self.leq(s, t)

    def comparable(self, s: int, t: int) -> bool:
        return self.leq(s, t) or self.leq(t, s)

    def meet(self, s: int, t: int) -> int:
        """Deepest common ancestor of s and t."""
        if not 0 <= s < self.n or not 0 <= t < self.n:
            self.check_node(s)
            self.check_node(t)
        a, b = self._anc[s], self._anc[t]
        m = 0
        for x, y in zip(a, b):
            if x != y:
                break
            m = x
        return m

    def prefix_cut(self, t: int, eps: int) -> int:
        """Deepest ancestor-or-self of t with label <= eps.

        The desk reading of intersecting a closed set with eps+1; lands on
        the root when eps is below every label on the branch.
        """
        cut = 0
        for j in self._anc[t]:
            if self.label_key(j) <= eps:
                cut = j
            else:
                break
        return cut

    def max_label(self) -> int:
        """Largest label present; the root-only tree reports -1."""
        return max((self.label_key(i) for i in range(self.n)), default=ROOT_KEY)

    # -- growth ----------------------------------------------------------

    def extend_leaf(self, parent: int, label: int) -> tuple["Tree", int]:
        """Return a new tree with one fresh leaf under ``parent``."""
        self.check_node(parent)
        return Tree(self.parents + (parent,), self.labels + (label,)), self.n

    # -- convenience -----------------------------------------------------

    def node_by_seq(self, seq: Sequence[int]) -> int:
        """Find the node whose root-to-node label sequence equals seq."""
        want = tuple(seq)
        for i in range(self.n):
            if self._seq[i] == want:
                return i
        raise InvalidArgumentError(f"no node with sequence {want}")

    def __repr__(self):
        return f"Tree(n={self.n}, depth<={max(self.depth)})"


def node_set(tree: Tree, ids: Iterable[int]) -> tuple[int, ...]:
    """Validated duplicate-free sorted node set over a fixed tree."""
    out = sorted({tree.check_node(i) for i in ids})
    return tuple(out)


def generate_ts_tree(S: Iterable[int], max_depth: int) -> Tree:
    """Tree of all strictly increasing sequences over S of length <= max_depth.

    Ordered by end-extension; ids are assigned in canonical order, so the
    root is node 0.  Node count is the binomial sum over lengths 0..max_depth.
    """
    ground = sorted(set(S))
    if not ground:
        raise InvalidArgumentError("ground set must be nonempty")
    if any(not isinstance(x, int) or x < 0 for x in ground):
        raise InvalidArgumentError("ground set must consist of natural numbers")
    if max_depth < 0:
        raise InvalidArgumentError("max_depth must be nonnegative")
    seqs: list[tuple[int, ...]] = [()]
    for k in range(1, max_depth + 1):
        seqs.extend(tuple(c) for c in combinations(ground, k))
    seqs.sort(key=lambda t: (len(t), t[-1] if t else ROOT_KEY, t))
    index = {s: i for i, s in enumerate(seqs)}
    parents: list[int | None] = [None]
    labels: list[int | None] = [None]
    for s in seqs[1:]:
        parents.append(index[s[:-1]])
        labels.append(s[-1])
    return Tree(parents, labels)


def level_set(tree: Tree, label: int) -> tuple[int, ...]:
    """All nodes carrying the given label."""
    return tuple(i for i in range(tree.n) if tree.labels[i] == label)


def below_set(tree: Tree, label: int) -> tuple[int, ...]:
    """All nodes with label strictly below the given one (root included)."""
    return tuple(i for i in range(tree.n) if tree.label_key(i) < label)


def has_branching_property(tree: Tree, A: Iterable[int], bound: int) -> bool:
    """Whether every member of A has arbitrarily high incomparable pairs above it.

    Literally: for every t in A and every threshold below ``bound`` there are
    incomparable s0, s1 in A above t whose labels exceed the threshold.  On a
    finite tree this fails at any member of A that is maximal within A, so
    the check is a diagnostic; the builders test the richness they actually
    need level by level instead.
    """
    members = node_set(tree, A)
    if bound <= 0:
        return True
    for t in members:
        ups = [s for s in members if tree.leq(t, s) and tree.label_key(s) > bound - 1]
        found = False
        for i, s0 in enumerate(ups):
            for s1 in ups[i + 1:]:
                if not tree.comparable(s0, s1):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True
