"""Seeded random instances: trees, ladder systems of each flavor, colorings.

Every generator takes an explicit seed or Random so runs are reproducible;
nothing here touches global RNG state.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence, Union

from .errors import GenerationFailedError, InvalidArgumentError
from .graphcore import Coloring
from .ladder import (
    LadderSystem,
    OrdinalLadder,
    TrueLadder,
    is_coherent,
    is_sparse,
    is_transitive,
)
from .tree import Tree, generate_ts_tree

RngLike = Union[int, random.Random]


def _rng(seed: RngLike) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_tree(n: int, seed: RngLike, branchiness: float = 0.6, label_gap: int = 3) -> Tree:
    """Random labeled tree on n nodes with strictly increasing labels.

    Labels are drawn from a globally increasing counter, so every
    parent-child pair automatically increases.  Larger branchiness prefers
    shallow attachment points and hence wider trees.
    """
    if n < 1:
        raise InvalidArgumentError("a tree has at least its root")
    rng = _rng(seed)
    parents: list[Optional[int]] = [None]
    labels: list[Optional[int]] = [None]
    counter = 0
    for i in range(1, n):
        if rng.random() < branchiness:
            parent = rng.randrange(i)
        else:
            parent = i - 1  # lean on the previous node: deeper chains
        counter += 1 + rng.randrange(label_gap)
        parents.append(parent)
        labels.append(counter)
    return Tree(parents, labels)


def random_coloring(tree: Tree, palette: int, seed: RngLike) -> Coloring:
    if palette < 1:
        raise InvalidArgumentError("palette must be nonempty")
    rng = _rng(seed)
    return Coloring(tuple(rng.randrange(palette) for _ in range(tree.n)), palette)


def random_ts_subtree(labels: Sequence[int], depth: int, n: int, seed: RngLike) -> Tree:
    """Random prefix-closed piece of the full increasing-sequence tree.

    Unlike random_tree, labels here repeat across branches (a node's label
    is the last entry of its sequence), which is what gives label-sliced
    node pools actual height: a pool of small labels still contains whole
    subtrees, not just the oldest nodes.
    """
    full = generate_ts_tree(labels, depth)
    if n < 1:
        raise InvalidArgumentError("a tree has at least its root")
    n = min(n, full.n)
    rng = _rng(seed)
    keep = {0}
    frontier = [v for v in range(full.n) if full.parents[v] == 0]
    while len(keep) < n and frontier:
        v = frontier.pop(rng.randrange(len(frontier)))
        keep.add(v)
        frontier.extend(w for w in full.children[v] if w not in keep)
    order = sorted(keep, key=full.canonical_key)
    remap = {v: i for i, v in enumerate(order)}
    parents = [None if full.parents[v] is None else remap[full.parents[v]] for v in order]
    node_labels = [full.labels[v] for v in order]
    return Tree(parents, node_labels)


def random_system(tree: Tree, seed: RngLike, p_rung: float = 0.85) -> LadderSystem:
    """Unconstrained rungs: random ancestor subsets, no flags."""
    rng = _rng(seed)
    rungs = {}
    for t in range(1, tree.n):
        if rng.random() > p_rung:
            continue
        anc = tree.strict_ancestors(t)
        pick = [s for s in anc if rng.random() < 0.5]
        if pick:
            rungs[t] = tuple(pick)
    return LadderSystem(rungs, frozenset(), None).validate(tree)


def random_transitive_system(
    tree: Tree, seed: RngLike, p_rung: float = 0.9, keep: float = 0.6
) -> LadderSystem:
    """Transitive by construction: an anchor plus part of the anchor's rung.

    Each rung is {s} plus a random subset of C_s for a random strict
    ancestor s; inductively C_t cut below any member lands inside that
    member's own rung.  Flags stay empty, so coherence is vacuous.
    """
    rng = _rng(seed)
    rungs: dict[int, tuple[int, ...]] = {}
    for t in sorted(range(1, tree.n), key=tree.canonical_key):
        if rng.random() > p_rung:
            continue
        anc = tree.strict_ancestors(t)
        s = anc[rng.randrange(len(anc))]
        members = {s} | {u for u in rungs.get(s, ()) if rng.random() < keep}
        rungs[t] = tuple(sorted(members, key=tree.depth.__getitem__))
    return LadderSystem(rungs, frozenset(), None).validate(tree)


def random_coherent_system(
    tree: Tree, seed: RngLike, p_rung: float = 0.9, p_supp: float = 0.5,
    p_label: float = 0.45,
) -> tuple[LadderSystem, OrdinalLadder]:
    """Coherent by construction; returns the system with its ordinal ladder.

    Rungs are chain-closed (an anchor plus the anchor's whole rung), so any
    rung cut below a member reproduces that member's rung exactly — the
    ordinary-member condition holds with room to spare.  A global label set
    G drives the ordinal ladder (rung at d = G below d) and every flagged
    node's eta is the ladder's prefix cuts, which makes the eta comparisons
    between flagged nodes literal prefixes of one another.
    """
    rng = _rng(seed)
    rungs: dict[int, tuple[int, ...]] = {}
    for t in sorted(range(1, tree.n), key=tree.canonical_key):
        if rng.random() > p_rung:
            continue
        anc = tree.strict_ancestors(t)
        s = anc[rng.randrange(len(anc))]
        members = {s} | set(rungs.get(s, ()))
        rungs[t] = tuple(sorted(members, key=tree.depth.__getitem__))

    labels = sorted({tree.labels[v] for v in range(1, tree.n)})
    G = [lab for lab in labels if rng.random() < p_label]
    if not any(g < labels[-1] for g in G):
        # every ladder rung collects the entries of G strictly below its
        # key, so G needs a member under the top label or the whole ladder
        # comes out empty; the lowest label is the least intrusive pick
        G.insert(0, labels[0])
    nu_rungs = {}
    for lab in labels:
        below = tuple(g for g in G if g < lab)
        if below:
            nu_rungs[lab] = below
    nu = OrdinalLadder(nu_rungs, frozenset(nu_rungs)).validate()

    supp = set()
    entries = {}
    for t in sorted(rungs):
        lab = tree.labels[t]
        if lab not in nu_rungs or rng.random() > p_supp:
            continue
        cuts = []
        for e in nu_rungs[lab]:
            c = tree.prefix_cut(t, e)
            if not cuts or cuts[-1] != c:
                cuts.append(c)
        supp.add(t)
        entries[t] = tuple(cuts)
    eta = TrueLadder(entries) if supp else None
    system = LadderSystem(rungs, frozenset(supp), eta).validate(tree)
    return system, nu


def random_sparse_system(
    tree: Tree, seed: RngLike, p_rung: float = 0.8, max_size: int = 3
) -> LadderSystem:
    """Random rungs repaired until sparse.

    Downward coverage depends on the whole edge set, so a greedy pass can
    leave violations; the repair loop deletes the covered upper member of
    each reported violation until the predicate holds.  Edge count strictly
    drops, so the loop terminates.
    """
    rng = _rng(seed)
    rungs: dict[int, list[int]] = {}
    for t in sorted(range(1, tree.n), key=tree.canonical_key):
        if rng.random() > p_rung:
            continue
        anc = list(tree.strict_ancestors(t))
        rng.shuffle(anc)
        pick = sorted(anc[: 1 + rng.randrange(max_size)], key=tree.depth.__getitem__)
        if pick:
            rungs[t] = pick
    while True:
        system = LadderSystem(
            {t: tuple(m) for t, m in rungs.items() if m}, frozenset(), None
        ).validate(tree)
        ok, witness = is_sparse(tree, system)
        if ok:
            return system
        rungs[witness["t"]].remove(witness["s"])


REQUIREMENTS = ("none", "transitive", "coherent", "sparse")


def generate_system(
    tree: Tree, require: str, seed: RngLike, max_tries: int = 25
):
    """Dispatch on the required predicate; verify before returning.

    The recipes are correct by construction, so verification is a cheap
    safety net; the retry loop exists for future recipes that might reject.
    Coherent instances come back with their ordinal ladder.
    """
    if require not in REQUIREMENTS:
        raise InvalidArgumentError(f"unknown requirement {require!r}")
    rng = _rng(seed)
    for _ in range(max_tries):
        if require == "none":
            return random_system(tree, rng)
        if require == "transitive":
            system = random_transitive_system(tree, rng)
            if is_transitive(tree, system)[0]:
                return system
        elif require == "coherent":
            system, nu = random_coherent_system(tree, rng)
            if is_coherent(tree, system)[0] and is_transitive(tree, system)[0]:
                return system, nu
        else:
            system = random_sparse_system(tree, rng)
            if is_sparse(tree, system)[0]:
                return system
    raise GenerationFailedError(f"no {require} system within {max_tries} attempts")
