"""Ladder systems over finite trees and their derived graphs.

A ladder system C assigns to nodes a rung C_t: a chain of strict ancestors
of t.  The derived graph joins s and t exactly when s lies in C_t.  supp
flags mark the rungs playing the infinite role in the original setting; at
desk scale the flag is explicit data with no cardinality content.  eta is a
true-ladder companion: eta_t = [t] for ordinary nodes, and for limit-role
nodes a nonempty chain of strict ancestors standing in for a cofinal
sequence below t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import (
    InvalidArgumentError,
    InvalidLadderError,
    MissingEtaError,
    MissingLadderEntryError,
)
from .graphs import LadderGraph, TreeGraph, covering_path, min_cover_label
from .tree import Tree


def _chain_of_ancestors(tree: Tree, t: int, members, what: str):
    """Validate and sort a rung as a chain of strict ancestors of t."""
    out = []
    seen = set()
    for s in members:
        tree.check_node(s)
        if s in seen:
            raise InvalidLadderError(f"{what} of node {t} repeats {s}", node=t)
        seen.add(s)
        if not tree.lt(s, t):
            raise InvalidLadderError(f"{what} of node {t}: {s} is not a strict ancestor", node=t)
        out.append(s)
    out.sort(key=tree.depth.__getitem__)
    return tuple(out)


@dataclass(frozen=True)
class TrueLadder:
    """eta map: explicit entries for limit-role nodes, [t] implicitly otherwise."""

    entries: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def rung(self, t: int) -> tuple[int, ...]:
        return self.entries.get(t, (t,))

    def limit_nodes(self) -> frozenset[int]:
        return frozenset(self.entries)

    def validate(self, tree: Tree) -> "TrueLadder":
        fixed = {}
        for t, members in self.entries.items():
            tree.check_node(t)
            chain = _chain_of_ancestors(tree, t, members, "eta rung")
            if not chain:
                raise InvalidLadderError(f"eta rung of limit-role node {t} is empty", node=t)
            fixed[t] = chain
        return TrueLadder(fixed)


@dataclass(frozen=True)
class LadderSystem:
    """Rungs, infinite-role flags, and an optional eta companion."""

    rungs: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    supp: frozenset[int] = frozenset()
    eta: Optional[TrueLadder] = None

    def rung(self, t: int) -> tuple[int, ...]:
        return self.rungs.get(t, ())

    def validate(self, tree: Tree) -> "LadderSystem":
        """Normalized copy (rungs sorted, empties dropped) or raises."""
        fixed = {}
        for t, members in self.rungs.items():
            tree.check_node(t)
            chain = _chain_of_ancestors(tree, t, members, "rung")
            if chain:
                fixed[t] = chain
        supp = frozenset(self.supp)
        for t in supp:
            tree.check_node(t)
            if t not in fixed:
                raise InvalidLadderError(f"supp flags node {t} whose rung is empty", node=t)
        eta = self.eta.validate(tree) if self.eta is not None else None
        return LadderSystem(fixed, supp, eta)


@dataclass(frozen=True)
class OrdinalLadder:
    """Per-label ladder: for label d, a sorted set of labels below d.

    ``limit`` flags the labels playing the limit-ordinal role; derivations
    only consult rungs of flagged labels.
    """

    rungs: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    limit: frozenset[int] = frozenset()

    def rung(self, label: int) -> tuple[int, ...]:
        return self.rungs.get(label, ())

    def validate(self) -> "OrdinalLadder":
        fixed = {}
        for d, members in self.rungs.items():
            if not isinstance(d, int) or d < 0:
                raise InvalidArgumentError(f"bad ladder label {d!r}")
            vals = sorted(set(members))
            if any(not isinstance(e, int) or e < 0 or e >= d for e in vals):
                raise InvalidArgumentError(f"ladder rung at {d} must hold labels below {d}")
            fixed[d] = tuple(vals)
        return OrdinalLadder(fixed, frozenset(self.limit))


def graph_of(tree: Tree, system: LadderSystem) -> LadderGraph:
    """Derived graph: s adjacent to t exactly when s is in C_t."""
    system = system.validate(tree)
    edges = []
    provenance = {}
    for t in sorted(system.rungs):
        for i, s in enumerate(system.rungs[t]):
            edges.append((s, t))
            provenance[(min(s, t), max(s, t))] = (t, i)
    return LadderGraph(tree, system, edges, provenance)


def is_transitive(tree: Tree, system: LadderSystem):
    """Rung prefixes propagate: members of C_t below s also lie in C_s.

    Returns (ok, witness); witness names the first offending (t, s, missing).
    """
    for t in sorted(system.rungs, key=tree.canonical_key):
        rung = system.rung(t)
        for s in rung:
            want = set(system.rung(s))
            for c in rung:
                if tree.lt(c, s) and c not in want:
                    return False, {"t": t, "s": s, "missing": c}
    return True, None


def _eta_below(tree: Tree, eta_rung: tuple[int, ...], s: int) -> tuple[int, ...]:
    return tuple(u for u in eta_rung if tree.lt(u, s))


def is_coherent(tree: Tree, system: LadderSystem):
    """Finite coherence of a ladder system.

    (1) For every t and every ordinary (non-flagged) s in C_t, the rung of
    s is the exact lower cut of C_t below s.  For pairs s, t both flagged
    with s in C_t: (2) the part of eta_t that sits strictly below s is an
    initial segment of eta_s, and (3) C_t and C_s agree strictly below the
    child (toward s) of the deepest such eta_t member; vacuous when eta_t
    has nothing below s.  Returns (ok, witness).
    """
    if system.supp and system.eta is None:
        raise MissingEtaError("coherence with nonempty supp needs an eta companion")
    eta = system.eta
    for t in sorted(system.rungs, key=tree.canonical_key):
        rung_t = system.rung(t)
        for s in rung_t:
            lower = tuple(c for c in rung_t if tree.lt(c, s))
            if s not in system.supp:
                if system.rung(s) != lower:
                    return False, {
                        "condition": 1,
                        "t": t,
                        "s": s,
                        "expected": list(lower),
                        "got": list(system.rung(s)),
                    }
                continue
            if t not in system.supp:
                continue
            eta_t_below = _eta_below(tree, eta.rung(t), s)
            eta_s = eta.rung(s)
            if eta_s[: len(eta_t_below)] != eta_t_below:
                return False, {
                    "condition": 2,
                    "t": t,
                    "s": s,
                    "eta_t_below_s": list(eta_t_below),
                    "eta_s": list(eta_s),
                }
            if not eta_t_below:
                continue
            u = eta_t_below[-1]
            r = tree.ancestors(s)[tree.depth[u] + 1]
            left = tuple(c for c in rung_t if tree.lt(c, r))
            right = tuple(c for c in system.rung(s) if tree.lt(c, r))
            if left != right:
                return False, {
                    "condition": 3,
                    "t": t,
                    "s": s,
                    "r": r,
                    "from_t": list(left),
                    "from_s": list(right),
                }
    return True, None


def is_sparse(tree: Tree, system: LadderSystem, graph: TreeGraph | None = None):
    """No rung member is covered from the label of a lower member of its rung.

    For every t and r < s in C_t, s must not be label(r)-covered in the
    derived graph.  Returns (ok, witness) where the witness carries the
    covering path certificate.
    """
    if graph is None:
        graph = graph_of(tree, system)
    for t in sorted(system.rungs, key=tree.canonical_key):
        rung = system.rung(t)
        for i, r in enumerate(rung):
            gamma = tree.label_key(r)
            for s in rung[i + 1:]:
                if min_cover_label(graph, s) <= gamma:
                    return False, {
                        "t": t,
                        "r": r,
                        "s": s,
                        "path": covering_path(graph, s, gamma),
                    }
    return True, None


def derive_true_ladder(tree: Tree, nu: OrdinalLadder) -> TrueLadder:
    """eta by prefix cuts: cut t's branch at each member of nu_label(t).

    Applies to nodes whose label is flagged limit-role; every such label
    occurring in the tree needs a nonempty nu rung.
    """
    nu = nu.validate()
    entries = {}
    for t in range(tree.n):
        lab = tree.labels[t]
        if lab is None or lab not in nu.limit:
            continue
        rung = nu.rung(lab)
        if not rung:
            raise MissingLadderEntryError(f"no ladder rung for limit-role label {lab}", label=lab)
        cuts = []
        for eps in rung:
            c = tree.prefix_cut(t, eps)
            if not cuts or cuts[-1] != c:
                cuts.append(c)
        entries[t] = tuple(cuts)
    return TrueLadder(entries).validate(tree)


def derive_ladder_from_ordinal(tree: Tree, nu: OrdinalLadder) -> LadderSystem:
    """Ladder system whose limit-role rungs are the prefix cuts of nu.

    Nodes with unflagged labels get empty rungs; limit-role nodes are
    supp-flagged and the matching eta is attached.
    """
    eta = derive_true_ladder(tree, nu)
    rungs = {t: chain for t, chain in eta.entries.items()}
    supp = frozenset(rungs)
    return LadderSystem(rungs, supp, eta).validate(tree)


def assert_finite_reading(system: LadderSystem) -> None:
    """Conformance mode: every rung plays the finite role (supp empty)."""
    if system.supp:
        raise InvalidLadderError(
            f"finite reading violated: supp flags {sorted(system.supp)}",
            node=min(system.supp),
        )
