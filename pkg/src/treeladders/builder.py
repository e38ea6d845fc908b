"""Challenge data and the branching builders that defeat colorings.

Each builder grows a complete binary scaffold of depth k inside the eligible
set: psi maps binary strings to anchor nodes, phi picks a colored waypoint
between an anchor and its two incomparable successors, and the leftmost
branch's waypoints become the rung of one fresh leaf.  A coloring is
defeated when the fresh rung shows every palette color.

The three modes differ only in their waypoint filters: transitive mode wants
rung-completeness, coherent mode adds ordinal-ladder compatibility governed
by the eps markers, sparse mode wants uncovered waypoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    ExhaustedError,
    GenerationFailedError,
    InvalidArgumentError,
    InvalidChallengeError,
    MissingLadderEntryError,
    PreconditionError,
    ResourceLimitError,
)
from .graphcore import Coloring
from .graphs import LadderGraph, covered, min_cover_label
from .ladder import (
    LadderSystem,
    OrdinalLadder,
    TrueLadder,
    graph_of,
    is_coherent,
    is_sparse,
    is_transitive,
)
from .tree import Tree

BUILD_BUDGET = 20_000


# -- challenges ---------------------------------------------------------------


@dataclass(frozen=True)
class Challenge:
    """Eligible nodes, the coloring under attack, and mode-specific extras.

    t0 is the base for sparse extensions; chain is the increasing sequence
    of per-level pools for coherent extensions (each level nonempty, nested,
    inside A).
    """

    A: tuple[int, ...]
    f: Coloring
    t0: Optional[int] = None
    chain: tuple[tuple[int, ...], ...] = ()

    def validate(self, tree: Tree) -> "Challenge":
        if not self.A:
            raise InvalidChallengeError("eligible set is empty")
        for v in self.A:
            tree.check_node(v)
        if len(set(self.A)) != len(self.A):
            raise InvalidChallengeError("eligible set repeats a node")
        self.f.validate(tree)
        if self.t0 is not None:
            tree.check_node(self.t0)
        universe = set(self.A)
        prev: set[int] = set()
        for i, level in enumerate(self.chain):
            members = set(level)
            if not members:
                raise InvalidChallengeError(f"chain level {i} is empty")
            if not members <= universe:
                raise InvalidChallengeError(f"chain level {i} leaves the eligible set")
            if not prev <= members:
                raise InvalidChallengeError(f"chain level {i} is not increasing")
            prev = members
        return self


@dataclass(frozen=True)
class BuilderState:
    """The finished scaffold: psi on strings of length <= k, phi below k."""

    k: int
    psi: dict[str, int]
    phi: dict[str, int]
    schedule: tuple[int, ...]
    markers: tuple[Optional[int], ...] = ()


@dataclass(frozen=True)
class BuildResult:
    tree: Tree
    system: LadderSystem
    new_node: int
    new_label: int
    x: str
    state: BuilderState
    r_sizes: tuple[int, ...]

    def rung(self) -> tuple[int, ...]:
        return self.system.rung(self.new_node)


def _round_robin(k: int, palette: int) -> tuple[int, ...]:
    if k < 0:
        raise InvalidArgumentError("builder depth k must be nonnegative")
    if palette < 1:
        raise InvalidArgumentError("palette must be nonempty")
    return tuple(n % palette for n in range(k))


# -- scaffold search ----------------------------------------------------------


def _build_scaffold(k, psi_root, phi_cands, pair_cands, budget):
    """Depth-first completion of the full binary scaffold, leftmost first.

    phi_cands(x, psi_x, phi) and pair_cands(x, phi_x) yield candidates in
    canonical order, so the first completed scaffold is deterministic.
    """
    psi: dict[str, int] = {"": psi_root}
    phi: dict[str, int] = {}
    spent = [0]

    def wipe(prefix):
        for d in (psi, phi):
            for key in [q for q in d if q.startswith(prefix)]:
                del d[key]

    def descend(x: str, anchor: int) -> bool:
        for a, b in pair_cands(x, anchor):
            psi[x + "0"], psi[x + "1"] = a, b
            if fill(x + "0") and fill(x + "1"):
                return True
            wipe(x + "0")
            wipe(x + "1")
        return False

    def fill(x: str) -> bool:
        if len(x) == k:
            return True
        spent[0] += 1
        if spent[0] > budget:
            raise ResourceLimitError(f"scaffold search exceeded {budget} expansions")
        cands = phi_cands(x, psi[x], phi)
        if not cands:
            # no eligible waypoint at this level: the string stays out of
            # the waypoint map and the next anchors sit over psi(x) instead
            return descend(x, psi[x])
        for s in cands:
            phi[x] = s
            if descend(x, s):
                return True
            del phi[x]
        return False

    if not fill(""):
        raise ExhaustedError("no complete scaffold exists for this challenge")
    return psi, phi


def _incomparable_pairs(tree: Tree, pool: Sequence[int]):
    ordered = sorted(pool, key=tree.canonical_key)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if not tree.comparable(a, b):
                yield a, b


def _finish(tree, system, psi, phi, k, schedule, markers, new_label, r_sizes,
            supp_new, eta_entry):
    x = "0" * k
    rung = tuple(phi[x[:n]] for n in range(k) if x[:n] in phi)
    parent = psi[x]
    new_tree, t_new = tree.extend_leaf(parent, new_label)
    rungs = dict(system.rungs)
    rungs[t_new] = rung
    supp = set(system.supp)
    eta = system.eta
    if supp_new and rung:
        supp.add(t_new)
        entries = dict(eta.entries) if eta is not None else {}
        entries[t_new] = eta_entry
        eta = TrueLadder(entries)
    new_system = LadderSystem(rungs, frozenset(supp), eta).validate(new_tree)
    state = BuilderState(k, dict(psi), dict(phi), schedule, markers)
    return BuildResult(new_tree, new_system, t_new, new_label, x, state, r_sizes)


def _r_sizes_along(x, psi, phi, phi_cands):
    sizes = []
    for n in range(len(x)):
        prefix = x[:n]
        sizes.append(len(phi_cands(prefix, psi[prefix], phi)))
    return tuple(sizes)


# -- transitive mode ----------------------------------------------------------


def extend_transitive(
    tree: Tree,
    system: LadderSystem,
    challenge: Challenge,
    k: int,
    *,
    new_label: Optional[int] = None,
    budget: int = BUILD_BUDGET,
) -> BuildResult:
    """Grow one node whose rung shows the scheduled colors, transitively.

    Waypoints must sit above their anchor, wear the scheduled color, and
    carry all earlier waypoints in their own rung; that last completeness
    filter is exactly what makes the fresh rung transitive.  The base
    anchor is the canonical-least eligible node.
    """
    challenge = challenge.validate(tree)
    ok, witness = is_transitive(tree, system)
    if not ok:
        raise PreconditionError(f"input system is not transitive: {witness}")
    f = challenge.f
    schedule = _round_robin(k, f.palette)
    A = sorted(set(challenge.A), key=tree.canonical_key)
    rung_sets = {v: frozenset(system.rung(v)) for v in A}

    psi_root = min(A, key=tree.canonical_key)

    def phi_cands(x, psi_x, phi):
        n = len(x)
        prev = frozenset(phi[x[:j]] for j in range(n) if x[:j] in phi)
        return [
            s
            for s in A
            if tree.leq(psi_x, s)
            and f.of(s) == schedule[n]
            and prev <= rung_sets[s]
        ]

    def pair_cands(x, phi_x):
        pool = [v for v in A if tree.lt(phi_x, v)]
        return _incomparable_pairs(tree, pool)

    psi, phi = _build_scaffold(k, psi_root, phi_cands, pair_cands, budget)
    label = new_label if new_label is not None else tree.max_label() + 1
    result = _finish(
        tree, system, psi, phi, k, schedule, (), label,
        _r_sizes_along("0" * k, psi, phi, phi_cands), False, (),
    )
    ok, witness = is_transitive(result.tree, result.system)
    if not ok:
        raise GenerationFailedError(f"postcondition failed: {witness}")
    return result


# -- coherent mode ------------------------------------------------------------


def _eps_markers(chain_labels, nu_delta, k):
    """eps[-1], eps[0], ..., eps[k-1] as a list indexed by level + 1.

    eps[n] = max of the level-n label supremum and the new-label rung
    entries below the next level's supremum; eps[-1] uses only the rung
    entries below the base level's supremum and may be absent.
    """
    below = lambda bound: [e for e in nu_delta if e < bound]
    first = below(chain_labels[0])
    eps: list[Optional[int]] = [max(first) if first else None]
    for n in range(k):
        eps.append(max([chain_labels[n]] + below(chain_labels[n + 1])))
    return eps


def extend_coherent(
    tree: Tree,
    system: LadderSystem,
    nu: OrdinalLadder,
    challenge: Challenge,
    k: int,
    *,
    new_label: Optional[int] = None,
    budget: int = BUILD_BUDGET,
) -> BuildResult:
    """Grow one supp-flagged node coherently, guided by an ordinal ladder.

    The challenge chain supplies one pool per level (padded by repeating its
    last set).  Waypoints additionally must be ladder-compatible: their own
    true ladder matches the ordinal ladder's cuts, the new label's rung
    restricted below their label is an initial segment of the rung at their
    label, and their rung at-or-below the previous marker's cut is exactly
    the earlier waypoints.  Anchor pairs at level n come from the level n+1
    pool at labels at or above eps[n].
    """
    challenge = challenge.validate(tree)
    if not challenge.chain:
        raise InvalidChallengeError("coherent extension needs a chain of pools")
    ok, witness = is_transitive(tree, system)
    if not ok:
        raise PreconditionError(f"input system is not transitive: {witness}")
    ok, witness = is_coherent(tree, system)
    if not ok:
        raise PreconditionError(f"input system is not coherent: {witness}")
    nu = nu.validate()
    f = challenge.f
    schedule = _round_robin(k, f.palette)
    label = new_label if new_label is not None else tree.max_label() + 1
    if label not in nu.rungs or not nu.rungs[label]:
        raise MissingLadderEntryError(
            f"ordinal ladder has no entries at the new label {label}", label=label
        )
    nu_delta = tuple(sorted(nu.rungs[label]))

    chain = [tuple(sorted(set(level), key=tree.canonical_key)) for level in challenge.chain]
    while len(chain) < k + 1:
        chain.append(chain[-1])
    chain_labels = [max(tree.label_key(v) for v in level) for level in chain]
    eps = _eps_markers(chain_labels, nu_delta, k)

    rung_sets = {v: frozenset(system.rung(v)) for v in set(challenge.A)}
    supp = system.supp

    def ladder_compatible(s):
        # (c0) the waypoint's true ladder must be the ordinal ladder's cuts
        ls = tree.label_key(s)
        expected = nu.rungs.get(ls)
        if expected is None or not expected:
            return False
        cuts = []
        for e in sorted(expected):
            c = tree.prefix_cut(s, e)
            if not cuts or cuts[-1] != c:
                cuts.append(c)
        actual = system.eta.rung(s) if system.eta is not None else (s,)
        if tuple(cuts) != actual:
            return False
        # (c1') entries at the new label below label(s) start the rung at label(s)
        left = tuple(e for e in nu_delta if e < ls)
        right = tuple(sorted(expected))
        return left == right[: len(left)]

    def phi_cands(x, psi_x, phi):
        n = len(x)
        prev = frozenset(phi[x[:j]] for j in range(n) if x[:j] in phi)
        eps_prev = eps[n]
        out = []
        for s in chain[n]:
            if not (tree.leq(psi_x, s) and f.of(s) == schedule[n]):
                continue
            if not prev <= rung_sets[s]:
                continue
            if s in supp:
                if not ladder_compatible(s):
                    continue
                # (c2') the rung at or below the marker cut is the waypoints so far
                if eps_prev is None:
                    region = frozenset()
                else:
                    cut = tree.prefix_cut(s, eps_prev)
                    region = frozenset(c for c in rung_sets[s] if tree.leq(c, cut))
                if region != prev:
                    continue
            elif rung_sets[s] != prev:
                continue
            out.append(s)
        return out

    def pair_cands(x, phi_x):
        n = len(x)
        floor = eps[n + 1]
        pool = [
            v
            for v in chain[n + 1]
            if tree.lt(phi_x, v) and tree.label_key(v) >= floor
        ]
        return _incomparable_pairs(tree, pool)

    base_floor = eps[0]
    base_pool = [
        v
        for v in chain[0]
        if base_floor is None or tree.label_key(v) > base_floor
    ]
    if not base_pool:
        raise InvalidChallengeError("no base pool member above the initial marker")
    psi_root = min(base_pool, key=tree.canonical_key)

    psi, phi = _build_scaffold(k, psi_root, phi_cands, pair_cands, budget)

    x = "0" * k
    cuts = []
    new_tree_probe, t_probe = tree.extend_leaf(psi[x], label)
    for e in nu_delta:
        c = new_tree_probe.prefix_cut(t_probe, e)
        if not cuts or cuts[-1] != c:
            cuts.append(c)
    result = _finish(
        tree, system, psi, phi, k, schedule, tuple(eps), label,
        _r_sizes_along(x, psi, phi, phi_cands), True, tuple(cuts),
    )
    for name, check in (("transitive", is_transitive), ("coherent", is_coherent)):
        ok, witness = check(result.tree, result.system)
        if not ok:
            raise GenerationFailedError(f"postcondition ({name}) failed: {witness}")
    return result


# -- sparse mode --------------------------------------------------------------


def extend_sparse(
    tree: Tree,
    system: LadderSystem,
    challenge: Challenge,
    k: int,
    *,
    new_label: Optional[int] = None,
    decided_at: Optional[int] = None,
    budget: int = BUILD_BUDGET,
) -> BuildResult:
    """Grow one node sparsely: waypoints must dodge downward coverage.

    The base anchor is the canonical-least eligible node at or above the
    challenge's t0.  A waypoint over anchor psi(x) must not be covered at
    the anchor's label, which keeps the fresh rung sparse and leaves every
    old rung untouched.  When decided_at is given, the challenge's t0 must
    decide the coloring at that threshold first.
    """
    challenge = challenge.validate(tree)
    ok, witness = is_sparse(tree, system)
    if not ok:
        raise PreconditionError(f"input system is not sparse: {witness}")
    f = challenge.f
    schedule = _round_robin(k, f.palette)
    t0 = challenge.t0 if challenge.t0 is not None else 0
    graph = graph_of(tree, system)
    if decided_at is not None:
        decided, detail = node_decides(tree, graph, f, t0, decided_at)
        if not decided:
            raise PreconditionError(
                f"t0={t0} does not decide the coloring at {decided_at}: {detail}"
            )
    A = sorted(set(challenge.A), key=tree.canonical_key)
    above = [v for v in A if tree.leq(t0, v)]
    if not above:
        raise ExhaustedError("no eligible node at or above t0")
    psi_root = min(above, key=tree.canonical_key)

    def phi_cands(x, psi_x, phi):
        n = len(x)
        prev = {phi[x[:j]] for j in range(n) if x[:j] in phi}
        gamma = tree.label_key(psi_x)
        return [
            s
            for s in A
            if tree.leq(psi_x, s)
            and f.of(s) == schedule[n]
            and s not in prev
            and not covered(graph, s, gamma)
        ]

    def pair_cands(x, phi_x):
        pool = [v for v in A if tree.lt(phi_x, v)]
        return _incomparable_pairs(tree, pool)

    psi, phi = _build_scaffold(k, psi_root, phi_cands, pair_cands, budget)
    label = new_label if new_label is not None else tree.max_label() + 1
    result = _finish(
        tree, system, psi, phi, k, schedule, (), label,
        _r_sizes_along("0" * k, psi, phi, phi_cands), False, (),
    )
    ok, witness = is_sparse(result.tree, result.system)
    if not ok:
        raise GenerationFailedError(f"postcondition failed: {witness}")
    return result


# -- deciding a coloring -------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    """Where (if anywhere) a coloring is decided, and how per color.

    For each color, "unbounded" means every extension of the decider meets
    a node of that color uncovered below the threshold; "bounded" means the
    color's nodes above the decider are all covered at the decider's label.
    """

    t0: Optional[int]
    verdicts: dict[int, tuple[str, ...]]


def _subtree_nodes(tree: Tree, t: int) -> list[int]:
    out = [t]
    i = 0
    while i < len(out):
        out.extend(tree.children[out[i]])
        i += 1
    return out


def node_decides(tree: Tree, graph: LadderGraph, f: Coloring, t: int, lam: int):
    """Check both alternatives for every color at one node."""
    tree.check_node(t)
    f.validate(tree)
    verdicts: dict[int, tuple[str, ...]] = {}
    ok_all = True
    mincov = {v: min_cover_label(graph, v) for v in range(tree.n)}
    for color in range(f.palette):
        alt1 = True
        for r in _subtree_nodes(tree, t):
            if not any(
                f.of(s) == color and mincov[s] >= lam for s in _subtree_nodes(tree, r)
            ):
                alt1 = False
                break
        bound = tree.label_key(t)
        alt2 = all(
            mincov[r] <= bound
            for r in _subtree_nodes(tree, t)
            if f.of(r) == color
        )
        tags = tuple(
            tag for tag, hit in (("unbounded", alt1), ("bounded", alt2)) if hit
        )
        verdicts[color] = tags
        ok_all = ok_all and bool(tags)
    return ok_all, verdicts


def decide_coloring(tree: Tree, graph: LadderGraph, f: Coloring, lam: int) -> Decision:
    """Canonical-least node deciding every color, or None; absence is legal."""
    f.validate(tree)
    for t in sorted(range(tree.n), key=tree.canonical_key):
        ok, verdicts = node_decides(tree, graph, f, t, lam)
        if ok:
            return Decision(t, verdicts)
    return Decision(None, {})


# -- the defeat harness --------------------------------------------------------


@dataclass(frozen=True)
class DefeatOutcome:
    index: int
    defeated: dict[int, bool]
    fully_defeated: bool
    new_node: Optional[int]
    new_label: Optional[int]
    rung: tuple[int, ...]
    rung_colors: tuple[int, ...]
    x: Optional[str]
    r_sizes: tuple[int, ...]
    error: Optional[str] = None

    def as_dict(self):
        return {
            "index": self.index,
            "defeated": {str(c): v for c, v in sorted(self.defeated.items())},
            "fully_defeated": self.fully_defeated,
            "new_node": self.new_node,
            "new_label": self.new_label,
            "rung": list(self.rung),
            "rung_colors": list(self.rung_colors),
            "x": self.x,
            "r_sizes": list(self.r_sizes),
            "error": self.error,
        }


@dataclass(frozen=True)
class DefeatSummary:
    mode: str
    k: int
    outcomes: tuple[DefeatOutcome, ...]

    @property
    def fraction_defeated(self) -> float:
        if not self.outcomes:
            return 0.0
        return sum(o.fully_defeated for o in self.outcomes) / len(self.outcomes)

    def as_dict(self):
        return {
            "mode": self.mode,
            "k": self.k,
            "fraction_defeated": self.fraction_defeated,
            "outcomes": [o.as_dict() for o in self.outcomes],
        }


def label_quantile_chain(tree: Tree, k: int) -> tuple[tuple[int, ...], ...]:
    """Default coherent pools: k+1 label-threshold strata of all nodes.

    A constant chain pins every marker to the maximum label and starves the
    anchor pairs, so the thresholds climb through the label quantiles.
    """
    levels = []
    distinct = sorted({tree.label_key(v) for v in range(tree.n)})
    for n in range(k + 1):
        idx = max(0, math.ceil(len(distinct) * (n + 1) / (k + 1)) - 1)
        thr = distinct[idx]
        levels.append(
            tuple(v for v in range(tree.n) if tree.label_key(v) <= thr)
        )
    return tuple(levels)


def widen_ladder(nu: OrdinalLadder, new_label: int) -> OrdinalLadder:
    """Give the ladder an entry at a fresh label when it lacks one.

    The union of all existing rungs recovers the global set behind a
    generated ladder, and restricting that union below each existing key
    reproduces the key's own rung — so the compatibility filters see the
    widened ladder and the original agree everywhere they overlap.
    """
    if new_label in nu.rungs and nu.rungs[new_label]:
        return nu
    union = sorted({e for rung in nu.rungs.values() for e in rung if e < new_label})
    if not union:
        raise MissingLadderEntryError(
            f"cannot widen an empty ladder to label {new_label}", label=new_label
        )
    rungs = dict(nu.rungs)
    rungs[new_label] = tuple(union)
    return OrdinalLadder(rungs, frozenset(nu.limit) | {new_label}).validate()


def full_label_ladder(tree: Tree, new_label: int) -> OrdinalLadder:
    """Ordinal ladder listing every smaller tree label at each key.

    The compatibility filters degenerate gracefully under it, which makes it
    the right default for supp-free systems; systems with their own ladder
    history should pass that ladder instead.
    """
    labels = sorted({tree.labels[v] for v in range(1, tree.n)} | {new_label})
    rungs = {}
    for lab in labels:
        below = tuple(l for l in labels if l < lab)
        if below:
            rungs[lab] = below
    return OrdinalLadder(rungs, frozenset(rungs)).validate()


def defeat_colorings(
    tree: Tree,
    system: LadderSystem,
    colorings: Sequence[Coloring],
    mode: str,
    *,
    k: Optional[int] = None,
    nu: Optional[OrdinalLadder] = None,
    chain: Optional[Sequence[Sequence[int]]] = None,
    t0: Optional[int] = None,
    decided_at: Optional[int] = None,
    budget: int = BUILD_BUDGET,
) -> DefeatSummary:
    """Run the mode's builder against each coloring over all nodes.

    Per coloring the fresh rung is inspected for palette coverage; search
    exhaustion or budget overrun is recorded on that outcome instead of
    aborting the batch.  Structural defects (bad mode, bad challenge, bad
    ladders) do abort, since they would sink every run the same way.
    """
    if mode not in ("transitive", "coherent", "sparse"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    if not colorings:
        return DefeatSummary(mode, k if k is not None else 0, ())
    everyone = tuple(range(tree.n))
    outcomes = []
    for idx, f in enumerate(colorings):
        f.validate(tree)
        depth = k if k is not None else f.palette
        if depth < f.palette:
            raise InvalidArgumentError(
                f"k={depth} cannot show all {f.palette} colors on one rung"
            )
        if mode == "coherent":
            pools = tuple(tuple(lvl) for lvl in chain) if chain else label_quantile_chain(tree, depth)
            ch = Challenge(everyone, f, None, pools)
            base = nu if nu is not None else full_label_ladder(tree, tree.max_label() + 1)
            ladder = widen_ladder(base, tree.max_label() + 1)
        else:
            ch = Challenge(everyone, f, t0 if mode == "sparse" else None)
        try:
            if mode == "transitive":
                result = extend_transitive(tree, system, ch, depth, budget=budget)
            elif mode == "coherent":
                result = extend_coherent(tree, system, ladder, ch, depth, budget=budget)
            else:
                result = extend_sparse(
                    tree, system, ch, depth, decided_at=decided_at, budget=budget
                )
        except (ExhaustedError, ResourceLimitError) as exc:
            outcomes.append(
                DefeatOutcome(
                    idx, {c: False for c in range(f.palette)}, False,
                    None, None, (), (), None, (), error=str(exc),
                )
            )
            continue
        rung = result.rung()
        seen = {f.of(v) for v in rung}
        defeated = {c: c in seen for c in range(f.palette)}
        outcomes.append(
            DefeatOutcome(
                idx, defeated, all(defeated.values()),
                result.new_node, result.new_label, rung,
                tuple(f.of(v) for v in rung), result.x, result.r_sizes,
            )
        )
    return DefeatSummary(mode, k if k is not None else colorings[0].palette, tuple(outcomes))
