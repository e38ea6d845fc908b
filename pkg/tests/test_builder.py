"""Builder tests: frozen runs on tiny trees, oracle cross-checks on the
waypoint sets, decision-point scans, and the defeat harness bookkeeping.

The 8-node tree only supports scaffolds of depth <= 1 (the root is the
only node with two incomparable-pair-bearing successors), so the deeper
runs live on the 42-node tree.
"""

import copy

import pytest

from treeladders.builder import (
    Challenge,
    decide_coloring,
    defeat_colorings,
    extend_coherent,
    extend_sparse,
    extend_transitive,
    full_label_ladder,
    label_quantile_chain,
    node_decides,
    widen_ladder,
)
from treeladders.errors import (
    ExhaustedError,
    InvalidArgumentError,
    InvalidChallengeError,
    MissingLadderEntryError,
    PreconditionError,
)
from treeladders.graphcore import Coloring, constant_coloring
from treeladders.ladder import (
    LadderSystem,
    OrdinalLadder,
    graph_of,
    is_coherent,
    is_sparse,
    is_transitive,
)

import oracles


@pytest.fixture(scope="module")
def empty_system(tree_s123):
    return LadderSystem(rungs={}).validate(tree_s123)


@pytest.fixture(scope="module")
def empty_system42(tree42):
    return LadderSystem(rungs={}).validate(tree42)


@pytest.fixture(scope="module")
def chain_system42(tree42):
    """Every node's rung is its full ancestor chain (root included)."""
    return LadderSystem(
        rungs={v: tuple(tree42.strict_ancestors(v)) for v in range(1, tree42.n)}
    ).validate(tree42)


def everyone(tree):
    return tuple(range(tree.n))


# -- challenge validation -------------------------------------------------------


class TestChallenge:
    def test_validate_returns_self(self, tree_s123):
        ch = Challenge(everyone(tree_s123), constant_coloring(tree_s123, 0))
        assert ch.validate(tree_s123) is ch

    def test_empty_eligible_set(self, tree_s123):
        with pytest.raises(InvalidChallengeError):
            Challenge((), constant_coloring(tree_s123, 0)).validate(tree_s123)

    def test_repeated_node(self, tree_s123):
        with pytest.raises(InvalidChallengeError):
            Challenge((1, 1, 2), constant_coloring(tree_s123, 0)).validate(tree_s123)

    def test_foreign_node(self, tree_s123):
        with pytest.raises(InvalidArgumentError):
            Challenge((99,), constant_coloring(tree_s123, 0)).validate(tree_s123)

    def test_foreign_t0(self, tree_s123):
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(InvalidArgumentError):
            Challenge((1, 2), f, t0=99).validate(tree_s123)

    def test_chain_level_empty(self, tree_s123):
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(InvalidChallengeError, match="empty"):
            Challenge((1, 2), f, None, ((),)).validate(tree_s123)

    def test_chain_not_increasing(self, tree_s123):
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(InvalidChallengeError, match="not increasing"):
            Challenge((1, 2), f, None, ((1, 2), (1,))).validate(tree_s123)

    def test_chain_outside_eligible_set(self, tree_s123):
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(InvalidChallengeError, match="leaves"):
            Challenge((1, 2), f, None, ((3,),)).validate(tree_s123)


# -- transitive mode ------------------------------------------------------------


class TestExtendTransitive:
    def test_k1_constant_frozen(self, tree_s123, empty_system, ids):
        f = constant_coloring(tree_s123, 0)
        res = extend_transitive(
            tree_s123, empty_system, Challenge(everyone(tree_s123), f), 1
        )
        # base anchor is the root, the first waypoint is the canonical-least
        # eligible node over it -- the root itself -- and the left branch
        # climbs to the pair ([1], [2])
        assert res.rung() == (0,)
        assert res.state.psi == {"": 0, "0": ids(1), "1": ids(2)}
        assert res.state.phi == {"": 0}
        assert res.state.schedule == (0,)
        assert res.x == "0"
        assert res.r_sizes == (8,)
        assert res.new_node == 8
        assert res.new_label == 4
        assert res.tree.parents[res.new_node] == ids(1)
        assert res.tree.n == tree_s123.n + 1
        ok, _ = is_transitive(res.tree, res.system)
        assert ok

    def test_base_waypoint_set_matches_oracle(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        res = extend_transitive(
            tree_s123, empty_system, Challenge(everyone(tree_s123), f), 1
        )
        brute = oracles.r_transitive(
            tree_s123, empty_system, range(tree_s123.n), f, 0, [], 0
        )
        assert brute == list(range(tree_s123.n))
        assert res.r_sizes == (len(brute),)
        assert res.rung()[0] == brute[0]

    def test_k0_gives_empty_rung(self, tree_s123, ladder_a):
        f = constant_coloring(tree_s123, 0)
        res = extend_transitive(
            tree_s123, ladder_a, Challenge(everyone(tree_s123), f), 0
        )
        assert res.rung() == ()
        assert res.x == ""
        assert res.r_sizes == ()
        assert res.tree.parents[res.new_node] == 0
        ok, _ = is_transitive(res.tree, res.system)
        assert ok

    def test_missing_color_level_is_skipped(self, tree42, empty_system42):
        # palette says two colors but every node wears 0: the color-1 level
        # has an empty waypoint set, the build records it and carries on,
        # and the rung comes out one short
        f = Coloring(tuple(0 for _ in range(tree42.n)), 2).validate(tree42)
        res = extend_transitive(
            tree42, empty_system42, Challenge(everyone(tree42), f), 2
        )
        assert res.rung() == (0,)
        assert res.r_sizes == (42, 0)
        assert sorted(res.state.phi) == [""]
        assert len(res.state.psi) == 7  # full binary scaffold, 2^(k+1)-1 anchors
        assert res.x == "00"
        ok, _ = is_transitive(res.tree, res.system)
        assert ok

    def test_k2_exhausts_on_small_tree(self, tree_s123, empty_system):
        # depth 2 needs two incomparable anchors that each carry their own
        # incomparable pair above; only [1] has one on this tree
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(ExhaustedError):
            extend_transitive(
                tree_s123, empty_system, Challenge(everyone(tree_s123), f), 2
            )

    def test_two_color_chain_frozen(self, tree42, chain_system42):
        f = Coloring(tuple(tree42.depth[v] % 2 for v in range(tree42.n)), 2).validate(
            tree42
        )
        ch = Challenge(everyone(tree42), f)
        res = extend_transitive(tree42, chain_system42, ch, 2)
        assert [tree42.seq(v) for v in res.rung()] == [(), (1,)]
        assert res.r_sizes == (16, 11)
        assert res.x == "00"
        colors = oracles.verify_build(
            res.tree, res, tree42, chain_system42, ch, 2, "transitive", f
        )
        assert colors == {0, 1}

    def test_requires_transitive_input(self, tree_s123, ids):
        broken = LadderSystem(rungs={ids(1, 2, 3): (ids(1), ids(1, 2))}).validate(
            tree_s123
        )
        ok, _ = is_transitive(tree_s123, broken)
        assert not ok
        with pytest.raises(PreconditionError):
            extend_transitive(
                tree_s123,
                broken,
                Challenge(everyone(tree_s123), constant_coloring(tree_s123, 0)),
                1,
            )

    def test_explicit_new_label(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        res = extend_transitive(
            tree_s123, empty_system, Challenge(everyone(tree_s123), f), 1,
            new_label=17,
        )
        assert res.new_label == 17
        assert res.tree.labels[res.new_node] == 17

    def test_inputs_untouched(self, tree_s123, ladder_a):
        f = constant_coloring(tree_s123, 0)
        rungs_before = copy.deepcopy(ladder_a.rungs)
        n_before = tree_s123.n
        ch = Challenge(everyone(tree_s123), f)
        extend_transitive(tree_s123, ladder_a, ch, 1)
        assert tree_s123.n == n_before
        assert ladder_a.rungs == rungs_before
        assert ch.A == everyone(tree_s123)

    def test_deterministic(self, tree42, chain_system42):
        f = Coloring(tuple(tree42.depth[v] % 2 for v in range(tree42.n)), 2).validate(
            tree42
        )
        ch = Challenge(everyone(tree42), f)
        a = extend_transitive(tree42, chain_system42, ch, 2)
        b = extend_transitive(tree42, chain_system42, ch, 2)
        assert (a.new_node, a.new_label, a.x, a.rung()) == (
            b.new_node, b.new_label, b.x, b.rung()
        )
        assert a.state == b.state


# -- coherent mode --------------------------------------------------------------


class TestExtendCoherent:
    def test_needs_a_chain(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        nu = full_label_ladder(tree_s123, 4)
        with pytest.raises(InvalidChallengeError):
            extend_coherent(
                tree_s123, empty_system, nu, Challenge(everyone(tree_s123), f), 1
            )

    def test_supp_free_base_frozen(self, tree_s123, empty_system, ids):
        f = constant_coloring(tree_s123, 0)
        nu = full_label_ladder(tree_s123, 4)
        assert nu.rungs == {2: (1,), 3: (1, 2), 4: (1, 2, 3)}
        chain = label_quantile_chain(tree_s123, 1)
        assert chain == ((0, ids(1)), everyone(tree_s123))
        res = extend_coherent(
            tree_s123, empty_system, nu,
            Challenge(everyone(tree_s123), f, None, chain), 1,
        )
        assert res.rung() == (0,)
        assert res.r_sizes == (2,)
        assert res.state.markers == (None, 2)
        assert res.tree.parents[res.new_node] == ids(2)
        # the fresh node is flagged and its companion entry lists the
        # prefix cuts of the ladder's rung at the new label
        assert res.system.supp == frozenset({res.new_node})
        assert res.system.eta.rung(res.new_node) == (0, ids(2))
        for check in (is_transitive, is_coherent):
            ok, _ = check(res.tree, res.system)
            assert ok

    def test_singleton_ladder_frozen(self, tree42, empty_system42):
        f = Coloring(tuple(v % 2 for v in range(tree42.n)), 2).validate(tree42)
        nu = OrdinalLadder({7: (1,)}, frozenset({7})).validate()
        chain = label_quantile_chain(tree42, 2)
        assert [len(level) for level in chain] == [4, 15, 42]
        res = extend_coherent(
            tree42, empty_system42, nu,
            Challenge(everyone(tree42), f, None, chain), 2,
        )
        assert [tree42.seq(v) for v in res.rung()] == [(2,)]
        assert res.r_sizes == (1, 0)
        assert res.state.markers == (1, 2, 4)
        assert res.system.eta.rung(res.new_node) == (0,)
        for check in (is_transitive, is_coherent):
            ok, _ = check(res.tree, res.system)
            assert ok

    def test_verify_against_oracle_r_sets(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        nu = full_label_ladder(tree_s123, 4)
        chain = label_quantile_chain(tree_s123, 1)
        ch = Challenge(everyone(tree_s123), f, None, chain)
        res = extend_coherent(tree_s123, empty_system, nu, ch, 1)
        colors = oracles.verify_build(
            res.tree, res, tree_s123, empty_system, ch, 1, "coherent", f,
            nu=nu, chain=chain,
        )
        assert colors == {0}

    def test_missing_ladder_entry(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        nu = OrdinalLadder({2: (1,)}, frozenset({2})).validate()
        chain = label_quantile_chain(tree_s123, 1)
        with pytest.raises(MissingLadderEntryError):
            extend_coherent(
                tree_s123, empty_system, nu,
                Challenge(everyone(tree_s123), f, None, chain), 1,
            )

    def test_requires_coherent_input(self, tree_s123, ids):
        # transitive but not coherent: [1,2] sits in a rung yet its own
        # rung is not the cut below it
        lopsided = LadderSystem(rungs={
            ids(1, 2, 3): (ids(1, 2),),
            ids(1, 2): (ids(1),),
        }).validate(tree_s123)
        ok, _ = is_transitive(tree_s123, lopsided)
        assert ok
        ok, _ = is_coherent(tree_s123, lopsided)
        assert not ok
        f = constant_coloring(tree_s123, 0)
        nu = full_label_ladder(tree_s123, 4)
        chain = label_quantile_chain(tree_s123, 1)
        with pytest.raises(PreconditionError):
            extend_coherent(
                tree_s123, lopsided, nu,
                Challenge(everyone(tree_s123), f, None, chain), 1,
            )

    def test_widen_ladder(self, tree_s123):
        nu = OrdinalLadder({3: (1, 2)}, frozenset({3})).validate()
        wide = widen_ladder(nu, 5)
        assert wide.rungs[5] == (1, 2)
        assert 5 in wide.limit
        assert widen_ladder(wide, 5) is wide
        with pytest.raises(MissingLadderEntryError):
            widen_ladder(OrdinalLadder({}, frozenset()).validate(), 1)


# -- sparse mode ----------------------------------------------------------------


class TestExtendSparse:
    def test_k1_two_colors_frozen(self, tree_s123, empty_system, ids):
        # color 0 on the depth-1 nodes: the waypoint must dodge coverage at
        # the root's label, which on an edgeless graph just means sitting
        # above the root, so the canonical-least choice is [1]
        f = Coloring(
            tuple(0 if tree_s123.depth[v] == 1 else 1 for v in range(tree_s123.n)), 2
        ).validate(tree_s123)
        res = extend_sparse(
            tree_s123, empty_system, Challenge(everyone(tree_s123), f), 1
        )
        assert res.rung() == (ids(1),)
        assert res.r_sizes == (3,)
        assert res.new_label == 4
        assert res.tree.parents[res.new_node] == ids(1, 2)
        ok, _ = is_sparse(res.tree, res.system)
        assert ok

    def test_base_waypoint_set_matches_oracle(self, tree_s123, empty_system, ids):
        f = Coloring(
            tuple(0 if tree_s123.depth[v] == 1 else 1 for v in range(tree_s123.n)), 2
        ).validate(tree_s123)
        graph = graph_of(tree_s123, empty_system)
        brute = oracles.r_sparse(
            tree_s123, graph, range(tree_s123.n), f, 0, [], 0
        )
        assert brute == [ids(1), ids(2), ids(3)]

    def test_constant_coloring_k1(self, tree_s123, empty_system, ids):
        f = constant_coloring(tree_s123, 0)
        res = extend_sparse(
            tree_s123, empty_system, Challenge(everyone(tree_s123), f), 1
        )
        # everything but the root escapes coverage at the root's label
        assert res.rung() == (ids(1),)
        assert res.r_sizes == (7,)

    def test_t0_anchors_the_base(self, tree_s123, empty_system, ids):
        f = constant_coloring(tree_s123, 0)
        res = extend_sparse(
            tree_s123, empty_system,
            Challenge(everyone(tree_s123), f, t0=ids(1)), 0,
        )
        assert res.tree.parents[res.new_node] == ids(1)
        assert res.rung() == ()

    def test_exhausts_above_narrow_t0(self, tree_s123, empty_system, ids):
        # every waypoint over [1] leaves at most one node above itself, so
        # no anchor pair exists and the scaffold search comes up empty
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(ExhaustedError):
            extend_sparse(
                tree_s123, empty_system,
                Challenge(everyone(tree_s123), f, t0=ids(1)), 1,
            )

    def test_decided_at_gate(self, tree_s123, empty_system, ids):
        f = constant_coloring(tree_s123, 0)
        graph = graph_of(tree_s123, empty_system)
        ok, _ = node_decides(tree_s123, graph, f, ids(1), 9)
        assert not ok
        with pytest.raises(PreconditionError):
            extend_sparse(
                tree_s123, empty_system,
                Challenge(everyone(tree_s123), f, t0=ids(1)), 1,
                decided_at=9,
            )
        decision = decide_coloring(tree_s123, graph, f, 1)
        assert decision.t0 == 0
        res = extend_sparse(
            tree_s123, empty_system,
            Challenge(everyone(tree_s123), f, t0=decision.t0), 1,
            decided_at=1,
        )
        assert res.rung() == (ids(1),)

    def test_requires_sparse_input(self, tree_s123, ladder_a):
        ok, _ = is_sparse(tree_s123, ladder_a)
        assert not ok
        with pytest.raises(PreconditionError):
            extend_sparse(
                tree_s123, ladder_a,
                Challenge(everyone(tree_s123), constant_coloring(tree_s123, 0)), 1,
            )

    def test_deterministic_and_inputs_untouched(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        n_before = tree_s123.n
        ch = Challenge(everyone(tree_s123), f)
        a = extend_sparse(tree_s123, empty_system, ch, 1)
        b = extend_sparse(tree_s123, empty_system, ch, 1)
        assert a.state == b.state
        assert a.rung() == b.rung()
        assert tree_s123.n == n_before
        assert empty_system.rungs == {}


# -- decision points ------------------------------------------------------------


class TestDecideColoring:
    def test_edgeless_constant_scan(self, tree42, empty_system42):
        graph = graph_of(tree42, empty_system42)
        f = constant_coloring(tree42, 0)
        # rising thresholds push the decision point off the root: with no
        # edges a node is only ever covered at its own label, so the
        # escape-everything alternative needs deep high labels below, and
        # the bounded alternative needs a subtree that stops early
        for lam, seq, tags in (
            (1, (), ("unbounded",)),
            (4, (2,), ("unbounded",)),
            (7, (6,), ("bounded",)),
        ):
            decision = decide_coloring(tree42, graph, f, lam)
            assert tree42.seq(decision.t0) == seq
            assert decision.verdicts == {0: tags}

    def test_node_decides_detail(self, tree42, empty_system42):
        graph = graph_of(tree42, empty_system42)
        f = constant_coloring(tree42, 0)
        assert node_decides(tree42, graph, f, 0, 3) == (True, {0: ("unbounded",)})
        six = tree42.node_by_seq((6,))
        assert node_decides(tree42, graph, f, six, 7) == (True, {0: ("bounded",)})

    def test_leaves_always_decide(self, tree_s123, empty_system):
        # a childless node's subtree is itself, so every color is either
        # absent above it (vacuously bounded) or covered at its own label;
        # a finite tree therefore always has a decision point somewhere
        graph = graph_of(tree_s123, empty_system)
        f = Coloring(tuple(v % 2 for v in range(tree_s123.n)), 2).validate(tree_s123)
        for leaf in (v for v in range(tree_s123.n) if not tree_s123.children[v]):
            ok, verdicts = node_decides(tree_s123, graph, f, leaf, 99)
            assert ok
            assert all("bounded" in tags for tags in verdicts.values())
        decision = decide_coloring(tree_s123, graph, f, 99)
        assert decision.t0 is not None

    def test_alternatives_match_brute_quantifiers(self, tree_s123, ladder_a):
        graph = graph_of(tree_s123, ladder_a)
        f = Coloring(tuple(v % 2 for v in range(tree_s123.n)), 2).validate(tree_s123)
        for t in range(tree_s123.n):
            for lam in (1, 2, 3, 4):
                _, verdicts = node_decides(tree_s123, graph, f, t, lam)
                for color in range(2):
                    tags = verdicts[color]
                    assert ("unbounded" in tags) == oracles.o_alt_unbounded(
                        tree_s123, graph, f, t, color, lam
                    )
                    assert ("bounded" in tags) == oracles.o_alt_bounded(
                        tree_s123, graph, f, t, color
                    )


# -- the defeat harness ----------------------------------------------------------


class TestDefeatColorings:
    def test_singleton_palette_defeated(self, tree_s123, ladder_a):
        f = constant_coloring(tree_s123, 0)
        summary = defeat_colorings(tree_s123, ladder_a, [f], "transitive", k=1)
        out = summary.outcomes[0]
        assert out.defeated == {0: True}
        assert out.fully_defeated
        assert out.rung == (0,)
        assert out.rung_colors == (0,)
        assert out.r_sizes == (8,)
        assert summary.fraction_defeated == 1.0

    def test_two_colors_fully_defeated(self, tree42, chain_system42):
        f = Coloring(tuple(tree42.depth[v] % 2 for v in range(tree42.n)), 2).validate(
            tree42
        )
        summary = defeat_colorings(tree42, chain_system42, [f], "transitive", k=2)
        out = summary.outcomes[0]
        assert out.defeated == {0: True, 1: True}
        assert out.fully_defeated
        assert [tree42.seq(v) for v in out.rung] == [(), (1,)]
        assert out.rung_colors == (0, 1)
        assert out.r_sizes == (16, 11)
        assert out.x == "00"

    def test_absent_color_stays_alive(self, tree42, empty_system42):
        f = Coloring(tuple(0 for _ in range(tree42.n)), 2).validate(tree42)
        summary = defeat_colorings(tree42, empty_system42, [f], "transitive", k=2)
        out = summary.outcomes[0]
        assert out.defeated == {0: True, 1: False}
        assert not out.fully_defeated
        assert out.error is None
        assert summary.fraction_defeated == 0.0

    def test_exhaustion_is_recorded_not_raised(self, tree_s123, ladder_a):
        f = Coloring(tuple(v % 2 for v in range(tree_s123.n)), 2).validate(tree_s123)
        summary = defeat_colorings(tree_s123, ladder_a, [f], "transitive", k=2)
        out = summary.outcomes[0]
        assert out.error is not None
        assert out.defeated == {0: False, 1: False}
        assert out.rung == ()
        assert out.new_node is None

    def test_rung_colors_agree_with_coloring(self, tree42, chain_system42):
        f = Coloring(tuple(tree42.depth[v] % 2 for v in range(tree42.n)), 2).validate(
            tree42
        )
        out = defeat_colorings(
            tree42, chain_system42, [f], "transitive", k=2
        ).outcomes[0]
        assert out.rung_colors == tuple(f.of(v) for v in out.rung)
        assert out.defeated == {
            c: c in set(out.rung_colors) for c in range(f.palette)
        }

    def test_empty_batch(self, tree_s123, empty_system):
        summary = defeat_colorings(tree_s123, empty_system, [], "transitive")
        assert summary.outcomes == ()
        assert summary.k == 0
        assert summary.fraction_defeated == 0.0

    def test_k_below_palette_rejected(self, tree_s123, empty_system):
        f = Coloring(tuple(v % 2 for v in range(tree_s123.n)), 2).validate(tree_s123)
        with pytest.raises(InvalidArgumentError):
            defeat_colorings(tree_s123, empty_system, [f], "transitive", k=1)

    def test_unknown_mode_rejected(self, tree_s123, empty_system):
        f = constant_coloring(tree_s123, 0)
        with pytest.raises(InvalidArgumentError):
            defeat_colorings(tree_s123, empty_system, [f], "weird")

    def test_as_dict_shape(self, tree_s123, ladder_a):
        f = constant_coloring(tree_s123, 0)
        payload = defeat_colorings(tree_s123, ladder_a, [f], "transitive", k=1).as_dict()
        assert payload["mode"] == "transitive"
        assert payload["fraction_defeated"] == 1.0
        entry = payload["outcomes"][0]
        assert entry["defeated"] == {"0": True}
        assert entry["rung"] == [0]

    def test_coherent_and_sparse_modes_run(self, tree42, empty_system42):
        f = Coloring(tuple(v % 2 for v in range(tree42.n)), 2).validate(tree42)
        coh = defeat_colorings(tree42, empty_system42, [f], "coherent", k=2)
        assert [tree42.seq(v) for v in coh.outcomes[0].rung] == [(2,)]
        assert coh.outcomes[0].defeated == {0: True, 1: False}
        # sparse depth 2 needs a taller tree; the failure is an outcome,
        # not an exception
        spa = defeat_colorings(tree42, empty_system42, [f], "sparse", k=2)
        assert spa.outcomes[0].error is not None


# -- scaffold shape --------------------------------------------------------------


class TestScaffoldShape:
    def test_full_binary_anchor_map(self, tree42, chain_system42):
        f = Coloring(tuple(tree42.depth[v] % 2 for v in range(tree42.n)), 2).validate(
            tree42
        )
        res = extend_transitive(
            tree42, chain_system42, Challenge(everyone(tree42), f), 2
        )
        psi, phi = res.state.psi, res.state.phi
        assert sorted(psi) == sorted(
            "".join(bits) for m in range(3)
            for bits in __import__("itertools").product("01", repeat=m)
        )
        assert all(len(key) < 2 for key in phi)
        for key, anchor in psi.items():
            if key:
                lower = phi.get(key[:-1], psi[key[:-1]])
                assert tree42.leq(lower, anchor)
            if key in phi:
                assert tree42.leq(anchor, phi[key])
        for key in phi:
            a, b = psi[key + "0"], psi[key + "1"]
            assert not tree42.comparable(a, b)

    def test_rung_is_left_branch_waypoints(self, tree42, chain_system42):
        f = Coloring(tuple(tree42.depth[v] % 2 for v in range(tree42.n)), 2).validate(
            tree42
        )
        res = extend_transitive(
            tree42, chain_system42, Challenge(everyone(tree42), f), 2
        )
        expected = tuple(
            res.state.phi[res.x[:n]] for n in range(2) if res.x[:n] in res.state.phi
        )
        assert res.rung() == expected
        assert res.rung() == res.system.rung(res.new_node)
