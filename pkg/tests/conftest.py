import pytest

from treeladders.ladder import LadderSystem
from treeladders.tree import Tree, generate_ts_tree

import corpus


@pytest.fixture(scope="session")
def tree_s123():
    """Full increasing-sequence tree over {1,2,3}, depth 3: 8 nodes."""
    return generate_ts_tree((1, 2, 3), 3)


@pytest.fixture(scope="session")
def ids(tree_s123):
    """Sequence -> node id shorthand for the 8-node tree."""
    def look(*seq):
        return tree_s123.node_by_seq(tuple(seq))
    return look


@pytest.fixture(scope="session")
def ladder_a(tree_s123, ids):
    """C_[1,2] = ([1]), C_[1,2,3] = ([1],[1,2]); the derived graph is a
    triangle on [1], [1,2], [1,2,3]."""
    return LadderSystem(rungs={
        ids(1, 2): (ids(1),),
        ids(1, 2, 3): (ids(1), ids(1, 2)),
    }).validate(tree_s123)


@pytest.fixture(scope="session")
def ladder_b(tree_s123, ids):
    """Four singleton rungs; the derived graph is acyclic."""
    return LadderSystem(rungs={
        ids(1, 2): (ids(1),),
        ids(1, 3): (ids(1),),
        ids(2, 3): (ids(2),),
        ids(1, 2, 3): (ids(1, 2),),
    }).validate(tree_s123)


@pytest.fixture(scope="session")
def star_system(tree_s123, ids):
    """[1] rung-linked to three nodes above it: hosts the smallest pattern
    embedding (one hub, three spokes)."""
    return LadderSystem(rungs={
        ids(1, 2): (ids(1),),
        ids(1, 3): (ids(1),),
        ids(1, 2, 3): (ids(1),),
    }).validate(tree_s123)


@pytest.fixture(scope="session")
def tree42():
    return generate_ts_tree((1, 2, 3, 4, 5, 6), 3)


@pytest.fixture(scope="session")
def supp_instance():
    """Hand-built 12-node tree with one flagged node whose separator must be
    a strict prefix of its rung.

    Branch under scrutiny: root - a(1) - b(2) - c(3) - t(4); t carries the
    rung (a, b, c) with eta = (a, b); the rival t' = d(5) branches off above
    a, so the separator cut lands one step above a, keeping (a, b) only.
    """
    #             root
    #              |a(1)
    #         +----+----+
    #         |b(2)     |d(5)
    #         |c(3)     |e(6)
    #         |t(4)
    # plus filler siblings to pad the tree to 12 nodes
    parents = [None, 0, 1, 2, 3, 1, 5, 0, 7, 2, 5, 3]
    labels = [None, 1, 2, 3, 4, 5, 6, 2, 3, 7, 8, 9]
    tree = Tree(parents, labels)
    a, b, c, t = 1, 2, 3, 4
    d = 5
    from treeladders.ladder import TrueLadder
    system = LadderSystem(
        rungs={t: (a, b, c), b: (a,), c: (a, b), d: (a,)},
        supp=frozenset({t}),
        eta=TrueLadder({t: (a, b)}),
    ).validate(tree)
    return tree, system, t, d


@pytest.fixture(scope="session")
def exhaustive_corpus():
    return corpus.exhaustive_transitive_corpus()


@pytest.fixture(scope="session")
def coherent_instances():
    return corpus.coherent_corpus(500)


@pytest.fixture(scope="session")
def sparse_instances():
    return corpus.sparse_corpus(500)


@pytest.fixture(scope="session")
def non_sparse_instances():
    return corpus.non_sparse_corpus(100)


@pytest.fixture(scope="session")
def transitive_instances():
    return corpus.transitive_corpus(500)
