#!/usr/bin/env python3
"""Regenerate tests/fixtures/sparse_regression.json.

Starts from the 42-node increasing-sequence tree over labels 1..6 with a
hand-picked sparse base system whose derived graph is an odd 5-cycle
(chromatic number 3, no triangle, and the cycle changes direction four
times so it is not special).  Twenty sparse extensions against the
constant coloring — fully deterministic — leave the graph triangle-free
and special-cycle-free, and extensions only ever add vertices and edges,
so the chromatic number recorded here can never silently drop.

Run from the repository root:

    python scripts/make_sparse_fixture.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from treeladders.builder import Challenge, extend_sparse
from treeladders.graphcore import (chromatic_number, constant_coloring,
                                   find_special_cycle, find_triangle)
from treeladders.ladder import LadderSystem, graph_of, is_sparse
from treeladders.serialize import dump, ladder_to_json, tree_to_json
from treeladders.tree import generate_ts_tree

ITERATIONS = 20
K = 1
OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures",
                   "sparse_regression.json")


def base_instance():
    tree = generate_ts_tree((1, 2, 3, 4, 5, 6), 3)
    assert tree.n == 42
    m1 = tree.node_by_seq((1,))
    mid = tree.node_by_seq((1, 2))
    top_a = tree.node_by_seq((1, 2, 3))
    top_b = tree.node_by_seq((1, 4))
    # five edges, one cycle: m1-mid-top_a-root-top_b-m1
    system = LadderSystem(rungs={
        mid: (m1,),
        top_a: (0, mid),
        top_b: (0, m1),
    }).validate(tree)
    return tree, system


def main():
    tree, system = base_instance()
    ok, witness = is_sparse(tree, system)
    assert ok, witness

    for _ in range(ITERATIONS):
        f = constant_coloring(tree, 0)
        challenge = Challenge(tuple(range(tree.n)), f, 0)
        result = extend_sparse(tree, system, challenge, K)
        tree, system = result.tree, result.system

    graph = graph_of(tree, system)
    chi = chromatic_number(graph)
    assert find_triangle(graph) is None
    assert find_special_cycle(graph) is None
    assert chi >= 3

    payload = {
        "iterations": ITERATIONS,
        "k": K,
        "tree": tree_to_json(tree),
        "system": ladder_to_json(system),
        "chromatic_number": chi,
        "edge_count": graph.edge_count(),
    }
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    dump(payload, OUT)
    print(f"wrote {os.path.normpath(OUT)}: n={tree.n}, "
          f"edges={payload['edge_count']}, chi={chi}")


if __name__ == "__main__":
    main()
