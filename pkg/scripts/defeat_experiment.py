#!/usr/bin/env python3
"""Sweep random instances against random colorings and tabulate defeats.

For each builder mode this draws seeded instances, throws a batch of
colorings at each, and reports how often the extension step produced a
rung showing every color (a full defeat), how often the scaffold search
ran out of room, and the mean size of the level-0 waypoint pool.  The
transitive rows use full ancestor-chain rungs (the dense regime where
defeat is easiest); coherent and sparse rows use the random recipes.

    python scripts/defeat_experiment.py --instances 40 --colorings 8

Raising --palette deepens the scaffold by one level per extra color, and
each level burns through tree height; on the default depth-4 trees the
two-color regime is the interesting one.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from treeladders.builder import defeat_colorings
from treeladders.generators import (
    random_coherent_system,
    random_coloring,
    random_sparse_system,
    random_ts_subtree,
)
from treeladders.ladder import LadderSystem


def ancestor_chain_system(tree):
    return LadderSystem(rungs={
        v: tuple(tree.strict_ancestors(v))
        for v in tree.order()
        if tree.depth[v] > 0
    })


def run_mode(mode, instances, colorings, palette, seed):
    full, partial, errors, runs = 0, 0, 0, 0
    pool_sizes = []
    for i in range(instances):
        # depth 4 keeps two levels of incomparable pairs above the anchors,
        # which the sparse scaffold needs before it can place a second rung
        tree = random_ts_subtree(
            (1, 2, 3, 4, 5, 6, 7), 4, 34 + (i % 4) * 8, seed=seed + i
        )
        nu = None
        if mode == "transitive":
            system = ancestor_chain_system(tree)
        elif mode == "coherent":
            system, nu = random_coherent_system(
                tree, seed=seed + 500 + i, p_rung=0.5, p_label=0.15
            )
        else:
            system = random_sparse_system(
                tree, seed=seed + 500 + i, p_rung=0.2, max_size=2
            )
        batch = [
            random_coloring(tree, palette, seed=seed + 1000 + i * 31 + j)
            for j in range(colorings)
        ]
        summary = defeat_colorings(tree, system, batch, mode, k=palette, nu=nu)
        for out in summary.outcomes:
            runs += 1
            if out.error is not None:
                errors += 1
            elif out.fully_defeated:
                full += 1
                pool_sizes.append(out.r_sizes[0])
            else:
                partial += 1
                pool_sizes.append(out.r_sizes[0])
    mean_pool = sum(pool_sizes) / len(pool_sizes) if pool_sizes else 0.0
    return runs, full, partial, errors, mean_pool


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=40)
    ap.add_argument("--colorings", type=int, default=8)
    ap.add_argument("--palette", type=int, default=2)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--mode", choices=["transitive", "coherent", "sparse"],
                    help="run a single mode instead of all three")
    args = ap.parse_args()

    modes = [args.mode] if args.mode else ["transitive", "coherent", "sparse"]
    print(f"{'mode':<12} {'runs':>5} {'full':>5} {'partial':>8} "
          f"{'stalled':>8} {'mean |R0|':>10}")
    for mode in modes:
        runs, full, partial, errors, mean_pool = run_mode(
            mode, args.instances, args.colorings, args.palette, args.seed
        )
        print(f"{mode:<12} {runs:>5} {full:>5} {partial:>8} "
              f"{errors:>8} {mean_pool:>10.1f}")


if __name__ == "__main__":
    main()
