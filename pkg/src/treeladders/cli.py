"""Command line front end.

Subcommands: gen, check, analyze, defeat, export.  Exit codes: 0 success /
predicate holds, 1 predicate fails or some coloring survived, 2 bad input,
3 resource or search limits.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import serialize
from .builder import (
    Challenge,
    decide_coloring,
    defeat_colorings,
    label_quantile_chain,
)
from .errors import (
    ExhaustedError,
    InvalidArgumentError,
    ResourceLimitError,
    TreeLaddersError,
)
from .generators import (
    generate_system,
    random_coloring,
    random_tree,
)
from .graphcore import (
    chromatic_number,
    clique_chain_check,
    defeater_coloring,
    find_mono_clique,
    find_special_cycle,
    find_triangle,
    min_pair_connectivity_over,
    pair_connectivity,
    separates,
    separator,
)
from .ladder import (
    assert_finite_reading,
    graph_of,
    is_coherent,
    is_sparse,
    is_transitive,
)
from .tree import Tree, generate_ts_tree


def _emit(payload, path):
    if path:
        serialize.dump(payload, path)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _load_tree(path: str) -> Tree:
    return serialize.tree_from_json(serialize.load(path))


def _need_seed(args):
    if args.seed is None:
        raise InvalidArgumentError("randomized generation needs --seed")
    return args.seed


# -- gen -----------------------------------------------------------------------


def _cmd_gen(args) -> int:
    if args.what == "tree":
        if args.s:
            S = [int(x) for x in args.s.split(",") if x.strip()]
            depth = args.depth if args.depth is not None else len(S)
            tree = generate_ts_tree(S, depth)
        elif args.random is not None:
            tree = random_tree(args.random, _need_seed(args))
        else:
            raise InvalidArgumentError("gen tree needs --s or --random")
        _emit(serialize.tree_to_json(tree), args.out)
        return 0

    tree = _load_tree(args.tree)
    if args.what == "system":
        made = generate_system(tree, args.require, _need_seed(args))
        if args.require == "coherent":
            system, nu = made
            if args.nu_out:
                serialize.dump(serialize.ordinal_to_json(nu), args.nu_out)
        else:
            system = made
        _emit(serialize.ladder_to_json(system), args.out)
        return 0

    if args.what == "coloring":
        seed = _need_seed(args)
        if args.count is None:
            f = random_coloring(tree, args.palette, seed)
            _emit(serialize.coloring_to_json(f), args.out)
        else:
            fs = [random_coloring(tree, args.palette, seed + i) for i in range(args.count)]
            _emit(serialize.coloring_list_to_json(fs), args.out)
        return 0

    if args.what == "challenge":
        f = serialize.coloring_from_json(serialize.load(args.coloring), tree, args.palette)
        chain = (
            label_quantile_chain(tree, args.chain_levels)
            if args.chain_levels is not None
            else ()
        )
        ch = Challenge(tuple(range(tree.n)), f, args.t0, chain).validate(tree)
        _emit(serialize.challenge_to_json(ch), args.out)
        return 0

    raise InvalidArgumentError(f"unknown generation target {args.what!r}")


# -- check ---------------------------------------------------------------------

_PREDICATES = {
    "transitive": is_transitive,
    "coherent": is_coherent,
    "sparse": is_sparse,
}


def _cmd_check(args) -> int:
    tree = _load_tree(args.tree)
    system = serialize.ladder_from_json(serialize.load(args.ladder), tree)
    if args.predicate == "finite":
        try:
            assert_finite_reading(system)
            holds, witness = True, None
        except TreeLaddersError as exc:
            holds, witness = False, str(exc)
    else:
        holds, witness = _PREDICATES[args.predicate](tree, system)
    if args.json:
        _emit({"predicate": args.predicate, "holds": holds, "witness": _plain(witness)}, None)
    else:
        print(f"{args.predicate}: {'holds' if holds else 'fails'}")
        if witness is not None:
            print(f"witness: {witness}")
    return 0 if holds else 1


# -- analyze --------------------------------------------------------------------


def _plain(value):
    """JSON-friendly copy: dataclasses to dicts, tuples to lists, int keys to str."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return _plain(dataclasses.asdict(value))
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [_plain(v) for v in items]
    return value


def _analyze_payload(tree, system, coloring, lam, budget, verify_budget):
    graph = graph_of(tree, system)
    trans, trans_w = is_transitive(tree, system)
    coh, coh_w = is_coherent(tree, system)
    sparse, sparse_w = is_sparse(tree, system, graph)
    payload = {
        "nodes": tree.n,
        "edges": graph.edge_count(),
        "transitive": {"holds": trans, "witness": trans_w},
        "coherent": {"holds": coh, "witness": coh_w},
        "sparse": {"holds": sparse, "witness": sparse_w},
        "triangle": find_triangle(graph),
    }
    cycle = find_special_cycle(graph)
    payload["special_cycle"] = (
        None
        if cycle is None
        else {
            "bottom": cycle.bottom,
            "top": cycle.top,
            "arcs": [list(cycle.arc_a), list(cycle.arc_b)],
        }
    )
    ok, witness = clique_chain_check(graph)
    payload["clique_chain"] = {"holds": ok, "witness": witness}
    try:
        payload["chromatic"] = {"exact": chromatic_number(graph, budget)}
    except ResourceLimitError as exc:
        payload["chromatic"] = {"exact": None, "lower": exc.lower, "upper": exc.upper}

    if trans and coh:
        entries = []
        seen = 0
        order = sorted(range(tree.n), key=tree.canonical_key)
        for i, a in enumerate(order):
            for b in order[i + 1:]:
                if tree.comparable(a, b):
                    continue
                F = separator(graph, a, b)
                entry = {"pair": [a, b], "blocker": list(F)}
                if a not in F and b not in F:
                    entry["verified"] = separates(graph, F, a, b)
                else:
                    # a rung member can be the other endpoint itself
                    entry["verified"] = None
                entries.append(entry)
                seen += 1
                if seen >= 5:
                    break
            if seen >= 5:
                break
        payload["separators"] = entries
    else:
        payload["separators"] = None

    if tree.n <= verify_budget:
        pairs = min_pair_connectivity_over(graph, range(tree.n)) if tree.n >= 2 else None
        payload["min_pair_connectivity"] = (
            None if pairs is None else {"value": pairs[0], "pair": list(pairs[1])}
        )
    else:
        payload["min_pair_connectivity"] = None

    if coloring is not None:
        section = {"proper": coloring.is_proper(graph)}
        if trans:
            refined = defeater_coloring(graph, coloring)
            section["defeater"] = {
                "palette": refined.coloring.palette,
                "height": refined.height,
                "proper": refined.coloring.is_proper(graph),
            }
            hit = find_mono_clique(graph, coloring)
            section["mono_clique"] = (
                None if hit is None else {"top": hit[0], "members": list(hit[1])}
            )
        if lam is not None:
            decision = decide_coloring(tree, graph, coloring, lam)
            section["decision"] = {
                "t0": decision.t0,
                "verdicts": {str(c): list(v) for c, v in decision.verdicts.items()},
            }
        payload["coloring"] = section
    return payload


def _cmd_analyze(args) -> int:
    tree = _load_tree(args.tree)
    system = serialize.ladder_from_json(serialize.load(args.ladder), tree)
    coloring = None
    if args.coloring:
        coloring = serialize.coloring_from_json(serialize.load(args.coloring), tree, args.palette)
    payload = _plain(
        _analyze_payload(tree, system, coloring, args.lam, args.budget, args.verify_budget)
    )
    if args.json or args.out:
        _emit(payload, args.out)
    else:
        print(f"nodes: {payload['nodes']}  edges: {payload['edges']}")
        for name in ("transitive", "coherent", "sparse"):
            verdict = "holds" if payload[name]["holds"] else "fails"
            print(f"{name}: {verdict}")
        print(f"triangle: {payload['triangle']}")
        print(f"special cycle: {payload['special_cycle']}")
        print(f"chromatic: {payload['chromatic']}")
        print(f"clique chain: {payload['clique_chain']['holds']}")
        if payload["separators"] is not None:
            for entry in payload["separators"]:
                print(
                    f"separator {entry['pair']}: {entry['blocker']}"
                    f" verified={entry['verified']}"
                )
        if payload["min_pair_connectivity"] is not None:
            print(f"min pair connectivity: {payload['min_pair_connectivity']}")
        if coloring is not None:
            print(f"coloring: {payload['coloring']}")
    return 0


# -- defeat ---------------------------------------------------------------------


def _cmd_defeat(args) -> int:
    tree = _load_tree(args.tree)
    system = serialize.ladder_from_json(serialize.load(args.ladder), tree)
    colorings = serialize.coloring_list_from_json(serialize.load(args.colorings), tree)
    nu = serialize.ordinal_from_json(serialize.load(args.nu)) if args.nu else None
    summary = defeat_colorings(
        tree,
        system,
        colorings,
        args.mode,
        k=args.k,
        nu=nu,
        t0=args.t0,
        decided_at=args.decided_at,
    )
    payload = summary.as_dict()
    if args.json or args.out:
        _emit(payload, args.out)
    else:
        print(
            f"mode={summary.mode} k={summary.k} "
            f"defeated {summary.fraction_defeated:.0%} of {len(summary.outcomes)}"
        )
        for o in summary.outcomes:
            if o.error:
                print(f"  coloring {o.index}: stalled ({o.error})")
            else:
                print(
                    f"  coloring {o.index}: rung {list(o.rung)} colors {list(o.rung_colors)}"
                    f" fully_defeated={o.fully_defeated}"
                )
    return 0 if all(o.fully_defeated for o in summary.outcomes) else 1


# -- export ----------------------------------------------------------------------


def _cmd_export(args) -> int:
    tree = _load_tree(args.tree)
    system = (
        serialize.ladder_from_json(serialize.load(args.ladder), tree)
        if args.ladder
        else None
    )
    coloring = (
        serialize.coloring_from_json(serialize.load(args.coloring), tree, args.palette)
        if args.coloring
        else None
    )
    text = serialize.dot_export(tree, system, coloring)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- wiring ----------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="treeladders",
        description="Desk-scale ladder systems on labeled trees and their derived graphs.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate trees, systems, colorings, challenges")
    gen.add_argument("what", choices=["tree", "system", "coloring", "challenge"])
    gen.add_argument("--tree", help="input tree JSON (for system/coloring/challenge)")
    gen.add_argument("--s", help="comma-separated label set for the full tree")
    gen.add_argument("--depth", type=int, help="depth bound for the full tree")
    gen.add_argument("--random", type=int, metavar="N", help="random tree on N nodes")
    gen.add_argument("--require", choices=["none", "transitive", "coherent", "sparse"],
                     default="none")
    gen.add_argument("--nu-out", help="where to write the ordinal ladder (coherent)")
    gen.add_argument("--palette", type=int, default=3)
    gen.add_argument("--count", type=int, help="emit a list of this many colorings")
    gen.add_argument("--coloring", help="coloring JSON for gen challenge")
    gen.add_argument("--t0", type=int, help="base node for sparse challenges")
    gen.add_argument("--chain-levels", type=int, help="build a label-quantile chain of this depth")
    gen.add_argument("--seed", type=int, help="RNG seed (required for random output)")
    gen.add_argument("-o", "--out", help="output path (stdout otherwise)")
    gen.set_defaults(func=_cmd_gen)

    chk = sub.add_parser("check", help="evaluate a predicate on a ladder system")
    chk.add_argument("predicate", choices=["transitive", "coherent", "sparse", "finite"])
    chk.add_argument("--tree", required=True)
    chk.add_argument("--ladder", required=True)
    chk.add_argument("--json", action="store_true")
    chk.set_defaults(func=_cmd_check)

    ana = sub.add_parser("analyze", help="structure report for a system's derived graph")
    ana.add_argument("--tree", required=True)
    ana.add_argument("--ladder", required=True)
    ana.add_argument("--coloring")
    ana.add_argument("--palette", type=int)
    ana.add_argument("--lam", type=int, help="decision threshold for the coloring")
    ana.add_argument("--budget", type=int, default=200, help="exact-coloring vertex budget")
    ana.add_argument("--verify-budget", type=int, default=80,
                     help="size cap for the all-pairs connectivity sweep")
    ana.add_argument("--json", action="store_true")
    ana.add_argument("-o", "--out")
    ana.set_defaults(func=_cmd_analyze)

    dft = sub.add_parser("defeat", help="run the builder against a list of colorings")
    dft.add_argument("--tree", required=True)
    dft.add_argument("--ladder", required=True)
    dft.add_argument("--colorings", required=True)
    dft.add_argument("--mode", required=True, choices=["transitive", "coherent", "sparse"])
    dft.add_argument("--k", type=int)
    dft.add_argument("--nu", help="ordinal ladder JSON (coherent mode)")
    dft.add_argument("--t0", type=int)
    dft.add_argument("--decided-at", type=int)
    dft.add_argument("--json", action="store_true")
    dft.add_argument("-o", "--out")
    dft.set_defaults(func=_cmd_defeat)

    exp = sub.add_parser("export", help="render to Graphviz DOT")
    exp.add_argument("format", choices=["dot"])
    exp.add_argument("--tree", required=True)
    exp.add_argument("--ladder")
    exp.add_argument("--coloring")
    exp.add_argument("--palette", type=int)
    exp.add_argument("-o", "--out")
    exp.set_defaults(func=_cmd_export)

    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ResourceLimitError, ExhaustedError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return 3
    except TreeLaddersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
