"""JSON round-trips for every domain object, plus Graphviz DOT export.

Formats (all keys are decimal strings where JSON forces string keys):

- tree:     {"nodes": [{"id": 0, "parent": null, "label": null}, ...]}
- ladder:   {"rungs": {"7": [2, 5]}, "supp": [7], "eta": {"7": [2]}}
- ordinal:  {"rungs": {"3": [1, 2]}, "limit": [3]}
- coloring: bare map node id -> color, e.g. {"0": 0, "1": 2}
- coloring list: {"palette": 3, "colorings": [<bare map>, ...]}
- challenge: {"A": [...], "f": <bare map>, "palette": 3, "t0": 4, "chain": [[...]]}
"""

from __future__ import annotations

import json
from typing import Optional

from .builder import Challenge
from .errors import InvalidArgumentError
from .graphcore import Coloring
from .ladder import LadderSystem, OrdinalLadder, TrueLadder
from .tree import Tree


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidArgumentError(f"{kind} JSON needs a {key!r} field")
    return obj[key]


def _int_keyed(obj, what):
    try:
        return {int(k): v for k, v in obj.items()}
    except (AttributeError, ValueError) as exc:
        raise InvalidArgumentError(f"{what} must map integer keys") from exc


# -- tree ---------------------------------------------------------------------


def tree_to_json(tree: Tree) -> dict:
    return {
        "nodes": [
            {"id": i, "parent": tree.parents[i], "label": tree.labels[i]}
            for i in range(tree.n)
        ]
    }


def tree_from_json(obj) -> Tree:
    nodes = _require(obj, "nodes", "tree")
    if not isinstance(nodes, list) or not nodes:
        raise InvalidArgumentError("tree JSON needs a nonempty node list")
    recs = sorted(nodes, key=lambda r: _require(r, "id", "node"))
    ids = [r["id"] for r in recs]
    if ids != list(range(len(recs))):
        raise InvalidArgumentError("node ids must be 0..n-1 without gaps")
    return Tree(
        [r.get("parent") for r in recs],
        [r.get("label") for r in recs],
    )


# -- ladder system ------------------------------------------------------------


def ladder_to_json(system: LadderSystem) -> dict:
    out = {
        "rungs": {str(t): list(r) for t, r in sorted(system.rungs.items())},
        "supp": sorted(system.supp),
    }
    if system.eta is not None:
        out["eta"] = {str(t): list(r) for t, r in sorted(system.eta.entries.items())}
    return out


def ladder_from_json(obj, tree: Tree) -> LadderSystem:
    rungs = {
        t: tuple(r) for t, r in _int_keyed(_require(obj, "rungs", "ladder"), "rungs").items()
    }
    supp = frozenset(obj.get("supp", ()))
    eta = None
    if obj.get("eta") is not None:
        eta = TrueLadder({t: tuple(r) for t, r in _int_keyed(obj["eta"], "eta").items()})
    return LadderSystem(rungs, supp, eta).validate(tree)


# -- ordinal ladder -----------------------------------------------------------


def ordinal_to_json(nu: OrdinalLadder) -> dict:
    return {
        "rungs": {str(d): list(r) for d, r in sorted(nu.rungs.items())},
        "limit": sorted(nu.limit),
    }


def ordinal_from_json(obj) -> OrdinalLadder:
    rungs = {
        d: tuple(r)
        for d, r in _int_keyed(_require(obj, "rungs", "ordinal ladder"), "rungs").items()
    }
    return OrdinalLadder(rungs, frozenset(obj.get("limit", ()))).validate()


# -- colorings ----------------------------------------------------------------


def coloring_to_json(coloring: Coloring) -> dict:
    return {str(v): c for v, c in enumerate(coloring.colors)}


def coloring_from_json(obj, tree: Tree, palette: Optional[int] = None) -> Coloring:
    by_node = _int_keyed(obj, "coloring")
    if sorted(by_node) != list(range(tree.n)):
        raise InvalidArgumentError("coloring must cover node ids 0..n-1 exactly")
    colors = tuple(by_node[v] for v in range(tree.n))
    size = palette if palette is not None else (max(colors) + 1 if colors else 1)
    return Coloring(colors, size).validate(tree)


def coloring_list_to_json(colorings) -> dict:
    if not colorings:
        raise InvalidArgumentError("empty coloring list")
    palette = colorings[0].palette
    if any(c.palette != palette for c in colorings):
        raise InvalidArgumentError("coloring list must share one palette")
    return {"palette": palette, "colorings": [coloring_to_json(c) for c in colorings]}


def coloring_list_from_json(obj, tree: Tree) -> list[Coloring]:
    if isinstance(obj, dict) and "colorings" in obj:
        palette = _require(obj, "palette", "coloring list")
        return [coloring_from_json(c, tree, palette) for c in obj["colorings"]]
    # a single bare coloring is accepted as a one-element list
    return [coloring_from_json(obj, tree)]


# -- challenge ----------------------------------------------------------------


def challenge_to_json(challenge: Challenge) -> dict:
    out = {
        "A": list(challenge.A),
        "f": coloring_to_json(challenge.f),
        "palette": challenge.f.palette,
    }
    if challenge.t0 is not None:
        out["t0"] = challenge.t0
    if challenge.chain:
        out["chain"] = [list(level) for level in challenge.chain]
    return out


def challenge_from_json(obj, tree: Tree) -> Challenge:
    f = coloring_from_json(_require(obj, "f", "challenge"), tree, obj.get("palette"))
    return Challenge(
        tuple(_require(obj, "A", "challenge")),
        f,
        obj.get("t0"),
        tuple(tuple(level) for level in obj.get("chain", ())),
    ).validate(tree)


# -- file helpers -------------------------------------------------------------


def dump(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# -- DOT ----------------------------------------------------------------------

_FILLS = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)


def dot_export(
    tree: Tree,
    system: Optional[LadderSystem] = None,
    coloring: Optional[Coloring] = None,
) -> str:
    """Tree edges dashed, rung edges solid; rung edges repeat tree edges
    on purpose so both structures stay legible in one picture."""
    lines = ["graph ladders {", "  node [shape=circle, fontsize=10];"]
    for v in range(tree.n):
        seq = tree.seq(v)
        text = "<>" if not seq else ",".join(str(x) for x in seq)
        attrs = [f'label="{text}"']
        if coloring is not None:
            attrs.append('style="filled"')
            attrs.append(f'fillcolor="{_FILLS[coloring.of(v) % len(_FILLS)]}"')
        lines.append(f"  n{v} [{', '.join(attrs)}];")
    for v in range(1, tree.n):
        lines.append(f"  n{tree.parents[v]} -- n{v} [style=dashed];")
    if system is not None:
        for t in sorted(system.rungs):
            for s in system.rungs[t]:
                lines.append(f"  n{s} -- n{t};")
    lines.append("}")
    return "\n".join(lines) + "\n"
