"""JSON interchange for graphs, actions, and divisors.

Graph files look like

    {"vertices": ["a", "b", ...],
     "edges": [["a", "b"], ["a", "b"], ...],
     "actions": {"sigma1": {"a": "b", ...}, "sigma2": {...}}}

Repeated pairs encode parallel edges and ["a", "a"] encodes a loop; the
"actions" block is optional and maps vertex labels to vertex labels.
"""

from __future__ import annotations

import json
from typing import Any

from .actions import DihedralAction
from .multigraph import Multigraph


class GraphFormatError(ValueError):
    pass


def graph_to_json(g: Multigraph, action: DihedralAction | None = None) -> dict:
    doc: dict[str, Any] = {
        "vertices": [g.label(v) for v in range(g.vertex_count)],
        "edges": [[g.label(u), g.label(v)] for u, v in g.edges],
    }
    if action is not None:
        doc["actions"] = {
            "sigma1": {g.label(v): g.label(action.sigma1[v]) for v in range(g.vertex_count)},
            "sigma2": {g.label(v): g.label(action.sigma2[v]) for v in range(g.vertex_count)},
        }
    return doc


def graph_from_json(doc: dict) -> tuple[Multigraph, DihedralAction | None]:
    if not isinstance(doc, dict):
        raise GraphFormatError("graph document must be an object")
    try:
        labels = [str(x) for x in doc["vertices"]]
    except (KeyError, TypeError) as exc:
        raise GraphFormatError("missing or malformed 'vertices'") from exc
    if len(set(labels)) != len(labels):
        raise GraphFormatError("duplicate vertex labels")
    index = {lbl: i for i, lbl in enumerate(labels)}
    edges = []
    for e in doc.get("edges", []):
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise GraphFormatError(f"malformed edge {e!r}")
        try:
            edges.append((index[str(e[0])], index[str(e[1])]))
        except KeyError as exc:
            raise GraphFormatError(f"edge {e!r} references unknown vertex") from exc
    g = Multigraph.from_edges(len(labels), edges, labels=labels)

    action = None
    if "actions" in doc:
        acts = doc["actions"]
        if not isinstance(acts, dict) or "sigma1" not in acts or "sigma2" not in acts:
            raise GraphFormatError("'actions' needs 'sigma1' and 'sigma2'")
        perms = []
        for key in ("sigma1", "sigma2"):
            table = acts[key]
            if set(table) != set(labels):
                raise GraphFormatError(f"'{key}' must map every vertex label")
            try:
                perms.append([index[str(table[lbl])] for lbl in labels])
            except KeyError as exc:
                raise GraphFormatError(f"'{key}' maps to unknown vertex") from exc
        try:
            action = DihedralAction.build(g, perms[0], perms[1])
        except ValueError as exc:
            raise GraphFormatError(f"invalid action: {exc}") from exc
    return g, action


def load_graph(path: str) -> tuple[Multigraph, DihedralAction | None]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"not valid JSON: {exc}") from exc
    return graph_from_json(doc)


def divisor_to_json(g: Multigraph, values) -> dict:
    return {g.label(v): int(x) for v, x in enumerate(values) if x}


def divisor_from_json(g: Multigraph, doc: dict) -> list[int]:
    vals = [0] * g.vertex_count
    for lbl, x in doc.items():
        vals[g.vertex_by_label(str(lbl))] = int(x)
    return vals
