"""JSON graph files.

Layout::

    {"n": 3, "values": [2.0, 1.0, 3.0],
     "edges": [[0, 1, "fw"], [0, 2, "tc"], [1, 2, "bw"]],
     "meta": {...}}

Every pair ``i < j`` appears exactly once; ``"fw"`` means ``i -> j``, i.e.
the crowd claims element ``i`` is larger. ``values`` is the hidden ground
truth and is ``null`` in redacted files.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidParameter
from .graph import EdgeState, GroundTruth, TournamentGraph

_CODE_NAMES = {1: EdgeState.FORWARD.value, -1: EdgeState.BACKWARD.value, 0: EdgeState.TWO_CYCLE.value}


def graph_to_dict(g: TournamentGraph, truth: GroundTruth | None = None, meta: dict | None = None) -> dict:
    n = g.n
    iu, ju = np.triu_indices(n, 1)
    codes = g.matrix[iu, ju].tolist()
    edges = [[i, j, _CODE_NAMES[c]] for i, j, c in zip(iu.tolist(), ju.tolist(), codes)]
    out = {"n": n, "values": None if truth is None else [float(v) for v in truth.values], "edges": edges}
    if meta is not None:
        out["meta"] = meta
    return out


def graph_from_dict(doc: dict):
    """Return ``(graph, truth or None, meta)``."""
    try:
        n = int(doc["n"])
        edges = doc["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameter(f"malformed graph document: {exc}") from None
    try:
        g = TournamentGraph.from_edges(n, edges)
    except ValueError as exc:
        raise InvalidParameter(f"malformed edge list: {exc}") from None
    values = doc.get("values")
    truth = None
    if values is not None:
        if len(values) != n:
            raise InvalidParameter(f"values has {len(values)} entries, expected {n}")
        truth = GroundTruth(values)
    return g, truth, doc.get("meta", {})


def dumps_graph(g, truth=None, meta=None) -> str:
    return json.dumps(graph_to_dict(g, truth, meta), separators=(",", ":")) + "\n"


def write_graph(path, g, truth=None, meta=None) -> None:
    Path(path).write_text(dumps_graph(g, truth, meta), encoding="utf-8")


def read_graph(path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"{path}: not valid JSON ({exc})") from None
    return graph_from_dict(doc)
