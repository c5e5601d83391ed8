"""JSON file formats for instances and colourings.

Conflict instance::

    {"k": 2, "n": 2, "edges": [{"u": 0, "v": 1, "lu": 1, "lv": 2}, ...]}

Adaptable / separation instance (lists per vertex, labels per edge)::

    {"k": 2, "n": 2, "vertices": [{"list": [1, 2]}, {"list": [2, 3]}],
     "edges": [{"u": 0, "v": 1, "label": 2}]}

Colouring::

    {"colouring": [1, 2, ...]}   (a bare JSON list is also accepted)

Writers emit edges in id order. Readers accept records in any order: an
optional integer ``id`` field sorts them, and ids are then renumbered densely.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from conflictcol.model import ConflictInstance, InstanceError, Multigraph, build_instance


def _ordered_records(records: Any) -> list[dict]:
    if not isinstance(records, list):
        raise InstanceError("'edges' must be a list")
    for i, r in enumerate(records):
        if not isinstance(r, dict):
            raise InstanceError(f"edge record {i} is not an object")
    if any("id" in r for r in records):
        if not all("id" in r for r in records):
            raise InstanceError("either every edge record carries an 'id' or none does")
        records = sorted(records, key=lambda r: r["id"])
    return records


def _field(obj: dict, key: str, where: str) -> Any:
    try:
        return obj[key]
    except KeyError:
        raise InstanceError(f"{where}: missing field '{key}'") from None


def instance_to_dict(inst: ConflictInstance) -> dict:
    return {
        "k": inst.k,
        "n": inst.n,
        "edges": [{"u": u, "v": v, "lu": a, "lv": b}
                  for (u, v), (a, b) in zip(inst.graph.edges, inst.pairs)],
    }


def instance_from_dict(data: Any) -> ConflictInstance:
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    k = _field(data, "k", "instance")
    n = _field(data, "n", "instance")
    records = _ordered_records(_field(data, "edges", "instance"))
    edges, pairs = [], []
    for i, r in enumerate(records):
        where = f"edge record {i}"
        edges.append((_int(_field(r, "u", where), where), _int(_field(r, "v", where), where)))
        pairs.append((_int(_field(r, "lu", where), where), _int(_field(r, "lv", where), where)))
    return build_instance(_int(n, "n"), edges, _int(k, "k"), pairs)


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InstanceError(f"{where}: expected an integer, got {x!r}")
    return x


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: invalid JSON ({exc})") from None


def write_json(path: str | Path, data: Any) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_instance(path: str | Path) -> ConflictInstance:
    return instance_from_dict(read_json(path))


def write_instance(path: str | Path, inst: ConflictInstance) -> None:
    write_json(path, instance_to_dict(inst))


def graph_to_dict(g: Multigraph) -> dict:
    return {"n": g.n, "edges": [{"u": u, "v": v} for u, v in g.edges]}


def colouring_from_data(data: Any) -> tuple[int, ...]:
    if isinstance(data, dict):
        data = _field(data, "colouring", "colouring file")
    if not isinstance(data, list):
        raise InstanceError("colouring must be a list of integers")
    return tuple(_int(x, f"colouring entry {i}") for i, x in enumerate(data))


def read_colouring(path: str | Path) -> tuple[int, ...]:
    return colouring_from_data(read_json(path))


def write_colouring(path: str | Path, colouring: Sequence[int]) -> None:
    write_json(path, {"colouring": list(colouring)})


def list_instance_from_dict(data: Any):
    """Parse the list-colouring format into (graph, lists, labels).

    ``labels`` is None when no edge carries a ``label`` field.
    """
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    n = _int(_field(data, "n", "instance"), "n")
    vertices = _field(data, "vertices", "instance")
    if not isinstance(vertices, list) or len(vertices) != n:
        raise InstanceError(f"'vertices' must list {n} records")
    lists = []
    for i, rec in enumerate(vertices):
        lst = _field(rec, "list", f"vertex record {i}")
        lists.append(tuple(_int(x, f"vertex {i} list") for x in lst))
    records = _ordered_records(_field(data, "edges", "instance"))
    edges, labels = [], []
    for i, r in enumerate(records):
        where = f"edge record {i}"
        edges.append((_int(_field(r, "u", where), where), _int(_field(r, "v", where), where)))
        if "label" in r:
            labels.append(_int(r["label"], where))
    if labels and len(labels) != len(edges):
        raise InstanceError("either every edge carries a 'label' or none does")
    return Multigraph(n, tuple(edges)), tuple(lists), (tuple(labels) if labels else None)


def list_instance_to_dict(graph: Multigraph, lists: Sequence[Sequence[int]],
                          labels: Sequence[int] | None = None) -> dict:
    k = len(lists[0]) if lists else 0
    edges = []
    for e, (u, v) in enumerate(graph.edges):
        rec = {"u": u, "v": v}
        if labels is not None:
            rec["label"] = labels[e]
        edges.append(rec)
    return {"k": k, "n": graph.n, "vertices": [{"list": list(x)} for x in lists],
            "edges": edges}
