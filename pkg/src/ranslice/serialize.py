"""JSON container for instances and plans.

Instance document::

    {"substrate": {"nodes": [{"id": 0, "capacity": 4}, ...],
                   "links": [{"a": 0, "b": 1, "capacity": 2}, ...]},
     "slices": [{"vnfs": [{"id": 0, "demand": 2}, ...],
                 "links": [{"a": 0, "b": 1, "bandwidth": 1}, ...]}, ...]}

Plan document: ``[{"slice": 0, "vnf": 1, "node": 3}, ...]`` sorted by
``(slice, vnf)``. Slice and id values are zero-based. A link entry may omit
its ``capacity``/``bandwidth`` key; that is reported by ``validate_instance``
rather than rejected here. Output uses sorted keys and two-space indent, so
``dumps(loads(doc)) == doc`` for anything this module wrote.
"""
from __future__ import annotations

import json
from pathlib import Path

from .model import (Instance, MappingPlan, Slice, SliceSet, SubstrateNetwork,
                    SubstrateNode, Vnf, norm)


class FormatError(ValueError):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _links_to_json(links, weights, weight_key):
    out = []
    for a, b in links:
        entry = {"a": a, "b": b}
        if norm(a, b) in weights:
            entry[weight_key] = weights[norm(a, b)]
        out.append(entry)
    return out


def _links_from_json(entries, weight_key):
    pairs, weights = [], {}
    for e in entries:
        pair = (int(e["a"]), int(e["b"]))
        pairs.append(pair)
        if weight_key in e:
            weights[norm(*pair)] = int(e[weight_key])
    return tuple(pairs), weights


def instance_to_dict(inst: Instance) -> dict:
    sub = inst.substrate
    return {
        "substrate": {
            "nodes": [{"id": n.id, "capacity": n.capacity} for n in sub.nodes],
            "links": _links_to_json(sub.links, sub.link_capacity, "capacity"),
        },
        "slices": [
            {"vnfs": [{"id": v.id, "demand": v.demand} for v in sl.vnfs],
             "links": _links_to_json(sl.links, sl.bandwidth, "bandwidth")}
            for sl in inst.slices
        ],
    }


def instance_from_dict(doc: dict) -> Instance:
    try:
        sub = doc["substrate"]
        nodes = tuple(SubstrateNode(int(n["id"]), int(n["capacity"])) for n in sub["nodes"])
        links, caps = _links_from_json(sub.get("links", []), "capacity")
        slices = []
        for sl in doc.get("slices", []):
            vnfs = tuple(Vnf(int(v["id"]), int(v["demand"])) for v in sl["vnfs"])
            vlinks, bw = _links_from_json(sl.get("links", []), "bandwidth")
            slices.append(Slice(vnfs, vlinks, bw))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed instance document: {exc!r}") from exc
    return Instance(SubstrateNetwork(nodes, links, caps), SliceSet(tuple(slices)))


def dumps_instance(inst: Instance) -> str:
    return _dumps(instance_to_dict(inst))


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc
    return instance_from_dict(doc)


def plan_to_list(plan: MappingPlan) -> list[dict]:
    return [{"slice": i, "vnf": v, "node": s}
            for (i, v), s in sorted(plan.assignments.items())]


def plan_from_list(entries) -> MappingPlan:
    assignments = {}
    try:
        for e in entries:
            u = (int(e["slice"]), int(e["vnf"]))
            if u in assignments:
                raise FormatError(f"vnf {u} assigned twice")
            assignments[u] = int(e["node"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed plan document: {exc!r}") from exc
    return MappingPlan(assignments)


def dumps_plan(plan: MappingPlan) -> str:
    return _dumps(plan_to_list(plan))


def loads_plan(text: str) -> MappingPlan:
    try:
        return plan_from_list(json.loads(text))
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc


def read_instance(path) -> Instance:
    return loads_instance(Path(path).read_text())


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps_instance(inst))


def read_plan(path) -> MappingPlan:
    return loads_plan(Path(path).read_text())


def write_plan(plan: MappingPlan, path) -> None:
    Path(path).write_text(dumps_plan(plan))
