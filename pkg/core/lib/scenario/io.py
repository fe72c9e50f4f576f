#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

JSON scenario files. See docs/scenario.schema.json for the format.
"""

import json
import logging

from .. import util
from ..error import CLError
from .models import (
    Connector,
    Edge,
    InterdictionSpec,
    Package,
    PhysicalGraph,
    Scenario,
    Warehouse,
)
from .validation import validate_scenario

log = logging.getLogger(__name__)


def _parse_error(locus, reason):
    return CLError("SCENARIO_PARSE_ERROR", {"locus": locus, "reason": reason})


def _require(obj, key, path):
    if not isinstance(obj, dict):
        raise _parse_error(path or "document", "expected an object")
    if key not in obj:
        field_path = "{}.{}".format(path, key) if path else key
        raise _parse_error(field_path, "missing field")
    return obj[key]


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _parse_error(path, "expected a number, got {!r}".format(value))
    return float(value)


def _integer(value, path):
    number = _number(value, path)
    if number != int(number):
        raise _parse_error(path, "expected an integer, got {!r}".format(value))
    return int(number)


def _string(value, path):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise _parse_error(path, "expected a string, got {!r}".format(value))
    return str(value)


def _list(value, path):
    if not isinstance(value, list):
        raise _parse_error(path, "expected a list")
    return value


def _amounts(value, path):
    if not isinstance(value, dict):
        raise _parse_error(path, "expected an object of package amounts")
    return {
        _string(k, path): _number(v, "{}.{}".format(path, k)) for k, v in value.items()
    }


def scenario_from_dict(doc) -> Scenario:
    nodes = [
        _string(n, "nodes[{}]".format(i))
        for i, n in enumerate(_list(_require(doc, "nodes", ""), "nodes"))
    ]

    edges = []
    cost = {}
    for i, item in enumerate(_list(_require(doc, "edges", ""), "edges")):
        path = "edges[{}]".format(i)
        edge = Edge(
            id=_string(_require(item, "id", path), path + ".id"),
            tail=_string(_require(item, "tail", path), path + ".tail"),
            head=_string(_require(item, "head", path), path + ".head"),
        )
        edges.append(edge)
        if item.get("interdiction_cost") is not None:
            cost[edge.id] = _number(
                item["interdiction_cost"], path + ".interdiction_cost"
            )

    packages = []
    for i, item in enumerate(_list(_require(doc, "packages", ""), "packages")):
        path = "packages[{}]".format(i)
        packages.append(
            Package(
                id=_string(_require(item, "id", path), path + ".id"),
                unit_weight=_number(
                    _require(item, "unit_weight", path), path + ".unit_weight"
                ),
                unit_volume=_number(
                    _require(item, "unit_volume", path), path + ".unit_volume"
                ),
            )
        )

    connectors = []
    for i, item in enumerate(_list(_require(doc, "connectors", ""), "connectors")):
        path = "connectors[{}]".format(i)
        traversal_time = {}
        allowed = _list(
            _require(item, "allowed_edges", path), path + ".allowed_edges"
        )
        for j, allowed_edge in enumerate(allowed):
            edge_path = "{}.allowed_edges[{}]".format(path, j)
            edge_id = _string(_require(allowed_edge, "edge", edge_path), edge_path)
            traversal_time[edge_id] = _integer(
                _require(allowed_edge, "traversal_time", edge_path),
                edge_path + ".traversal_time",
            )
        connectors.append(
            Connector(
                id=_string(_require(item, "id", path), path + ".id"),
                initial_location=_string(
                    _require(item, "initial_location", path),
                    path + ".initial_location",
                ),
                weight_cap=_number(
                    _require(item, "weight_cap", path), path + ".weight_cap"
                ),
                volume_cap=_number(
                    _require(item, "volume_cap", path), path + ".volume_cap"
                ),
                traversal_time=traversal_time,
            )
        )

    warehouses = []
    for i, item in enumerate(_list(_require(doc, "warehouses", ""), "warehouses")):
        path = "warehouses[{}]".format(i)
        warehouses.append(
            Warehouse(
                node=_string(_require(item, "node", path), path + ".node"),
                supply=_amounts(item.get("supply", {}), path + ".supply"),
                demand=_amounts(item.get("demand", {}), path + ".demand"),
                unit_payoff=_number(item.get("unit_payoff", 0.0), path + ".unit_payoff"),
                max_units=_number(item.get("max_units", 0.0), path + ".max_units"),
            )
        )

    return Scenario(
        graph=PhysicalGraph(nodes=frozenset(nodes), edges=tuple(edges)),
        packages=tuple(packages),
        connectors=tuple(connectors),
        warehouses=tuple(warehouses),
        interdiction=InterdictionSpec(
            budget=_number(_require(doc, "budget", ""), "budget"), cost=cost
        ),
        horizon=_integer(_require(doc, "horizon", ""), "horizon"),
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    cost = scenario.interdiction.cost
    edges = []
    for edge in scenario.graph.edges:
        item = {"id": edge.id, "tail": edge.tail, "head": edge.head}
        if edge.id in cost:
            item["interdiction_cost"] = cost[edge.id]
        edges.append(item)
    return {
        "nodes": sorted(scenario.graph.nodes),
        "edges": edges,
        "packages": [
            {"id": p.id, "unit_weight": p.unit_weight, "unit_volume": p.unit_volume}
            for p in scenario.packages
        ],
        "connectors": [
            {
                "id": c.id,
                "initial_location": c.initial_location,
                "weight_cap": c.weight_cap,
                "volume_cap": c.volume_cap,
                "allowed_edges": [
                    {"edge": edge_id, "traversal_time": steps}
                    for edge_id, steps in c.traversal_time.items()
                ],
            }
            for c in scenario.connectors
        ],
        "warehouses": [
            {
                "node": w.node,
                "supply": dict(w.supply),
                "demand": dict(w.demand),
                "unit_payoff": w.unit_payoff,
                "max_units": w.max_units,
            }
            for w in scenario.warehouses
        ],
        "budget": scenario.interdiction.budget,
        "horizon": scenario.horizon,
    }


def load_scenario(text, strict: bool = True) -> Scenario:
    """
    Parse a scenario document. Validation violations raise when strict and
    are logged as warnings otherwise.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise _parse_error("line {} column {}".format(e.lineno, e.colno), e.msg)
    scenario = scenario_from_dict(doc)
    violations = validate_scenario(scenario)
    if violations:
        if strict:
            raise CLError("INVALID_SCENARIO", {"violations": "; ".join(violations)})
        for violation in violations:
            log.warning("Scenario violation: {}".format(violation))
    return scenario


def save_scenario(scenario: Scenario) -> str:
    return util.dump_json(scenario_to_dict(scenario))


def load_scenario_file(filepath: str, strict: bool = True) -> Scenario:
    log.info("Loading scenario from {}".format(filepath))
    return load_scenario(util.read_text(filepath), strict=strict)


def save_scenario_file(scenario: Scenario, filepath: str) -> None:
    util.write_text(filepath, save_scenario(scenario))
    log.info("Scenario written to {}".format(filepath))
