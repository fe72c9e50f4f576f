#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import collections
import logging
import math

from .models import Connector, Scenario

log = logging.getLogger(__name__)


def _is_positive(value) -> bool:
    return math.isfinite(value) and value > 0


def _is_nonnegative(value) -> bool:
    return math.isfinite(value) and value >= 0


def _dead_ends(scenario: Scenario, connector: Connector) -> list[tuple[str, int]]:
    """
    Breadth-first search over (node, t) states of one connector. Returns the
    states before the horizon from which no allowed edge fits in the horizon.
    """
    horizon = scenario.horizon
    out_edges = collections.defaultdict(list)
    for edge_id, steps in connector.traversal_time.items():
        if not scenario.graph.has_edge(edge_id):
            continue
        out_edges[scenario.edge(edge_id).tail].append((edge_id, steps))

    root = (connector.initial_location, 0)
    seen = {root}
    queue = collections.deque([root])
    dead = []
    while queue:
        node, t = queue.popleft()
        if t >= horizon:
            continue
        moved = False
        for edge_id, steps in out_edges[node]:
            if t + steps > horizon:
                continue
            moved = True
            nxt = (scenario.edge(edge_id).head, t + steps)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        if not moved:
            dead.append((node, t))
    return sorted(dead, key=lambda s: (s[1], s[0]))


def validate_scenario(scenario: Scenario) -> list[str]:
    """
    Check every invariant of the data model. Violations are returned as
    human readable strings, an empty list means the scenario is valid.
    """
    violations = []
    graph = scenario.graph

    # Physical graph
    seen_edges = set()
    for edge in graph.edges:
        if edge.id in seen_edges:
            violations.append("edge id {} is not unique".format(edge.id))
        seen_edges.add(edge.id)
        for end in (edge.tail, edge.head):
            if end not in graph.nodes:
                violations.append(
                    "edge {} references unknown node {}".format(edge.id, end)
                )

    # Packages
    package_ids = set()
    for package in scenario.packages:
        if package.id in package_ids:
            violations.append("package id {} is not unique".format(package.id))
        package_ids.add(package.id)
        if not _is_nonnegative(package.unit_weight):
            violations.append("package {} has negative weight".format(package.id))
        if not _is_nonnegative(package.unit_volume):
            violations.append("package {} has negative volume".format(package.id))
        if package.unit_weight == 0 and package.unit_volume == 0:
            violations.append(
                "package {} has both zero weight and zero volume".format(package.id)
            )

    # Warehouses
    warehouse_nodes = set()
    for warehouse in scenario.warehouses:
        if warehouse.node in warehouse_nodes:
            violations.append(
                "node {} holds more than one warehouse".format(warehouse.node)
            )
        warehouse_nodes.add(warehouse.node)
        if warehouse.node not in graph.nodes:
            violations.append(
                "warehouse at unknown node {}".format(warehouse.node)
            )
        for kind, amounts in (
            ("supply", warehouse.supply),
            ("demand", warehouse.demand),
        ):
            for package_id, amount in amounts.items():
                if package_id not in package_ids:
                    violations.append(
                        "warehouse {} {} references unknown package {}".format(
                            warehouse.node, kind, package_id
                        )
                    )
                if not _is_nonnegative(amount):
                    violations.append(
                        "warehouse {} has negative {} of {}".format(
                            warehouse.node, kind, package_id
                        )
                    )
        if not _is_nonnegative(warehouse.unit_payoff):
            violations.append(
                "warehouse {} has negative unit payoff".format(warehouse.node)
            )
        if not _is_nonnegative(warehouse.max_units):
            violations.append(
                "warehouse {} has negative max units".format(warehouse.node)
            )

    # Connectors
    connector_ids = set()
    for connector in scenario.connectors:
        if connector.id in connector_ids:
            violations.append("connector id {} is not unique".format(connector.id))
        connector_ids.add(connector.id)
        if connector.initial_location not in warehouse_nodes:
            violations.append(
                "connector {} starts at {}, which is not a warehouse".format(
                    connector.id, connector.initial_location
                )
            )
        if not _is_positive(connector.weight_cap):
            violations.append(
                "connector {} weight capacity must be positive".format(connector.id)
            )
        if not _is_positive(connector.volume_cap):
            violations.append(
                "connector {} volume capacity must be positive".format(connector.id)
            )
        for edge_id, steps in connector.traversal_time.items():
            if not graph.has_edge(edge_id):
                violations.append(
                    "connector {} allows unknown edge {}".format(connector.id, edge_id)
                )
            if int(steps) != steps or steps < 1:
                violations.append(
                    "connector {} traversal time of {} must be a positive "
                    "integer".format(connector.id, edge_id)
                )

    # Interdiction
    if not _is_nonnegative(scenario.interdiction.budget):
        violations.append("budget must be nonnegative")
    for edge_id, cost in scenario.interdiction.cost.items():
        if not graph.has_edge(edge_id):
            violations.append("interdiction cost on unknown edge {}".format(edge_id))
        if not _is_positive(cost):
            violations.append(
                "interdiction cost of edge {} must be positive".format(edge_id)
            )

    if int(scenario.horizon) != scenario.horizon or scenario.horizon < 1:
        violations.append("horizon must be a positive integer")
    elif not violations:
        # Path termination only makes sense on a structurally sound scenario
        for connector in scenario.connectors:
            for node, t in _dead_ends(scenario, connector):
                violations.append(
                    "connector {} is stuck at {} at t={} before the horizon".format(
                        connector.id, node, t
                    )
                )

    if violations:
        log.debug("Scenario has {} violations".format(len(violations)))
    return violations
