#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Small scenarios whose game values can be worked out by hand.
"""

import itertools
import os

from ..lib.layered import LogisticsPlan, Step
from ..lib.scenario import (
    Connector,
    edge_id,
    Edge,
    InterdictionSpec,
    Package,
    PhysicalGraph,
    Scenario,
    Warehouse,
)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def _edges(pairs):
    return [Edge(edge_id(tail, head), tail, head) for tail, head in pairs]


def shuttle_scenario(horizon=2, capacity=10.0, supply=5.0, budget=1.0):
    """
    Supply at A, demand at B, one truck shuttling on A <-> B. Red may cut
    either direction at cost 1.
    """
    edges = _edges([("A", "B"), ("B", "A"), ("A", "A"), ("B", "B")])
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset({"A", "B"}), edges=tuple(edges)),
        packages=(Package("food", 1.0, 1.0),),
        connectors=(
            Connector("truck", "A", capacity, capacity, {e.id: 1 for e in edges}),
        ),
        warehouses=(
            Warehouse("A", {"food": supply}, {}, 0.0, 0.0),
            Warehouse("B", {}, {"food": 1.0}, 1.0, 10.0),
        ),
        interdiction=InterdictionSpec(
            budget=budget, cost={edge_id("A", "B"): 1.0, edge_id("B", "A"): 1.0}
        ),
        horizon=horizon,
    )


def corridor_scenario(corridors=2, budget=1.0):
    """
    One unit moves from S to D through one of `corridors` relay nodes M1..Mn.
    Red cuts S->Mi at cost 1, so with an integral budget b < n the game value
    is (n - b) / n.
    """
    relays = ["M{}".format(i) for i in range(1, corridors + 1)]
    pairs = [("S", "S"), ("D", "D")]
    for relay in relays:
        pairs += [("S", relay), (relay, "D")]
    edges = _edges(pairs)
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset(["S", "D"] + relays), edges=tuple(edges)),
        packages=(Package("ammo", 1.0, 1.0),),
        connectors=(Connector("truck", "S", 1.0, 1.0, {e.id: 1 for e in edges}),),
        warehouses=(
            Warehouse("S", {"ammo": 1.0}, {}, 0.0, 0.0),
            Warehouse("D", {}, {"ammo": 1.0}, 1.0, 1.0),
        ),
        interdiction=InterdictionSpec(
            budget=budget, cost={edge_id("S", relay): 1.0 for relay in relays}
        ),
        horizon=2,
    )


def chain_scenario(budget=1.0):
    """
    S -> P -> Q -> D, one unit carried through two relay nodes that hold no
    stock. Every forward edge can be cut at cost 1.
    """
    forward = [("S", "P"), ("P", "Q"), ("Q", "D")]
    edges = _edges(forward + [("D", "D")])
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset("SPQD"), edges=tuple(edges)),
        packages=(Package("ammo", 1.0, 1.0),),
        connectors=(Connector("truck", "S", 1.0, 1.0, {e.id: 1 for e in edges}),),
        warehouses=(
            Warehouse("S", {"ammo": 1.0}, {}, 0.0, 0.0),
            Warehouse("D", {}, {"ammo": 1.0}, 1.0, 1.0),
        ),
        interdiction=InterdictionSpec(
            budget=budget, cost={edge_id(a, b): 1.0 for a, b in forward}
        ),
        horizon=3,
    )


def triangle_scenario():
    """
    Fully connected A, B, C. The lorry starts at A and may also idle there
    for two steps, the van starts at B. Both need one step per leg.
    """
    legs = [(a, b) for a in "ABC" for b in "ABC" if a != b]
    edges = _edges(legs + [("A", "A")])
    lorry = {e.id: 1 for e in edges}
    lorry[edge_id("A", "A")] = 2
    van = {edge_id(a, b): 1 for a, b in legs}
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset("ABC"), edges=tuple(edges)),
        packages=(Package("food", 1.0, 1.0),),
        connectors=(
            Connector("lorry", "A", 2.0, 2.0, lorry),
            Connector("van", "B", 2.0, 2.0, van),
        ),
        warehouses=(
            Warehouse("A", {"food": 2.0}, {}, 0.0, 0.0),
            Warehouse("C", {}, {"food": 1.0}, 1.0, 2.0),
        ),
        interdiction=InterdictionSpec(
            budget=1.0, cost={edge_id(a, b): 1.0 for a, b in legs}
        ),
        horizon=2,
    )


def convoy_scenario(budget=1.0):
    """
    Two packages needed in a 2:1 ratio at D, a train on the long rail line
    and a truck on the short road, both with room for everything.
    """
    pairs = [
        ("R", "X"),
        ("X", "D"),
        ("R", "D"),
        ("R", "R"),
        ("X", "X"),
        ("D", "D"),
    ]
    edges = _edges(pairs)
    rail = {edge_id("R", "X"): 1, edge_id("X", "D"): 1, edge_id("R", "R"): 1, edge_id("D", "D"): 1}
    road = {edge_id("R", "D"): 2, edge_id("R", "R"): 1, edge_id("D", "D"): 1}
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset({"R", "X", "D"}), edges=tuple(edges)),
        packages=(Package("fuel", 2.0, 1.0), Package("parts", 1.0, 3.0)),
        connectors=(
            Connector("train", "R", 20.0, 20.0, rail),
            Connector("truck", "R", 20.0, 20.0, road),
        ),
        warehouses=(
            Warehouse("R", {"fuel": 4.0, "parts": 2.0}, {}, 0.0, 0.0),
            Warehouse("D", {}, {"fuel": 2.0, "parts": 1.0}, 3.0, 5.0),
        ),
        interdiction=InterdictionSpec(
            budget=budget,
            cost={edge_id("R", "X"): 1.0, edge_id("X", "D"): 1.0, edge_id("R", "D"): 1.0},
        ),
        horizon=3,
    )


def route(cid, connector_path):
    """
    LogisticsPlan route from a list of (node, t) states
    """
    steps = tuple(
        Step(edge_id(a, b), a, b, t0, t1)
        for (a, t0), (b, t1) in zip(connector_path, connector_path[1:])
    )
    return (cid, steps)


def plan(*routes):
    return LogisticsPlan(tuple(routes))


def corridor_plan(relay):
    return plan(route("truck", [("S", 0), (relay, 1), ("D", 2)]))


def max_sat_fraction(clauses, num_vars):
    best = 0
    for bits in itertools.product((False, True), repeat=num_vars):
        assignment = dict(enumerate(bits, start=1))
        satisfied = sum(
            1 for clause in clauses if any(assignment[abs(l)] == (l > 0) for l in clause)
        )
        best = max(best, satisfied)
    return best / len(clauses)


def min_cover_size(universe_size, sets):
    universe = set(range(1, universe_size + 1))
    for size in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, size):
            if set().union(*combo) >= universe:
                return size
    return None
