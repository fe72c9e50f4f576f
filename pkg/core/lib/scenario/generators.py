#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Scenario generators: seeded grid worlds and the two hardness gadgets
(3-SAT and set cover) used as generators and test fixtures.
"""

import logging
from collections.abc import Iterable, Sequence

import numpy as np

from .. import constant
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

log = logging.getLogger(__name__)


def edge_id(tail: str, head: str) -> str:
    return "{}>{}".format(tail, head)


def grid_node(row: int, col: int) -> str:
    return "{}-{}".format(row, col)


def generate_grid_world(
    n: int,
    horizon: int,
    budget: float,
    uniform_costs: bool = True,
    edge_drop_prob: float = constant.DEFAULT_EDGE_DROP_PROB,
    seed: int = 0,
) -> Scenario:
    """
    N x N grid with two trucks at (0,0) and (N-1,N-1), supply at those two
    corners and at the center, demand at the two remaining corners.

    Draw order of the seeded generator: for each undirected adjacency in
    row-major order (right neighbour, then down neighbour) one drop draw and,
    when the edge survives with random costs, the forward then backward cost.
    The two demand payoffs are drawn last, (0,N-1) before (N-1,0).
    """
    if n < constant.GRID_MIN_SIDE:
        raise CLError("GRID_TOO_SMALL", {"min_side": constant.GRID_MIN_SIDE, "n": n})
    rng = np.random.default_rng(seed)
    low, high = constant.RANDOM_COST_RANGE

    nodes = [grid_node(r, c) for r in range(n) for c in range(n)]
    edges = []
    cost = {}
    for r in range(n):
        for c in range(n):
            for nr, nc in ((r, c + 1), (r + 1, c)):
                if nr >= n or nc >= n:
                    continue
                dropped = rng.random() < edge_drop_prob
                if dropped:
                    continue
                a, b = grid_node(r, c), grid_node(nr, nc)
                for tail, head in ((a, b), (b, a)):
                    eid = edge_id(tail, head)
                    edges.append(Edge(eid, tail, head))
                    if uniform_costs:
                        cost[eid] = 1.0
                    else:
                        cost[eid] = float(rng.integers(low, high + 1))
    # Waiting is an explicit self-loop that Red can never interdict
    for node in nodes:
        edges.append(Edge(edge_id(node, node), node, node))

    corner_a = grid_node(0, 0)
    corner_b = grid_node(n - 1, n - 1)
    center = grid_node(n // 2, n // 2)
    demand_nodes = (grid_node(0, n - 1), grid_node(n - 1, 0))
    pay_low, pay_high = constant.DEMAND_PAYOFF_RANGE
    payoffs = [float(rng.uniform(pay_low, pay_high)) for _ in demand_nodes]

    warehouses = [
        Warehouse(corner_a, dict(constant.GRID_CORNER_SUPPLY), {}, 0.0, 0.0),
        Warehouse(corner_b, dict(constant.GRID_OPPOSITE_CORNER_SUPPLY), {}, 0.0, 0.0),
        Warehouse(center, dict(constant.GRID_CENTER_SUPPLY), {}, 0.0, 0.0),
    ]
    for node, payoff in zip(demand_nodes, payoffs):
        warehouses.append(Warehouse(node, {}, dict(constant.GRID_DEMAND), payoff, 1.0))

    packages = [Package(p, 1.0, 1.0) for p in constant.GRID_PACKAGES]
    # Total supply mass, so capacity never binds
    capacity = sum(sum(w.supply.values()) for w in warehouses)
    traversal = {e.id: 1 for e in edges}
    connectors = [
        Connector("truck1", corner_a, capacity, capacity, traversal),
        Connector("truck2", corner_b, capacity, capacity, traversal),
    ]
    log.debug(
        "Generated {n}x{n} grid with {e} edges (seed {s})".format(
            n=n, e=len(edges), s=seed
        )
    )
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset(nodes), edges=tuple(edges)),
        packages=tuple(packages),
        connectors=tuple(connectors),
        warehouses=tuple(warehouses),
        interdiction=InterdictionSpec(budget=budget, cost=cost),
        horizon=horizon,
    )


def _literal_node(literal: int) -> str:
    return "x{}{}".format(abs(literal), "T" if literal > 0 else "F")


def generate_sat_gadget(clauses: Sequence[Iterable[int]], num_vars: int = 0) -> Scenario:
    """
    Build the 3-SAT gadget. Clauses are DIMACS literal lists. The game value
    equals the largest fraction of clauses a single assignment satisfies.

    The assignment connector walks x1 -> x1T|x1F -> x2 -> ... -> t and picks
    up the package each clause connector dropped at one of its literals.
    Every clause connector reaches its literal in one step and must then
    stay on the layered graph until the horizon, so each literal node gets
    a self-loop that lets clause paths end there.
    """
    clause_list = []
    for clause in clauses:
        # Duplicate literals would add parallel edges with the same id
        literals = tuple(dict.fromkeys(int(lit) for lit in clause))
        if not literals:
            raise CLError("INVALID_CNF", {"reason": "empty clause"})
        if len(literals) > 3:
            raise CLError(
                "INVALID_CNF",
                {"reason": "clause {} has more than 3 literals".format(literals)},
            )
        if 0 in literals:
            raise CLError("INVALID_CNF", {"reason": "literal 0 is not allowed"})
        clause_list.append(literals)
    if not clause_list:
        raise CLError("EMPTY_FORMULA")
    n = max(num_vars, max(abs(lit) for clause in clause_list for lit in clause))
    k = len(clause_list)
    terminal = "t"
    package = constant.SAT_PACKAGE

    nodes = [terminal]
    edges = []
    assignment_edges = {}
    for i in range(1, n + 1):
        var = "x{}".format(i)
        nxt = "x{}".format(i + 1) if i < n else terminal
        nodes += [var, var + "T", var + "F"]
        for lit_node in (var + "T", var + "F"):
            for tail, head in ((var, lit_node), (lit_node, nxt)):
                eid = edge_id(tail, head)
                edges.append(Edge(eid, tail, head))
                assignment_edges[eid] = 1
    terminal_loop = edge_id(terminal, terminal)
    edges.append(Edge(terminal_loop, terminal, terminal))
    assignment_edges[terminal_loop] = 1

    literal_loops = {}
    connectors = [Connector("a", "x1", float(k), float(k), assignment_edges)]
    for j, literals in enumerate(clause_list, start=1):
        clause_node = "C{}".format(j)
        nodes.append(clause_node)
        allowed = {}
        for lit in literals:
            lit_node = _literal_node(lit)
            eid = edge_id(clause_node, lit_node)
            edges.append(Edge(eid, clause_node, lit_node))
            allowed[eid] = 1
            loop = edge_id(lit_node, lit_node)
            if loop not in literal_loops:
                literal_loops[loop] = Edge(loop, lit_node, lit_node)
            allowed[loop] = 1
        connectors.append(Connector("c{}".format(j), clause_node, 1.0, 1.0, allowed))
    edges.extend(literal_loops.values())

    warehouses = [
        Warehouse("x1", {}, {}, 0.0, 0.0),
        Warehouse(terminal, {}, {package: float(k)}, 1.0, 1.0),
    ]
    for i in range(1, n + 1):
        for suffix in ("T", "F"):
            warehouses.append(Warehouse("x{}{}".format(i, suffix), {}, {}, 0.0, 0.0))
    for j in range(1, k + 1):
        warehouses.append(Warehouse("C{}".format(j), {package: 1.0}, {}, 0.0, 0.0))

    cost = {e.id: constant.SAT_EDGE_COST for e in edges}
    cost[terminal_loop] = constant.SAT_TERMINAL_LOOP_COST
    log.debug("Generated SAT gadget with {} variables and {} clauses".format(n, k))
    return Scenario(
        graph=PhysicalGraph(nodes=frozenset(nodes), edges=tuple(edges)),
        packages=(Package(package, 1.0, 1.0),),
        connectors=tuple(connectors),
        warehouses=tuple(warehouses),
        interdiction=InterdictionSpec(budget=1.0, cost=cost),
        horizon=2 * n,
    )


def set_cover_paths(
    universe_size: int, sets: Sequence[Iterable[int]]
) -> list[list[str]]:
    """
    Physical node sequence of path P_i for every universe element i: from s
    through S_j -> S'_j for every set j containing i, then to t, then waiting
    at t until the horizon.
    """
    members = [sorted(j for j, s in enumerate(sets, 1) if i in s) for i in range(1, universe_size + 1)]
    horizon = set_cover_horizon(universe_size, sets)
    paths = []
    for covering in members:
        nodes = ["s"]
        for j in covering:
            nodes += ["S{}".format(j), "S'{}".format(j)]
        nodes.append("t")
        nodes += ["t"] * (horizon - (len(nodes) - 1))
        paths.append(nodes)
    return paths


def set_cover_horizon(universe_size: int, sets: Sequence[Iterable[int]]) -> int:
    most = max(
        (sum(1 for s in sets if i in s) for i in range(1, universe_size + 1)),
        default=0,
    )
    return 2 * max(universe_size, most) + 1


def generate_set_cover_gadget(universe_size: int, sets: Sequence[Iterable[int]], budget: float):
    """
    Build the set cover gadget and Blue's uniform mixture over the element
    paths. Red's best response to that mixture has value 0 iff a cover of at
    most `budget` sets exists.

    Elements are 1..universe_size, sets are iterables of elements.
    """
    from ..layered import LogisticsPlan, Step
    from ..oracle.strategy import MixedStrategy

    set_list = [frozenset(int(x) for x in s) for s in sets]
    if universe_size < 1 or not set_list or any(not s for s in set_list):
        raise CLError(
            "INVALID_SET_SYSTEM", {"reason": "universe and sets must be nonempty"}
        )
    for s in set_list:
        for x in s:
            if x < 1 or x > universe_size:
                raise CLError(
                    "INVALID_SET_SYSTEM",
                    {"reason": "element {} outside 1..{}".format(x, universe_size)},
                )
    for i in range(1, universe_size + 1):
        if not any(i in s for s in set_list):
            raise CLError("UNCOVERED_ELEMENT", {"element": i})

    horizon = set_cover_horizon(universe_size, set_list)
    package = constant.SET_COVER_PACKAGE
    nodes = ["s", "t"]
    edges = []
    cost = {}
    m = len(set_list)
    for j in range(1, m + 1):
        fwd, back = "S{}".format(j), "S'{}".format(j)
        nodes += [fwd, back]
        edges.append(Edge(edge_id("s", fwd), "s", fwd))
        cut = edge_id(fwd, back)
        edges.append(Edge(cut, fwd, back))
        cost[cut] = 1.0
        for i in range(1, m + 1):
            if i != j:
                target = "S{}".format(i)
                edges.append(Edge(edge_id(back, target), back, target))
        edges.append(Edge(edge_id(back, "t"), back, "t"))
    edges.append(Edge(edge_id("t", "t"), "t", "t"))

    connector = Connector("c", "s", 1.0, 1.0, {e.id: 1 for e in edges})
    scenario = Scenario(
        graph=PhysicalGraph(nodes=frozenset(nodes), edges=tuple(edges)),
        packages=(Package(package, 1.0, 1.0),),
        connectors=(connector,),
        warehouses=(
            Warehouse("s", {package: 1.0}, {}, 0.0, 0.0),
            Warehouse("t", {}, {package: 1.0}, 1.0, 1.0),
        ),
        interdiction=InterdictionSpec(budget=budget, cost=cost),
        horizon=horizon,
    )

    plans = []
    for nodes_seq in set_cover_paths(universe_size, set_list):
        steps = tuple(
            Step(edge_id(tail, head), tail, head, t, t + 1)
            for t, (tail, head) in enumerate(zip(nodes_seq, nodes_seq[1:]))
        )
        plans.append(LogisticsPlan(((connector.id, steps),)))
    mixture = MixedStrategy.uniform(plans)
    log.debug(
        "Generated set cover gadget with {} elements, {} sets, budget {}".format(
            universe_size, m, budget
        )
    )
    return scenario, mixture
