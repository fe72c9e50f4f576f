#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

MILP building blocks shared by Blue's best response and the min-overlap
heuristic: binary path flows per connector and, per replica, the package
flows of the recourse problem linked to those paths with big-M rows.
"""

import collections
import logging
from dataclasses import dataclass, field

from .. import constant
from ..layered import InterdictionPlan, LayeredGraph, LogisticsPlan, Step
from ..milp import Model, Sense, VarKind
from ..scenario.models import Scenario

log = logging.getLogger(__name__)


def load_bounds(scenario: Scenario) -> dict[tuple[str, str], float]:
    """
    Largest load of each package a connector can ever carry on one edge:
    the tighter of its weight cap, its volume cap and the total supply.
    """
    bounds = {}
    for c in scenario.connectors:
        for p in scenario.packages:
            candidates = [scenario.total_supply(p.id)]
            if p.unit_weight > 0:
                candidates.append(c.weight_cap / p.unit_weight)
            if p.unit_volume > 0:
                candidates.append(c.volume_cap / p.unit_volume)
            bounds[(c.id, p.id)] = min(candidates)
    return bounds


@dataclass
class Replica:
    interdiction: InterdictionPlan
    loads: dict[tuple[str, Step, str], int] = field(default_factory=dict)
    stocks: dict[tuple[str, int, str], int] = field(default_factory=dict)
    g_vars: dict[str, int] = field(default_factory=dict)


class BlueFormulation:
    """
    Path-flow variables f_c(e) for every layered edge of every connector,
    with a unit source at (o(c), 0) and conservation on layers 1..T-1.
    """

    def __init__(self, scenario: Scenario, layered: dict[str, LayeredGraph], model: Model, tag: str = ""):
        self.scenario = scenario
        self.layered = layered
        self.model = model
        self.tag = tag
        self.mhat = load_bounds(scenario)
        self.f: dict[tuple[str, Step], int] = {}
        self.replicas: list[Replica] = []
        self._build_paths()

    def _name(self, fmt, *args):
        return self.tag + fmt.format(*args)

    def _build_paths(self):
        model = self.model
        horizon = self.scenario.horizon
        for c in self.scenario.connectors:
            graph = self.layered[c.id]
            for step in graph.steps:
                self.f[(c.id, step)] = model.add_var(
                    self._name("f[{},{}]", c.id, step), VarKind.BINARY
                )
            model.add_constr(
                [(self.f[(c.id, s)], 1.0) for s in graph.out_steps(graph.root)],
                Sense.EQ,
                1.0,
                self._name("source[{}]", c.id),
            )
            for state in graph.nodes:
                if state[1] == 0 or state[1] >= horizon:
                    continue
                terms = [(self.f[(c.id, s)], 1.0) for s in graph.in_steps(state)]
                terms += [(self.f[(c.id, s)], -1.0) for s in graph.out_steps(state)]
                model.add_constr(
                    terms, Sense.EQ, 0.0, self._name("flow[{},{}]", c.id, state)
                )

    def edge_usage(self) -> dict[str, list[int]]:
        """
        f variables of every layered copy of each physical edge
        """
        usage = collections.defaultdict(list)
        for (cid, step), var in self.f.items():
            usage[step.edge_id].append(var)
        return usage

    def add_replica(self, interdiction: InterdictionPlan, cancel_loads: bool = True) -> Replica:
        """
        Package flows of one scenario: loads linked to the path flows, warehouse
        balances, conservation at non-warehouse nodes with loads arriving on
        interdicted edges dropped, and the Leontief rows. With cancel_loads,
        crossing an interdicted edge zeroes every later load of that
        connector into a warehouse.
        """
        scenario = self.scenario
        model = self.model
        horizon = scenario.horizon
        r = len(self.replicas)
        replica = Replica(interdiction)
        self.replicas.append(replica)
        warehouse_nodes = scenario.warehouse_nodes
        packages = scenario.packages
        cut = interdiction.edges

        for c in scenario.connectors:
            graph = self.layered[c.id]
            active = [p for p in packages if self.mhat[(c.id, p.id)] > 0]
            capacity_rows = [
                (attr, cap, label)
                for attr, cap, label in (
                    ("unit_weight", c.weight_cap, "wcap"),
                    ("unit_volume", c.volume_cap, "vcap"),
                )
                if not self._link_implies_cap(c, active, attr, cap)
            ]
            for step in graph.steps:
                f = self.f[(c.id, step)]
                for p in active:
                    l = model.add_var(self._name("l{}[{},{},{}]", r, c.id, step, p.id))
                    replica.loads[(c.id, step, p.id)] = l
                    model.add_constr(
                        {l: 1.0, f: -self.mhat[(c.id, p.id)]},
                        Sense.LE,
                        0.0,
                        self._name("link{}[{},{},{}]", r, c.id, step, p.id),
                    )
                for attr, cap, label in capacity_rows:
                    terms = [
                        (replica.loads[(c.id, step, p.id)], getattr(p, attr))
                        for p in active
                        if getattr(p, attr) > 0
                    ]
                    if terms:
                        terms.append((f, -cap))
                        model.add_constr(
                            terms,
                            Sense.LE,
                            0.0,
                            self._name("{}{}[{},{}]", label, r, c.id, step),
                        )

            # Conservation of each package through non-warehouse nodes
            for state in graph.nodes:
                if state[0] in warehouse_nodes or state[1] >= horizon:
                    continue
                for p in active:
                    terms = [
                        (replica.loads[(c.id, s, p.id)], 1.0)
                        for s in graph.in_steps(state)
                        if s.edge_id not in cut
                    ]
                    terms += [
                        (replica.loads[(c.id, s, p.id)], -1.0)
                        for s in graph.out_steps(state)
                    ]
                    if terms:
                        model.add_constr(
                            terms,
                            Sense.EQ,
                            0.0,
                            self._name("cons{}[{},{},{}]", r, c.id, state, p.id),
                        )

            if cancel_loads and cut:
                self._add_cancelling_rows(replica, c, graph, active)

        # Warehouse balances over all connectors
        for w in scenario.warehouses:
            for t in range(1, horizon + 2):
                for p in packages:
                    replica.stocks[(w.node, t, p.id)] = model.add_var(
                        self._name("s{}[{},{},{}]", r, w.node, t, p.id)
                    )
            for t in range(horizon + 1):
                state = (w.node, t)
                for p in packages:
                    terms = [(replica.stocks[(w.node, t + 1, p.id)], -1.0)]
                    rhs = 0.0
                    if t == 0:
                        rhs = -w.supply.get(p.id, 0.0)
                    else:
                        terms.append((replica.stocks[(w.node, t, p.id)], 1.0))
                    for c in scenario.connectors:
                        graph = self.layered[c.id]
                        for s in graph.in_steps(state):
                            key = (c.id, s, p.id)
                            if key in replica.loads and s.edge_id not in cut:
                                terms.append((replica.loads[key], 1.0))
                        for s in graph.out_steps(state):
                            key = (c.id, s, p.id)
                            if key in replica.loads:
                                terms.append((replica.loads[key], -1.0))
                    model.add_constr(
                        terms,
                        Sense.EQ,
                        rhs,
                        self._name("bal{}[{},{},{}]", r, w.node, t, p.id),
                    )

        for w in scenario.demand_warehouses:
            g = model.add_var(self._name("g{}[{}]", r, w.node), ub=w.max_units)
            replica.g_vars[w.node] = g
            for pid, d in w.positive_demand().items():
                model.add_constr(
                    {g: d, replica.stocks[(w.node, horizon + 1, pid)]: -1.0},
                    Sense.LE,
                    0.0,
                    self._name("leontief{}[{},{}]", r, w.node, pid),
                )
        return replica

    def _link_implies_cap(self, connector, active, attr, cap) -> bool:
        # the link rows already cap the total at sum(attr * mhat) * f
        full = sum(getattr(p, attr) * self.mhat[(connector.id, p.id)] for p in active)
        return full <= cap + constant.LP_TOLERANCE

    def _add_cancelling_rows(self, replica, connector, graph, active):
        horizon = self.scenario.horizon
        warehouse_nodes = self.scenario.warehouse_nodes
        into_warehouse = [s for s in graph.steps if s.head in warehouse_nodes]
        per_step = sum(self.mhat[(connector.id, p.id)] for p in active)
        for step in graph.steps:
            if step.edge_id not in replica.interdiction.edges:
                continue
            # A single path carries at most T - t loaded steps after t
            big_m = (horizon - step.arrive) * per_step
            if big_m <= 0:
                continue
            terms = [
                (replica.loads[(connector.id, later, p.id)], 1.0)
                for later in into_warehouse
                if graph.reachable_between(step, later)
                for p in active
            ]
            if not terms:
                continue
            terms.append((self.f[(connector.id, step)], big_m))
            self.model.add_constr(
                terms,
                Sense.LE,
                big_m,
                self._name(
                    "cancel{}[{},{}]", len(self.replicas) - 1, connector.id, step
                ),
            )

    def fix_plan(self, plan: LogisticsPlan) -> None:
        used = {(cid, s) for cid, steps in plan.routes for s in steps}
        for key, var in self.f.items():
            self.model.fix(var, 1.0 if key in used else 0.0)

    def extract_plan(self, values) -> LogisticsPlan:
        routes = []
        horizon = self.scenario.horizon
        for c in self.scenario.connectors:
            graph = self.layered[c.id]
            state = graph.root
            steps = []
            while state[1] < horizon:
                chosen = [
                    s
                    for s in graph.out_steps(state)
                    if values[self.f[(c.id, s)]] > constant.BINARY_THRESHOLD
                ]
                if not chosen:
                    break
                steps.append(chosen[0])
                state = chosen[0].head_state
            routes.append((c.id, tuple(steps)))
        return LogisticsPlan(tuple(routes))
