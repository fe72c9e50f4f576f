#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Utility of a pure strategy pair: Blue's routes are fixed, every route is cut
at its first interdicted edge, and Blue re-optimizes package loads with an LP
that maximizes the Leontief value of the terminal stocks.
"""

import logging
import threading
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import milp, util
from .error import CLError
from .layered import InterdictionPlan, LogisticsPlan, Step, truncate_plan, TruncatedPlan
from .milp import Model, ObjSense, Sense
from .scenario.models import Scenario

log = logging.getLogger(__name__)


def leontief_value(scenario: Scenario, terminal_stocks: Mapping[tuple[str, str], float]) -> float:
    """
    Sum over demand warehouses of P(w) * min(min_p s(w, p) / D(w, p), U(w)),
    where terminal_stocks maps (node, package) to the stock at T+1.
    """
    total = 0.0
    for w in scenario.demand_warehouses:
        ratio = min(
            terminal_stocks.get((w.node, p), 0.0) / d
            for p, d in w.positive_demand().items()
        )
        total += w.unit_payoff * min(max(ratio, 0.0), w.max_units)
    return total


@dataclass
class FlowSolution:
    # (connector id, package id, step) -> load carried on that step
    loads: dict[tuple[str, str, Step], float] = field(default_factory=dict)
    # (warehouse node, t, package id) -> stock, t in 0..T+1
    stocks: dict[tuple[str, int, str], float] = field(default_factory=dict)
    # demand warehouse node -> satisfied units
    satisfied: dict[str, float] = field(default_factory=dict)

    def terminal_stocks(self, horizon: int) -> dict[tuple[str, str], float]:
        return {
            (node, p): amount
            for (node, t, p), amount in self.stocks.items()
            if t == horizon + 1
        }


class RecourseLP:
    """
    The recourse LP of one truncated plan. The step a destroyed connector
    was destroyed on keeps a load variable fixed to zero, so a load carried
    into it through a non-warehouse node is lost as well.
    """

    def __init__(self, scenario: Scenario, plan: TruncatedPlan, bounds_as_rows: bool = False):
        self.scenario = scenario
        self.plan = plan
        # Upper bounds become explicit rows so that every column is x >= 0
        self.bounds_as_rows = bounds_as_rows
        self.model = Model("recourse")
        self.load_vars: dict[tuple[str, int, str], int] = {}
        self.stock_vars: dict[tuple[str, int, str], int] = {}
        self.g_vars: dict[str, int] = {}
        self._build()

    def _build(self):
        scenario = self.scenario
        model = self.model
        horizon = scenario.horizon
        packages = [p.id for p in scenario.packages]
        warehouse_nodes = scenario.warehouse_nodes

        arrivals = {}
        departures = {}
        for cid, steps in self.plan.routes:
            destroyed = cid in self.plan.destroyed
            for k in range(len(steps)):
                lost = destroyed and k == len(steps) - 1
                for p in packages:
                    self.load_vars[(cid, k, p)] = model.add_var(
                        "l[{},{},{}]".format(cid, k, p), ub=0.0 if lost else milp.INF
                    )

        # rows reference the next step, so every load column exists first
        for cid, steps in self.plan.routes:
            connector = scenario.connector(cid)
            destroyed = cid in self.plan.destroyed
            for k, step in enumerate(steps):
                lost = destroyed and k == len(steps) - 1
                departures.setdefault((step.tail, step.depart), []).append((cid, k))
                if not lost:
                    arrivals.setdefault((step.head, step.arrive), []).append((cid, k))
                self._add_capacity_rows(connector, cid, k)
                if (
                    step.head not in warehouse_nodes
                    and k + 1 < len(steps)
                ):
                    for p in packages:
                        model.add_constr(
                            {
                                self.load_vars[(cid, k, p)]: 1.0,
                                self.load_vars[(cid, k + 1, p)]: -1.0,
                            },
                            Sense.EQ,
                            0.0,
                            "cont[{},{},{}]".format(cid, k, p),
                        )

        for w in scenario.warehouses:
            for t in range(1, horizon + 2):
                for p in packages:
                    self.stock_vars[(w.node, t, p)] = model.add_var(
                        "s[{},{},{}]".format(w.node, t, p)
                    )
            for t in range(horizon + 1):
                for p in packages:
                    terms = [(self.stock_vars[(w.node, t + 1, p)], -1.0)]
                    rhs = 0.0
                    if t == 0:
                        rhs = -w.supply.get(p, 0.0)
                    else:
                        terms.append((self.stock_vars[(w.node, t, p)], 1.0))
                    for cid, k in arrivals.get((w.node, t), ()):
                        terms.append((self.load_vars[(cid, k, p)], 1.0))
                    for cid, k in departures.get((w.node, t), ()):
                        terms.append((self.load_vars[(cid, k, p)], -1.0))
                    model.add_constr(
                        terms, Sense.EQ, rhs, "bal[{},{},{}]".format(w.node, t, p)
                    )

        objective = {}
        for w in scenario.demand_warehouses:
            if self.bounds_as_rows:
                g = model.add_var("g[{}]".format(w.node))
                model.add_constr({g: 1.0}, Sense.LE, w.max_units, "cap[{}]".format(w.node))
            else:
                g = model.add_var("g[{}]".format(w.node), ub=w.max_units)
            self.g_vars[w.node] = g
            objective[g] = w.unit_payoff
            for p, d in w.positive_demand().items():
                model.add_constr(
                    {g: d, self.stock_vars[(w.node, horizon + 1, p)]: -1.0},
                    Sense.LE,
                    0.0,
                    "leontief[{},{}]".format(w.node, p),
                )
        model.set_objective(objective, ObjSense.MAXIMIZE)

    def _add_capacity_rows(self, connector, cid, k):
        for attr, cap, label in (
            ("unit_weight", connector.weight_cap, "wcap"),
            ("unit_volume", connector.volume_cap, "vcap"),
        ):
            terms = {
                self.load_vars[(cid, k, p.id)]: getattr(p, attr)
                for p in self.scenario.packages
                if getattr(p, attr) > 0
            }
            if terms:
                self.model.add_constr(
                    terms, Sense.LE, cap, "{}[{},{}]".format(label, cid, k)
                )

    def solve(self, backend=None) -> tuple[float, FlowSolution]:
        outcome = milp.solve_or_raise(self.model, backend=backend)
        if not outcome.status.has_solution:
            raise CLError(
                "SOLVER_ERROR",
                {
                    "model": self.model.name,
                    "status": outcome.status.value,
                    "errmsg": outcome.message,
                },
            )
        solution = FlowSolution()
        routes = dict(self.plan.routes)
        for (cid, k, p), var in self.load_vars.items():
            solution.loads[(cid, p, routes[cid][k])] = outcome.value(var)
        for w in self.scenario.warehouses:
            for p in self.scenario.packages:
                solution.stocks[(w.node, 0, p.id)] = w.supply.get(p.id, 0.0)
        for key, var in self.stock_vars.items():
            solution.stocks[key] = outcome.value(var)
        for node, var in self.g_vars.items():
            solution.satisfied[node] = outcome.value(var)
        value = max(0.0, outcome.objective)
        return value, solution


def recourse_utility(
    scenario: Scenario,
    plan: LogisticsPlan | TruncatedPlan,
    interdiction: InterdictionPlan,
    backend=None,
) -> tuple[float, FlowSolution]:
    truncated = truncate_plan(plan, interdiction)
    return RecourseLP(scenario, truncated).solve(backend)


class PayoffEvaluator:
    """
    Cached u(plan, interdiction). Pairs with the same truncation share one
    LP solve.
    """

    def __init__(self, scenario: Scenario, backend=None):
        self.scenario = scenario
        self.backend = milp.get_backend(backend)
        self._cache: dict[TruncatedPlan, float] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def utility(self, plan: LogisticsPlan, interdiction: InterdictionPlan) -> float:
        truncated = truncate_plan(plan, interdiction)
        with self._lock:
            if truncated in self._cache:
                self.hits += 1
                return self._cache[truncated]
        value, _ = RecourseLP(self.scenario, truncated).solve(self.backend)
        with self._lock:
            self.misses += 1
            self._cache.setdefault(truncated, value)
            return self._cache[truncated]

    def versus_red(self, plan: LogisticsPlan, red_mixture) -> float:
        return sum(
            prob * self.utility(plan, iota)
            for iota, prob in red_mixture.items()
        )

    def versus_blue(self, blue_mixture, interdiction: InterdictionPlan) -> float:
        return sum(
            prob * self.utility(plan, interdiction)
            for plan, prob in blue_mixture.items()
        )

    @property
    def cache_size(self) -> int:
        return len(self._cache)


class PayoffMatrix:
    """
    Utilities of Blue rows against Red columns. Growing the matrix only
    evaluates the new cells, concurrently when threads allow it.
    """

    def __init__(
        self,
        evaluator: PayoffEvaluator,
        blue_plans: Sequence[LogisticsPlan] = (),
        red_plans: Sequence[InterdictionPlan] = (),
        threads: int | None = None,
    ):
        self.evaluator = evaluator
        self.threads = threads
        self.blue_plans: list[LogisticsPlan] = []
        self.red_plans: list[InterdictionPlan] = []
        self.values = np.zeros((0, 0))
        for plan in blue_plans:
            self.add_blue(plan)
        for plan in red_plans:
            self.add_red(plan)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def blue_index(self, plan: LogisticsPlan) -> int | None:
        try:
            return self.blue_plans.index(plan)
        except ValueError:
            return None

    def red_index(self, plan: InterdictionPlan) -> int | None:
        try:
            return self.red_plans.index(plan)
        except ValueError:
            return None

    def _evaluate(self, cells):
        def cell_value(cell):
            i, j = cell
            return self.evaluator.utility(self.blue_plans[i], self.red_plans[j])

        workers = self.threads or 1
        if workers <= 1 or len(cells) <= 1:
            return [cell_value(c) for c in cells]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(cell_value, cells))

    def add_blue(self, plan: LogisticsPlan) -> int:
        self.blue_plans.append(plan)
        i = len(self.blue_plans) - 1
        n_red = len(self.red_plans)
        row = self._evaluate([(i, j) for j in range(n_red)])
        self.values = np.vstack(
            [
                self.values.reshape(i, n_red),
                np.array(row, dtype=float).reshape(1, n_red),
            ]
        )
        return i

    def add_red(self, plan: InterdictionPlan) -> int:
        self.red_plans.append(plan)
        j = len(self.red_plans) - 1
        n_blue = len(self.blue_plans)
        col = self._evaluate([(i, j) for i in range(n_blue)])
        self.values = np.hstack(
            [
                self.values.reshape(n_blue, j),
                np.array(col, dtype=float).reshape(n_blue, 1),
            ]
        )
        return j

    def to_csv(self) -> str:
        header = ["blue\\red"] + [p.ident for p in self.red_plans]
        rows = [
            [plan.ident] + [float(v) for v in self.values[i]]
            for i, plan in enumerate(self.blue_plans)
        ]
        return util.csv_text(header, rows)


def payoff_matrix(
    scenario: Scenario,
    blue_plans: Sequence[LogisticsPlan],
    red_plans: Sequence[InterdictionPlan],
    evaluator: PayoffEvaluator | None = None,
    threads: int | None = None,
    backend=None,
) -> PayoffMatrix:
    evaluator = evaluator or PayoffEvaluator(scenario, backend)
    matrix = PayoffMatrix(evaluator, threads=threads)
    for plan in red_plans:
        matrix.red_plans.append(plan)
    matrix.values = np.zeros((0, len(matrix.red_plans)))
    for plan in blue_plans:
        matrix.add_blue(plan)
    log.debug(
        "Built {}x{} payoff matrix ({} LP solves, {} cache hits)".format(
            matrix.shape[0], matrix.shape[1], evaluator.misses, evaluator.hits
        )
    )
    return matrix
