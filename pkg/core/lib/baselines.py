#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Non-game-theoretic plans and the robustness experiments built on them.
"""

import collections
import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import constant, milp, util
from .equilibrium import double_oracle, exploitability
from .error import CLError
from .layered import InterdictionPlan, LogisticsPlan, unroll_all
from .milp import Model, ObjSense, Sense, SolveStatus
from .oracle import blue_best_response, BlueFormulation, MixedStrategy
from .payoff import PayoffEvaluator
from .scenario.models import Scenario

log = logging.getLogger(__name__)


def no_red_optimal(scenario: Scenario, backend=None, layered=None) -> tuple[LogisticsPlan, float]:
    response = blue_best_response(
        scenario,
        MixedStrategy.pure(InterdictionPlan.empty()),
        backend=backend,
        layered=layered,
    )
    return response.plan, response.value


def max_overlap(plans: Sequence[LogisticsPlan]) -> int:
    """
    Largest number of connector crossings of one physical edge, summed over
    all plans. Wait loops do not count.
    """
    usage = collections.Counter(
        step.edge_id
        for plan in plans
        for _, steps in plan.routes
        for step in steps
        if step.tail != step.head
    )
    return max(usage.values(), default=0)


@dataclass
class OverlapResult:
    plans: list[LogisticsPlan]
    overlap: float
    optimal: bool

    @property
    def strategy(self) -> MixedStrategy:
        return MixedStrategy.uniform(self.plans)


def min_overlap_plans(
    scenario: Scenario,
    k: float,
    n_str: int,
    time_limit: float | None = constant.DEFAULT_HEURISTIC_TIME_LIMIT,
    backend=None,
    layered=None,
) -> OverlapResult:
    """
    n_str logistics plans that each reach a no-Red utility of at least k,
    chosen to minimize the largest per-edge overlap between them
    """
    if n_str < 1:
        raise CLError("ARGUMENT_ERROR", {"name": "n_str", "reason": "must be at least 1"})
    if layered is None:
        layered = unroll_all(scenario)
    model = Model("min_overlap")
    formulations = []
    for r in range(n_str):
        formulation = BlueFormulation(scenario, layered, model, tag="r{}.".format(r))
        replica = formulation.add_replica(InterdictionPlan.empty(), cancel_loads=False)
        model.add_constr(
            [
                (g, scenario.warehouse_at(node).unit_payoff)
                for node, g in replica.g_vars.items()
            ],
            Sense.GE,
            k,
            "target[{}]".format(r),
        )
        formulations.append(formulation)

    z = model.add_var("z")
    usage = collections.defaultdict(list)
    for formulation in formulations:
        for edge_id, f_vars in formulation.edge_usage().items():
            if not scenario.edge(edge_id).is_loop:
                usage[edge_id].extend(f_vars)
    for edge_id, f_vars in sorted(usage.items()):
        model.add_constr(
            [(z, 1.0)] + [(f, -1.0) for f in f_vars],
            Sense.GE,
            0.0,
            "overlap[{}]".format(edge_id),
        )
    model.set_objective({z: 1.0}, ObjSense.MINIMIZE)
    log.debug("Built {}".format(model.describe()))

    outcome = milp.solve(model, time_limit=time_limit, backend=backend)
    if outcome.status is SolveStatus.NO_SOLUTION:
        log.warning(
            "Min-overlap model found no incumbent within {}s, solving to "
            "optimality".format(time_limit)
        )
        outcome = milp.solve(model, backend=backend)
    if outcome.status is SolveStatus.INFEASIBLE:
        raise CLError("HEURISTIC_INFEASIBLE", {"n_str": n_str, "k": k})
    if not outcome.status.has_solution:
        raise CLError(
            "SOLVER_ERROR",
            {"model": model.name, "status": outcome.status.value, "errmsg": outcome.message},
        )

    plans = [f.extract_plan(outcome.values) for f in formulations]
    optimal = outcome.status is SolveStatus.OPTIMAL
    if not optimal:
        log.warning(
            "Min-overlap plans for k={} n_str={} are the incumbent at the time "
            "limit".format(k, n_str)
        )
    distinct = len(set(plans))
    if distinct < len(plans):
        log.warning(
            "Min-overlap heuristic returned {} distinct plans out of {}".format(
                distinct, len(plans)
            )
        )
    return OverlapResult(plans, outcome.objective, optimal)


def min_overlap_strategy(
    scenario: Scenario,
    k: float,
    n_str: int,
    time_limit: float | None = constant.DEFAULT_HEURISTIC_TIME_LIMIT,
    backend=None,
) -> MixedStrategy:
    return min_overlap_plans(scenario, k, n_str, time_limit, backend).strategy


@dataclass
class RobustnessTable:
    """
    values[i, j]: utility of the equilibrium strategy computed for budget
    budgets[i] against a Red best response with budget budgets[j]
    """

    budgets: list[float]
    values: np.ndarray

    def column_violations(self, tol: float) -> list[float]:
        return [
            b
            for j, b in enumerate(self.budgets)
            if self.values[:, j].max() > self.values[j, j] + tol
        ]

    def diagonal_dominance(self, tol: float = 2 * constant.DEFAULT_EPSILON) -> bool:
        return not self.column_violations(tol)

    def to_csv(self) -> str:
        header = ["expected\\true"] + [util.format_cell(b) for b in self.budgets]
        rows = [
            [util.format_cell(b)] + [float(v) for v in self.values[i]]
            for i, b in enumerate(self.budgets)
        ]
        return util.csv_text(header, rows)


def price_of_robustness(
    scenario: Scenario,
    budgets: Sequence[float],
    threads: int | None = None,
    backend=None,
    **do_kwargs,
) -> RobustnessTable:
    budgets = [float(b) for b in budgets]
    if not budgets or budgets != sorted(budgets):
        raise CLError(
            "ARGUMENT_ERROR",
            {"name": "budgets", "reason": "must be a non-empty ascending list"},
        )
    backend = milp.get_backend(backend)
    # Utilities do not depend on the budget, one cache serves every cell
    evaluator = PayoffEvaluator(scenario, backend)

    def row(expected):
        result = double_oracle(
            scenario.with_budget(expected), backend=backend, threads=1, **do_kwargs
        )
        log.info(
            "Equilibrium for expected budget {}: value {:.6f}".format(
                expected, result.value
            )
        )
        return [
            exploitability(scenario.with_budget(true), result.blue, evaluator=evaluator)
            for true in budgets
        ]

    workers = max(1, min(threads or len(budgets), len(budgets)))
    if workers == 1:
        rows = [row(b) for b in budgets]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(row, budgets))
    table = RobustnessTable(budgets, np.array(rows, dtype=float))
    violations = table.column_violations(2 * do_kwargs.get("epsilon", constant.DEFAULT_EPSILON))
    if violations:
        log.warning(
            "Columns {} are not maximized on the diagonal".format(violations)
        )
    return table


@dataclass
class HeuristicTable:
    """
    values[i, j]: exploitability of the min-overlap strategy with target
    ks[i] and n_strs[j] plans; NaN where the target is unreachable
    """

    ks: list[float]
    n_strs: list[int]
    values: np.ndarray
    game_value: float = math.nan

    def to_csv(self) -> str:
        header = ["k\\n_str"] + [str(n) for n in self.n_strs]
        rows = [
            [util.format_cell(k)] + [float(v) for v in self.values[i]]
            for i, k in enumerate(self.ks)
        ]
        return util.csv_text(header, rows)


def heuristic_table(
    scenario: Scenario,
    ks: Sequence[float],
    n_strs: Sequence[int],
    time_limit: float | None = constant.DEFAULT_HEURISTIC_TIME_LIMIT,
    backend=None,
    game_value: float = math.nan,
) -> HeuristicTable:
    backend = milp.get_backend(backend)
    evaluator = PayoffEvaluator(scenario, backend)
    layered = unroll_all(scenario)
    values = np.full((len(ks), len(n_strs)), math.nan)
    for i, k in enumerate(ks):
        for j, n_str in enumerate(n_strs):
            try:
                result = min_overlap_plans(
                    scenario, k, n_str, time_limit, backend, layered=layered
                )
            except CLError as e:
                if e.err_key != "HEURISTIC_INFEASIBLE":
                    raise
                log.warning("Skipping k={} n_str={}: {}".format(k, n_str, e.desc))
                continue
            values[i, j] = exploitability(scenario, result.strategy, evaluator=evaluator)
            log.info(
                "Heuristic k={} n_str={}: overlap {} exploitability {:.6f}".format(
                    k, n_str, result.overlap, values[i, j]
                )
            )
    return HeuristicTable(list(ks), list(n_strs), values, game_value)
