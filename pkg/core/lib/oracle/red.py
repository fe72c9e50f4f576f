#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Red's best response as a single minimization MILP. For every Blue plan in the
mixture the recourse LP runs over the full route, and each load carried at or
after a crossing of an interdicted edge pays the penalty Z per unit. Z is at
least the value one unit can ever add, so the penalized optimum equals the
truncated recourse value. Interdiction only enters objective coefficients of
the inner LP, which makes its dual linear in the binary edge choices.
"""

import collections
import logging
import math
import time

from .. import constant, milp
from ..error import CLError
from ..layered import InterdictionPlan, LogisticsPlan, TruncatedPlan
from ..milp import Model, ObjSense, Sense, SolveStatus, VarKind
from ..payoff import RecourseLP
from ..scenario.models import Scenario
from .strategy import BestResponseResult, MixedStrategy

log = logging.getLogger(__name__)


class RecourseInnerLP:
    def __init__(self, scenario: Scenario, plan: LogisticsPlan, weight: float = 1.0, penalty: float | None = None):
        self.scenario = scenario
        self.plan = plan
        self.weight = weight
        self.penalty = scenario.penalty_constant() if penalty is None else penalty
        self.lp = RecourseLP(
            scenario, TruncatedPlan(plan.routes, frozenset()), bounds_as_rows=True
        )
        self.model = self.lp.model
        self.base_objective = {
            var: weight * coef for var, coef in self.model.objective.items()
        }
        # load var -> {physical edge: times it was crossed up to that step}
        self.crossings: dict[int, dict[str, int]] = {}
        interdictable = scenario.interdiction.interdictable
        packages = [p.id for p in scenario.packages]
        for cid, steps in plan.routes:
            seen = collections.Counter()
            for k, step in enumerate(steps):
                if step.edge_id in interdictable:
                    seen[step.edge_id] += 1
                if not seen:
                    continue
                for p in packages:
                    self.crossings[self.lp.load_vars[(cid, k, p)]] = dict(seen)
        for v in self.model.variables:
            if v.lb != 0.0 or v.ub != milp.INF:
                raise CLError(
                    "INVALID_MODEL",
                    {"model": self.model.name, "reason": "column {} is bounded".format(v.name)},
                )

    @property
    def edges(self) -> frozenset[str]:
        return frozenset(e for counts in self.crossings.values() for e in counts)

    def penalty_coefficient(self, var: int, edge_id: str) -> float:
        return self.weight * self.penalty * self.crossings.get(var, {}).get(edge_id, 0)

    def objective(self, interdiction: InterdictionPlan) -> dict[int, float]:
        terms = dict(self.base_objective)
        for var, counts in self.crossings.items():
            cost = sum(
                self.penalty_coefficient(var, e) for e in counts if e in interdiction.edges
            )
            if cost:
                terms[var] = terms.get(var, 0.0) - cost
        return terms

    def solve_primal(self, interdiction: InterdictionPlan, backend=None) -> float:
        self.model.set_objective(self.objective(interdiction), ObjSense.MAXIMIZE)
        outcome = milp.solve_or_raise(self.model, backend=backend)
        return outcome.objective

    def add_dual(self, master: Model, y_vars: dict[str, int], tag: str = "") -> dict[int, float]:
        """
        Add the dual of this inner LP to master and return its objective
        terms. Rows of the inner LP become multipliers u (u >= 0 on <= rows,
        u <= 0 on >= rows, free on = rows); every column gives
        sum_r a_r u_r + sum_e pen_e y_e >= c_0.
        """
        u = []
        objective = {}
        for row in self.model.constraints:
            if row.sense is Sense.LE:
                lb, ub = 0.0, milp.INF
            elif row.sense is Sense.GE:
                lb, ub = -milp.INF, 0.0
            else:
                lb, ub = -milp.INF, milp.INF
            var = master.add_var("{}u[{}]".format(tag, row.name), lb=lb, ub=ub)
            u.append(var)
            if row.rhs:
                objective[var] = row.rhs
        for col, (variable, coeffs) in enumerate(zip(self.model.variables, self.model.columns())):
            terms = [(u[row], coef) for row, coef in coeffs.items()]
            for edge_id in self.crossings.get(col, {}):
                if edge_id in y_vars:
                    terms.append((y_vars[edge_id], self.penalty_coefficient(col, edge_id)))
            master.add_constr(
                terms,
                Sense.GE,
                self.base_objective.get(col, 0.0),
                "{}dual[{}]".format(tag, variable.name),
            )
        return objective

    def solve_dual(self, interdiction: InterdictionPlan, backend=None) -> float:
        """
        Dual optimum with the interdiction fixed, equal to solve_primal by
        strong duality
        """
        dual = Model("recourse_dual")
        y_vars = {}
        for e in sorted(self.edges):
            value = 1.0 if e in interdiction.edges else 0.0
            y_vars[e] = dual.add_var("y[{}]".format(e), lb=value, ub=value)
        dual.set_objective(self.add_dual(dual, y_vars), ObjSense.MINIMIZE)
        return milp.solve_or_raise(dual, backend=backend).objective


def build_red_model(scenario: Scenario, blue_mixture: MixedStrategy):
    """
    Returns (model, y_vars, inner LPs)
    """
    budget = scenario.interdiction.budget + constant.BUDGET_TOLERANCE
    costs = scenario.interdiction.cost
    inner = [
        RecourseInnerLP(scenario, plan, weight=prob)
        for plan, prob in blue_mixture.active()
    ]
    candidates = sorted(
        {e for block in inner for e in block.edges if costs[e] <= budget}
    )
    model = Model("red_br")
    y_vars = {e: model.add_var("y[{}]".format(e), VarKind.BINARY) for e in candidates}
    if candidates:
        model.add_constr(
            [(y_vars[e], costs[e]) for e in candidates],
            Sense.LE,
            scenario.interdiction.budget,
            "budget",
        )
    objective = {}
    for i, block in enumerate(inner):
        for var, coef in block.add_dual(model, y_vars, tag="b{}.".format(i)).items():
            objective[var] = objective.get(var, 0.0) + coef
    model.set_objective(objective, ObjSense.MINIMIZE)
    return model, y_vars, inner


def red_best_response(
    scenario: Scenario,
    blue_mixture: MixedStrategy,
    time_limit: float | None = None,
    backend=None,
    gap: float = constant.DEFAULT_MIP_GAP,
    evaluator=None,
) -> BestResponseResult:
    start = time.monotonic()
    model, y_vars, _ = build_red_model(scenario, blue_mixture)
    log.debug("Built {}".format(model.describe()))

    outcome = milp.solve_or_raise(model, time_limit=time_limit, gap=gap, backend=backend)
    if outcome.status is SolveStatus.NO_SOLUTION:
        log.warning(
            "Red best response found no incumbent within {}s, solving to "
            "optimality".format(time_limit)
        )
        outcome = milp.solve_or_raise(model, gap=gap, backend=backend)

    chosen = [
        e for e, var in y_vars.items() if outcome.value(var) > constant.BINARY_THRESHOLD
    ]
    plan = InterdictionPlan.from_edges(scenario, chosen)
    value = outcome.objective
    if evaluator is not None:
        value = evaluator.versus_blue(blue_mixture, plan)
    bound = value if math.isnan(outcome.bound) else outcome.bound
    result = BestResponseResult(
        plan=plan,
        value=value,
        bound=min(bound, value),
        optimal=outcome.status is SolveStatus.OPTIMAL,
        wall_time=time.monotonic() - start,
        model=model,
    )
    log.debug(
        "Red best response {} value {:.6f} bound {:.6f} ({})".format(
            plan.ident, result.value, result.bound, outcome.status.value
        )
    )
    return result
