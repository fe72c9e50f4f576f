#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging
import math
import time

from .. import constant, milp
from ..layered import LogisticsPlan, unroll_all
from ..milp import Model, ObjSense, SolveStatus
from ..scenario.models import Scenario
from .formulation import BlueFormulation
from .strategy import BestResponseResult, MixedStrategy

log = logging.getLogger(__name__)


def build_blue_model(scenario: Scenario, red_mixture: MixedStrategy, layered=None):
    """
    One replica of the package flows per interdiction plan in the support,
    all sharing the binary path flows. Returns (model, formulation).
    """
    if layered is None:
        layered = unroll_all(scenario)
    model = Model("blue_br")
    formulation = BlueFormulation(scenario, layered, model)
    objective = {}
    for iota, prob in red_mixture.items():
        replica = formulation.add_replica(iota)
        for node, g in replica.g_vars.items():
            weight = prob * scenario.warehouse_at(node).unit_payoff
            objective[g] = objective.get(g, 0.0) + weight
    model.set_objective(objective, ObjSense.MAXIMIZE)
    return model, formulation


def blue_best_response(
    scenario: Scenario,
    red_mixture: MixedStrategy,
    time_limit: float | None = None,
    backend=None,
    layered=None,
    fixed_plan: LogisticsPlan | None = None,
    gap: float = constant.DEFAULT_MIP_GAP,
    evaluator=None,
    incumbents=(),
) -> BestResponseResult:
    """
    Logistics plan maximizing the expected utility against red_mixture.
    With fixed_plan the path flows are pinned and the MILP only re-optimizes
    the loads. A time-limited solve that ends without an incumbent is
    repeated without a limit.

    With an evaluator, incumbent plans (usually the subgame rows) are scored
    against red_mixture as well, and the best of them replaces a MILP plan
    that scores lower. A best response can never be worth less than a plan
    that is already known.
    """
    start = time.monotonic()
    model, formulation = build_blue_model(scenario, red_mixture, layered)
    if fixed_plan is not None:
        formulation.fix_plan(fixed_plan)
    log.debug("Built {}".format(model.describe()))

    outcome = milp.solve_or_raise(model, time_limit=time_limit, gap=gap, backend=backend)
    if outcome.status is SolveStatus.NO_SOLUTION:
        log.warning(
            "Blue best response found no incumbent within {}s, solving to "
            "optimality".format(time_limit)
        )
        outcome = milp.solve_or_raise(model, gap=gap, backend=backend)

    plan = formulation.extract_plan(outcome.values)
    optimal = outcome.status is SolveStatus.OPTIMAL
    value = outcome.objective
    if evaluator is not None:
        # Exact recourse value of the extracted plan
        value = evaluator.versus_red(plan, red_mixture)
        plan, value = _best_known(plan, value, red_mixture, evaluator, incumbents)
    bound = value if math.isnan(outcome.bound) else outcome.bound
    result = BestResponseResult(
        plan=plan,
        value=value,
        bound=max(bound, value),
        optimal=optimal,
        wall_time=time.monotonic() - start,
        model=model,
    )
    log.debug(
        "Blue best response {} value {:.6f} bound {:.6f} ({})".format(
            plan.ident, result.value, result.bound, outcome.status.value
        )
    )
    return result


def _best_known(plan, value, red_mixture, evaluator, incumbents):
    best_plan, best_value = plan, value
    for incumbent in incumbents:
        incumbent_value = evaluator.versus_red(incumbent, red_mixture)
        if incumbent_value > best_value:
            best_plan, best_value = incumbent, incumbent_value
    if best_value > value + constant.BR_SHORTFALL_TOLERANCE:
        log.warning(
            "Blue best response {} is worth {:.6f}, below incumbent {} at "
            "{:.6f}; keeping the incumbent".format(
                plan.ident, value, best_plan.ident, best_value
            )
        )
        return best_plan, best_value
    return plan, value
