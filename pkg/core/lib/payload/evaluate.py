#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import json
import logging

from .. import constant, util
from ..baselines import min_overlap_plans, no_red_optimal
from ..equilibrium import exploiting_response
from ..error import CLError
from ..layered import InterdictionPlan, unroll_all, validate_plan
from ..oracle import blue_strategy_from_json, MixedStrategy
from ..payoff import PayoffEvaluator
from .base import Payload

log = logging.getLogger(__name__)


class EvaluatePayload(Payload):
    """
    Exploitability of a Blue mixture: read from a strategy file, built by
    the min-overlap heuristic, or the no-Red optimal plan
    """

    def __init__(self, *args, **kwargs):
        super(EvaluatePayload, self).__init__(*args, **kwargs)
        self.strategy_path = kwargs.get("strategy", None)
        self.k = kwargs.get("k", None)
        self.n_str = kwargs.get("n_str", None)
        self.no_red = kwargs.get("no_red", False)
        self.heuristic_time_limit = kwargs.get(
            "heuristic_time_limit", constant.DEFAULT_HEURISTIC_TIME_LIMIT
        )

    def read_strategy(self) -> MixedStrategy:
        try:
            doc = json.loads(util.read_text(self.strategy_path))
            # Accept both strategies.json and a bare mixture document
            return blue_strategy_from_json(doc.get("blue", doc))
        except (ValueError, KeyError, TypeError, AttributeError) as e:
            raise CLError(
                "STRATEGY_PARSE_ERROR",
                {"filepath": self.strategy_path, "reason": str(e)},
            )

    def blue_mixture(self, scenario, layered):
        if self.strategy_path:
            mixture = self.read_strategy()
            for plan in mixture:
                validate_plan(plan, layered)
            return mixture, "file"
        if self.no_red:
            plan, value = no_red_optimal(scenario, self.backend, layered)
            log.info("No-Red optimal plan {} has value {:.6f}".format(plan.ident, value))
            return MixedStrategy.pure(plan), "no-red"
        result = min_overlap_plans(
            scenario,
            self.k,
            self.n_str,
            self.heuristic_time_limit,
            self.backend,
            layered=layered,
        )
        return result.strategy, "min-overlap"

    def run(self) -> int:
        scenario = self.load_scenario()
        layered = unroll_all(scenario, self.threads)
        mixture, source = self.blue_mixture(scenario, layered)
        evaluator = PayoffEvaluator(scenario, self.backend)
        response = exploiting_response(scenario, mixture, evaluator=evaluator)
        report = {
            "source": source,
            "value": response.value,
            "optimal": response.optimal,
            "red_plan": response.plan.to_json(),
            "blue": mixture.to_json(),
            "no_interdiction_value": evaluator.versus_blue(mixture, InterdictionPlan.empty()),
        }
        if source == "min-overlap":
            report["k"] = self.k
            report["n_str"] = self.n_str
        self.write_json(constant.REPORT_FILE, report)
        print(
            "exploitability {:.6f}, Red interdicts {}".format(
                response.value, ", ".join(sorted(response.plan.edges)) or "nothing"
            )
        )
        return constant.EXIT_OK
