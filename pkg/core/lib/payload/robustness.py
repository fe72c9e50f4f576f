#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging

from .. import constant
from ..baselines import heuristic_table, price_of_robustness
from .base import Payload

log = logging.getLogger(__name__)


class RobustnessPayload(Payload):
    """
    Price-of-robustness table over a budget list, and optionally the
    min-overlap heuristic table over target payoffs and support sizes
    """

    def __init__(self, *args, **kwargs):
        super(RobustnessPayload, self).__init__(*args, **kwargs)
        self.budgets = sorted(kwargs.get("budgets", None) or [])
        self.epsilon = kwargs.get("epsilon", constant.DEFAULT_EPSILON)
        self.br_time_limit = kwargs.get("time_limit", constant.DEFAULT_BR_TIME_LIMIT)
        self.max_iterations = kwargs.get(
            "max_iterations", constant.DEFAULT_MAX_ITERATIONS
        )
        self.ks = list(kwargs.get("ks", None) or [])
        self.n_strs = list(kwargs.get("n_strs", None) or [])
        self.heuristic_time_limit = kwargs.get(
            "heuristic_time_limit", constant.DEFAULT_HEURISTIC_TIME_LIMIT
        )

    def run(self) -> int:
        scenario = self.load_scenario()
        table = price_of_robustness(
            scenario,
            self.budgets,
            threads=self.threads,
            backend=self.backend,
            epsilon=self.epsilon,
            br_time_limit=self.br_time_limit,
            max_iterations=self.max_iterations,
        )
        self.write_text(constant.ROBUSTNESS_FILE, table.to_csv())
        print(table.to_csv(), end="")
        violations = table.column_violations(2 * self.epsilon)
        if violations:
            print("diagonal dominance violated for true budgets {}".format(violations))
        else:
            print("diagonal dominance holds within {}".format(2 * self.epsilon))

        if self.ks and self.n_strs:
            budget = scenario.budget
            game_value = next(
                (
                    float(table.values[i, i])
                    for i, b in enumerate(table.budgets)
                    if b == budget
                ),
                float("nan"),
            )
            heuristic = heuristic_table(
                scenario,
                self.ks,
                self.n_strs,
                self.heuristic_time_limit,
                self.backend,
                game_value=game_value,
            )
            self.write_text(constant.HEURISTIC_FILE, heuristic.to_csv())
            print(heuristic.to_csv(), end="")
        return constant.EXIT_OK
