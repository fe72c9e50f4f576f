#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging

from .. import constant, util
from ..cnf import parse_cnf, ParseError
from ..error import CLError
from ..scenario import (
    generate_grid_world,
    generate_sat_gadget,
    generate_set_cover_gadget,
    save_scenario_file,
)
from .base import Payload

log = logging.getLogger(__name__)


class GridGenPayload(Payload):
    def __init__(self, *args, **kwargs):
        super(GridGenPayload, self).__init__(*args, **kwargs)
        self.n = kwargs.get("n")
        self.horizon = kwargs.get("horizon")
        self.budget = kwargs.get("budget")
        self.uniform_costs = kwargs.get("costs", "uniform") == "uniform"
        self.drop_prob = kwargs.get("drop_prob", constant.DEFAULT_EDGE_DROP_PROB)
        self.seed = kwargs.get("seed", 0)
        self.out = kwargs.get("out")

    def run(self) -> int:
        scenario = generate_grid_world(
            self.n,
            self.horizon,
            self.budget,
            uniform_costs=self.uniform_costs,
            edge_drop_prob=self.drop_prob,
            seed=self.seed,
        )
        save_scenario_file(scenario, self.out)
        print(
            "{}x{} grid, T={}, budget {}, {} edges -> {}".format(
                self.n,
                self.n,
                self.horizon,
                self.budget,
                len(scenario.graph.edges),
                self.out,
            )
        )
        return constant.EXIT_OK


class GadgetPayload(Payload):
    """
    Scenario files for the hardness gadgets: a SAT gadget from a DIMACS CNF
    file, or a set cover gadget together with Blue's element-path mixture
    """

    def __init__(self, *args, **kwargs):
        super(GadgetPayload, self).__init__(*args, **kwargs)
        self.kind = kwargs.get("kind")
        self.cnf = kwargs.get("cnf", None)
        self.universe = kwargs.get("universe", None)
        self.sets = kwargs.get("set", None) or []
        self.budget = kwargs.get("budget", 1.0)
        self.out = kwargs.get("out")
        self.strategy_out = kwargs.get("strategy_out", None)

    def read_formula(self):
        try:
            return parse_cnf(util.read_text(self.cnf))
        except ParseError as e:
            raise CLError(
                "INVALID_CNF",
                {"reason": "{} (line {}, column {})".format(e, e.line, e.column)},
            )

    def run(self) -> int:
        if self.kind == "sat":
            formula = self.read_formula()
            scenario = generate_sat_gadget(formula.clauses, formula.num_vars)
            save_scenario_file(scenario, self.out)
            print(
                "SAT gadget with {} variables, {} clauses -> {}".format(
                    formula.num_vars, formula.num_clauses, self.out
                )
            )
            return constant.EXIT_OK

        scenario, mixture = generate_set_cover_gadget(
            self.universe, self.sets, self.budget
        )
        save_scenario_file(scenario, self.out)
        if self.strategy_out:
            util.write_json(self.strategy_out, {"blue": mixture.to_json()})
            log.info("Wrote {}".format(self.strategy_out))
        print(
            "Set cover gadget with {} elements, {} sets, budget {} -> {}".format(
                self.universe, len(self.sets), self.budget, self.out
            )
        )
        return constant.EXIT_OK
