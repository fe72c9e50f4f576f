#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import dataclasses
import unittest

import numpy as np

from ..lib.layered import InterdictionPlan
from ..lib.oracle import MixedStrategy
from ..lib.payoff import (
    leontief_value,
    payoff_matrix,
    PayoffEvaluator,
    PayoffMatrix,
    recourse_utility,
)
from ..lib.scenario import Connector
from .fixtures import (
    chain_scenario,
    convoy_scenario,
    corridor_plan,
    corridor_scenario,
    plan,
    route,
    shuttle_scenario,
)


def convoy_plan():
    return plan(
        route("train", [("R", 0), ("X", 1), ("D", 2), ("D", 3)]),
        route("truck", [("R", 0), ("D", 2), ("D", 3)]),
    )


class LeontiefTest(unittest.TestCase):
    def test_scarcest_package_binds(self):
        scenario = convoy_scenario()
        # fuel supports 2 units, parts only 1
        self.assertEqual(
            leontief_value(scenario, {("D", "fuel"): 4.0, ("D", "parts"): 1.0}), 3.0
        )

    def test_cap(self):
        scenario = convoy_scenario()
        stocks = {("D", "fuel"): 100.0, ("D", "parts"): 100.0}
        self.assertEqual(leontief_value(scenario, stocks), 15.0)

    def test_missing_package_is_zero(self):
        self.assertEqual(leontief_value(convoy_scenario(), {("D", "fuel"): 4.0}), 0.0)


class RecourseTest(unittest.TestCase):
    def setUp(self):
        self.scenario = shuttle_scenario(horizon=4, capacity=2.0)
        self.plan = plan(
            route("truck", [("A", 0), ("B", 1), ("A", 2), ("B", 3), ("B", 4)])
        )

    def test_two_trips(self):
        value, solution = recourse_utility(
            self.scenario, self.plan, InterdictionPlan.empty()
        )
        self.assertAlmostEqual(value, 4.0, places=6)
        self.assertAlmostEqual(solution.satisfied["B"], 4.0, places=6)
        terminal = solution.terminal_stocks(self.scenario.horizon)
        self.assertAlmostEqual(terminal[("B", "food")], 4.0, places=6)
        self.assertAlmostEqual(terminal[("A", "food")], 1.0, places=6)
        self.assertEqual(solution.stocks[("A", 0, "food")], 5.0)

    def test_delivery_before_cut_survives(self):
        value, _ = recourse_utility(
            self.scenario,
            self.plan,
            InterdictionPlan.from_edges(self.scenario, ["B>A"]),
        )
        self.assertAlmostEqual(value, 2.0, places=6)

    def test_cut_on_first_step(self):
        value, _ = recourse_utility(
            self.scenario,
            self.plan,
            InterdictionPlan.from_edges(self.scenario, ["A>B"]),
        )
        self.assertAlmostEqual(value, 0.0, places=6)

    def test_cut_relay_loses_load(self):
        scenario = corridor_scenario(2)
        value, _ = recourse_utility(
            scenario, corridor_plan("M1"), InterdictionPlan.from_edges(scenario, ["S>M1"])
        )
        self.assertAlmostEqual(value, 0.0, places=6)
        value, _ = recourse_utility(
            scenario, corridor_plan("M1"), InterdictionPlan.from_edges(scenario, ["S>M2"])
        )
        self.assertAlmostEqual(value, 1.0, places=6)

    def test_route_through_two_relays(self):
        scenario = chain_scenario()
        chain = plan(route("truck", [("S", 0), ("P", 1), ("Q", 2), ("D", 3)]))
        for edges, expected in (([], 1.0), (["S>P"], 0.0), (["Q>D"], 0.0)):
            value, _ = recourse_utility(
                scenario, chain, InterdictionPlan.from_edges(scenario, edges)
            )
            self.assertAlmostEqual(value, expected, places=6, msg=str(edges))
        value, solution = recourse_utility(scenario, chain, InterdictionPlan.empty())
        self.assertAlmostEqual(solution.satisfied["D"], 1.0, places=6)

    def test_redundant_connectors(self):
        scenario = convoy_scenario()
        for edges, expected in (([], 6.0), (["R>X"], 6.0), (["R>D"], 6.0)):
            value, _ = recourse_utility(
                scenario, convoy_plan(), InterdictionPlan.from_edges(scenario, edges)
            )
            self.assertAlmostEqual(value, expected, places=6)
        value, _ = recourse_utility(
            scenario.with_budget(2.0),
            convoy_plan(),
            InterdictionPlan.from_edges(scenario, ["R>X", "R>D"]),
        )
        self.assertAlmostEqual(value, 0.0, places=6)

    def test_weight_capacity_binds(self):
        scenario = convoy_scenario()
        truck = scenario.connector("truck")
        small = Connector("truck", "R", 5.0, 20.0, truck.traversal_time)
        scenario = dataclasses.replace(
            scenario, connectors=(scenario.connector("train"), small)
        )
        # 2 fuel + 1 part weigh 5 per unit of demand
        value, _ = recourse_utility(
            scenario, convoy_plan(), InterdictionPlan.from_edges(scenario, ["R>X"])
        )
        self.assertAlmostEqual(value, 3.0, places=6)


class PayoffEvaluatorTest(unittest.TestCase):
    def setUp(self):
        self.scenario = corridor_scenario(2)
        self.evaluator = PayoffEvaluator(self.scenario)

    def test_same_truncation_is_cached(self):
        plan_m1 = corridor_plan("M1")
        self.assertAlmostEqual(
            self.evaluator.utility(plan_m1, InterdictionPlan.empty()), 1.0, places=6
        )
        self.assertAlmostEqual(
            self.evaluator.utility(
                plan_m1, InterdictionPlan.from_edges(self.scenario, ["S>M2"])
            ),
            1.0,
            places=6,
        )
        self.assertEqual((self.evaluator.misses, self.evaluator.hits), (1, 1))
        self.assertEqual(self.evaluator.cache_size, 1)

    def test_matrix_growth(self):
        cut1 = InterdictionPlan.from_edges(self.scenario, ["S>M1"])
        cut2 = InterdictionPlan.from_edges(self.scenario, ["S>M2"])
        matrix = PayoffMatrix(
            self.evaluator, [corridor_plan("M1")], [InterdictionPlan.empty()]
        )
        self.assertEqual(matrix.shape, (1, 1))
        matrix.add_red(cut1)
        matrix.add_blue(corridor_plan("M2"))
        matrix.add_red(cut2)
        np.testing.assert_allclose(matrix.values, [[1.0, 0.0, 1.0], [1.0, 1.0, 0.0]], atol=1e-6)
        self.assertEqual(matrix.red_index(cut2), 2)
        self.assertIsNone(matrix.blue_index(corridor_plan("M3")))
        self.assertTrue(matrix.to_csv().startswith("blue\\red,none,S>M1,S>M2\n"))

    def test_payoff_matrix_threads(self):
        cuts = [
            InterdictionPlan.from_edges(self.scenario, ["S>M1"]),
            InterdictionPlan.from_edges(self.scenario, ["S>M2"]),
        ]
        plans = [corridor_plan("M1"), corridor_plan("M2")]
        serial = payoff_matrix(self.scenario, plans, cuts, threads=1)
        parallel = payoff_matrix(self.scenario, plans, cuts, threads=4)
        np.testing.assert_allclose(serial.values, [[0.0, 1.0], [1.0, 0.0]], atol=1e-6)
        np.testing.assert_allclose(serial.values, parallel.values, atol=1e-9)

    def test_mixture_values(self):
        cut1 = InterdictionPlan.from_edges(self.scenario, ["S>M1"])
        blue = MixedStrategy.uniform([corridor_plan("M1"), corridor_plan("M2")])
        red = MixedStrategy([cut1, InterdictionPlan.empty()], [0.25, 0.75])
        self.assertAlmostEqual(self.evaluator.versus_blue(blue, cut1), 0.5, places=6)
        self.assertAlmostEqual(
            self.evaluator.versus_red(corridor_plan("M1"), red), 0.75, places=6
        )
