#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import collections
import unittest
from unittest.mock import Mock

import numpy as np

from ..lib.cnf import parse_cnf
from ..lib.equilibrium import (
    DoubleOracle,
    double_oracle,
    exact_nash_bruteforce,
    exploitability,
    subgame_nash,
    TRACE_HEADER,
)
from ..lib.error import CLError
from ..lib.hook import NoopHook
from ..lib.layered import InterdictionPlan
from ..lib.oracle import blue_best_response, MixedStrategy
from ..lib.scenario import edge_id, generate_grid_world, generate_sat_gadget, grid_node
from .fixtures import (
    convoy_scenario,
    corridor_plan,
    corridor_scenario,
    data_path,
    max_sat_fraction,
    shuttle_scenario,
)


class SubgameNashTest(unittest.TestCase):
    def test_matching_pennies(self):
        x_b, x_r, value = subgame_nash(np.array([[1.0, -1.0], [-1.0, 1.0]]))
        self.assertAlmostEqual(value, 0.0, places=6)
        np.testing.assert_allclose(x_b, [0.5, 0.5], atol=1e-6)
        np.testing.assert_allclose(x_r, [0.5, 0.5], atol=1e-6)

    def test_single_cell(self):
        x_b, x_r, value = subgame_nash([[3.0]])
        self.assertAlmostEqual(value, 3.0, places=6)
        np.testing.assert_allclose(x_b, [1.0])
        np.testing.assert_allclose(x_r, [1.0])

    def test_mixed_equilibrium(self):
        x_b, x_r, value = subgame_nash([[0.0, 2.0], [3.0, 1.0]])
        self.assertAlmostEqual(value, 1.5, places=6)
        np.testing.assert_allclose(x_b, [0.5, 0.5], atol=1e-6)
        np.testing.assert_allclose(x_r, [0.25, 0.75], atol=1e-6)

    def test_dominated_row(self):
        x_b, _, value = subgame_nash([[1.0, 1.0], [2.0, 3.0]])
        self.assertAlmostEqual(value, 2.0, places=6)
        np.testing.assert_allclose(x_b, [0.0, 1.0], atol=1e-6)

    def test_mixtures_are_on_simplex(self):
        rng = np.random.default_rng(0)
        x_b, x_r, _ = subgame_nash(rng.random((4, 6)))
        self.assertAlmostEqual(x_b.sum(), 1.0)
        self.assertAlmostEqual(x_r.sum(), 1.0)
        self.assertTrue((x_b >= 0).all() and (x_r >= 0).all())

    def test_empty(self):
        with self.assertRaises(CLError) as context:
            subgame_nash(np.zeros((0, 2)))
        self.assertEqual(context.exception.err_key, "EMPTY_MATRIX")


class BruteForceTest(unittest.TestCase):
    def test_two_corridors(self):
        value, blue, red = exact_nash_bruteforce(corridor_scenario(2))
        self.assertAlmostEqual(value, 0.5, places=5)
        self.assertAlmostEqual(blue.probability(corridor_plan("M1")), 0.5, places=5)
        self.assertAlmostEqual(blue.probability(corridor_plan("M2")), 0.5, places=5)
        self.assertEqual(len(red), 2)

    def test_three_corridors(self):
        value, _, _ = exact_nash_bruteforce(corridor_scenario(3), threads=2)
        self.assertAlmostEqual(value, 2.0 / 3.0, places=5)

    def test_sat_gadget_value_is_max_sat_fraction(self):
        with open(data_path("sat_small.cnf")) as fh:
            formula = parse_cnf(fh.read())
        scenario = generate_sat_gadget(formula.clauses, formula.num_vars)
        value, _, _ = exact_nash_bruteforce(scenario)
        expected = max_sat_fraction(formula.clauses, formula.num_vars)
        self.assertAlmostEqual(expected, 2.0 / 3.0)
        self.assertAlmostEqual(value, expected, places=5)

    def test_satisfiable_gadget_has_value_one(self):
        scenario = generate_sat_gadget([[1, 2], [-1, 2]])
        value, _, _ = exact_nash_bruteforce(scenario)
        self.assertAlmostEqual(value, 1.0, places=5)

    def test_contradiction_has_value_half(self):
        value, _, _ = exact_nash_bruteforce(generate_sat_gadget([[1], [-1]]))
        self.assertAlmostEqual(value, 0.5, places=5)

    def test_single_clause(self):
        value, _, _ = exact_nash_bruteforce(generate_sat_gadget([[1]]))
        self.assertAlmostEqual(value, 1.0, places=5)

    def test_cap(self):
        with self.assertRaises(CLError) as context:
            exact_nash_bruteforce(corridor_scenario(3), blue_cap=2)
        self.assertEqual(context.exception.err_key, "ENUMERATION_CAP_EXCEEDED")


class ExploitabilityTest(unittest.TestCase):
    def test_uniform_corridors(self):
        scenario = corridor_scenario(3, budget=1.0)
        blue = MixedStrategy.uniform([corridor_plan(m) for m in ("M1", "M2", "M3")])
        self.assertAlmostEqual(exploitability(scenario, blue), 2.0 / 3.0, places=5)

    def test_pure_plan_is_exploited(self):
        scenario = corridor_scenario(3, budget=1.0)
        blue = MixedStrategy.pure(corridor_plan("M3"))
        self.assertAlmostEqual(exploitability(scenario, blue), 0.0, places=5)


class DoubleOracleTest(unittest.TestCase):
    def test_two_corridors(self):
        result = double_oracle(corridor_scenario(2), epsilon=1e-4, threads=1)
        self.assertTrue(result.converged)
        self.assertEqual(result.termination, "converged")
        self.assertAlmostEqual(result.value, 0.5, delta=1e-4)
        self.assertLessEqual(result.gap, 1e-4)
        self.assertLessEqual(result.lower, result.value + 1e-9)
        self.assertGreaterEqual(result.upper, result.value - 1e-9)
        self.assertEqual(len(result.trace), result.iterations)

    def test_matches_brute_force(self):
        for scenario in (corridor_scenario(3), corridor_scenario(3, budget=2.0)):
            exact, _, _ = exact_nash_bruteforce(scenario)
            result = double_oracle(scenario, epsilon=1e-4, threads=1)
            self.assertTrue(result.converged)
            self.assertAlmostEqual(result.value, exact, delta=1e-4)

    def test_sat_gadget(self):
        scenario = generate_sat_gadget([[1, 2], [-1], [-2]])
        result = double_oracle(scenario, epsilon=1e-4, threads=1)
        self.assertAlmostEqual(result.value, 2.0 / 3.0, delta=1e-4)

    def test_redundant_convoy(self):
        result = double_oracle(convoy_scenario(), epsilon=1e-4)
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.value, 6.0, delta=1e-4)

    def test_blue_mixture_is_not_exploitable(self):
        scenario = corridor_scenario(2)
        result = double_oracle(scenario, epsilon=1e-4, threads=1)
        self.assertAlmostEqual(
            exploitability(scenario, result.blue), result.value, delta=1e-4
        )

    def test_iteration_cap(self):
        result = double_oracle(corridor_scenario(2), max_iterations=1, threads=1)
        self.assertEqual(result.termination, "cap")
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 1)

    def test_initial_plans(self):
        scenario = corridor_scenario(2)
        cut = InterdictionPlan.from_edges(scenario, ["S>M1"])
        solver = DoubleOracle(
            scenario,
            epsilon=1e-4,
            threads=1,
            initial_blue=[corridor_plan("M1"), corridor_plan("M2")],
            initial_red=[cut],
        )
        result = solver.run()
        self.assertAlmostEqual(result.value, 0.5, delta=1e-4)
        self.assertIn(corridor_plan("M2"), solver.matrix.blue_plans)
        self.assertEqual(solver.matrix.red_plans[0], cut)

    def test_exact_responses_every_iteration(self):
        result = double_oracle(
            corridor_scenario(2), epsilon=1e-4, br_time_limit=None, threads=1
        )
        self.assertTrue(all(record.exact for record in result.trace))

    def test_bad_epsilon(self):
        with self.assertRaises(CLError) as context:
            DoubleOracle(corridor_scenario(2), epsilon=0.0)
        self.assertEqual(context.exception.err_key, "ARGUMENT_ERROR")

    def test_hooks_fire_every_iteration(self):
        hook = Mock()
        hook_map = collections.defaultdict(lambda: NoopHook())
        hook_map["after_solve_subgame"] = hook
        result = double_oracle(
            corridor_scenario(2), epsilon=1e-4, threads=1, hook_map=hook_map
        )
        self.assertEqual(hook.execute.call_count, result.iterations)

    def test_result_json(self):
        result = double_oracle(corridor_scenario(2), epsilon=1e-4, threads=1)
        doc = result.to_json()
        self.assertEqual(doc["termination"], "converged")
        self.assertEqual(doc["blue_support"], len(result.blue))
        self.assertEqual(set(doc["strategies"]), {"blue", "red"})
        header, rows = result.trace_rows()
        self.assertEqual(header, TRACE_HEADER)
        self.assertEqual(len(rows), result.iterations)
        self.assertEqual(rows[0][0], 1)


def random_3cnf(rng, num_vars, num_clauses):
    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(np.arange(1, num_vars + 1), size=3, replace=False)
        signs = rng.choice([-1, 1], size=3)
        clauses.append([int(v * s) for v, s in zip(variables, signs)])
    return clauses


class GameValueTest(unittest.TestCase):
    def test_grid_matches_brute_force(self):
        scenario = generate_grid_world(3, 2, 1.0, edge_drop_prob=0.0)
        exact, _, _ = exact_nash_bruteforce(scenario)
        result = double_oracle(scenario, epsilon=1e-4, threads=1)
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.value, exact, delta=1e-4)

    def test_grid_cut_off_at_both_depots(self):
        scenario = generate_grid_world(5, 4, 4.0, edge_drop_prob=0.0)
        cutoff = InterdictionPlan.from_edges(
            scenario,
            [
                edge_id(grid_node(0, 0), grid_node(0, 1)),
                edge_id(grid_node(0, 0), grid_node(1, 0)),
                edge_id(grid_node(4, 4), grid_node(3, 4)),
                edge_id(grid_node(4, 4), grid_node(4, 3)),
            ],
        )
        self.assertTrue(cutoff.is_feasible(scenario))
        best = blue_best_response(scenario, MixedStrategy.pure(cutoff))
        self.assertAlmostEqual(best.value, 0.0, places=5)
        result = double_oracle(scenario, epsilon=1e-4, threads=1)
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.value, 0.0, delta=1e-4)

    def test_more_budget_never_helps_blue(self):
        values = [
            double_oracle(corridor_scenario(3, budget=b), epsilon=1e-4, threads=1).value
            for b in (0.0, 1.0, 2.0, 3.0)
        ]
        for expected, value in zip((1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0), values):
            self.assertAlmostEqual(value, expected, delta=1e-4)
        for more, less in zip(values[1:], values):
            self.assertLessEqual(more, less + 1e-4)

    def test_longer_horizon_never_hurts_blue(self):
        by_budget = {}
        for budget in (0.0, 1.0):
            values = by_budget[budget] = [
                double_oracle(
                    shuttle_scenario(horizon=h, capacity=2.0, budget=budget),
                    epsilon=1e-4,
                    threads=1,
                ).value
                for h in (2, 3, 4, 5)
            ]
            for shorter, longer in zip(values, values[1:]):
                self.assertGreaterEqual(longer, shorter - 1e-4, msg=str(values))
        # unopposed, extra round trips deliver more
        self.assertGreater(by_budget[0.0][-1], by_budget[0.0][0] + 1.0)

    def test_sat_gadgets_from_random_formulas(self):
        rng = np.random.default_rng(11)
        for _ in range(3):
            clauses = random_3cnf(rng, 4, 5)
            scenario = generate_sat_gadget(clauses, 4)
            result = double_oracle(scenario, epsilon=1e-4, threads=1)
            self.assertAlmostEqual(
                result.value, max_sat_fraction(clauses, 4), delta=1e-4, msg=str(clauses)
            )
