#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import dataclasses
import json
import os
import tempfile
import unittest

from ..lib.error import CLError
from ..lib.layered import unroll
from ..lib.scenario import (
    Connector,
    generate_grid_world,
    generate_sat_gadget,
    generate_set_cover_gadget,
    grid_node,
    load_scenario,
    load_scenario_file,
    save_scenario,
    save_scenario_file,
    scenario_to_dict,
    validate_scenario,
    Warehouse,
)
from .fixtures import convoy_scenario, corridor_scenario, data_path, shuttle_scenario


class ScenarioModelTest(unittest.TestCase):
    def test_penalty_constant(self):
        # max payoff 3 over min(1, min demand 1)
        self.assertEqual(convoy_scenario().penalty_constant(), 3.0)

    def test_penalty_constant_small_demand(self):
        scenario = shuttle_scenario()
        demand = Warehouse("B", {}, {"food": 0.25}, 2.0, 10.0)
        scenario = dataclasses.replace(
            scenario, warehouses=(scenario.warehouses[0], demand)
        )
        self.assertEqual(scenario.penalty_constant(), 8.0)

    def test_max_payoff(self):
        self.assertEqual(convoy_scenario().max_payoff(), 15.0)

    def test_with_budget_keeps_costs(self):
        scenario = corridor_scenario(3, budget=1.0).with_budget(2.0)
        self.assertEqual(scenario.budget, 2.0)
        self.assertEqual(len(scenario.interdiction.cost), 3)

    def test_total_supply(self):
        scenario = convoy_scenario()
        self.assertEqual(scenario.total_supply("fuel"), 4.0)
        self.assertEqual(scenario.total_supply("parts"), 2.0)


class ValidationTest(unittest.TestCase):
    def test_fixtures_are_valid(self):
        for scenario in (shuttle_scenario(), corridor_scenario(3), convoy_scenario()):
            self.assertEqual(validate_scenario(scenario), [])

    def test_connector_must_start_at_warehouse(self):
        scenario = corridor_scenario()
        truck = scenario.connectors[0]
        moved = Connector("truck", "M1", 1.0, 1.0, truck.traversal_time)
        violations = validate_scenario(
            dataclasses.replace(scenario, connectors=(moved,))
        )
        self.assertTrue(any("not a warehouse" in v for v in violations))

    def test_nonpositive_capacity(self):
        scenario = corridor_scenario()
        truck = scenario.connectors[0]
        broken = Connector("truck", "S", 0.0, 1.0, truck.traversal_time)
        violations = validate_scenario(
            dataclasses.replace(scenario, connectors=(broken,))
        )
        self.assertTrue(any("weight capacity" in v for v in violations))

    def test_fractional_traversal_time(self):
        scenario = corridor_scenario()
        times = dict(scenario.connectors[0].traversal_time)
        times["S>M1"] = 1.5
        broken = Connector("truck", "S", 1.0, 1.0, times)
        violations = validate_scenario(
            dataclasses.replace(scenario, connectors=(broken,))
        )
        self.assertTrue(any("positive integer" in v for v in violations))

    def test_unknown_package_in_demand(self):
        scenario = corridor_scenario()
        demand = Warehouse("D", {}, {"bread": 1.0}, 1.0, 1.0)
        violations = validate_scenario(
            dataclasses.replace(
                scenario, warehouses=(scenario.warehouses[0], demand)
            )
        )
        self.assertTrue(any("unknown package bread" in v for v in violations))

    def test_dead_end(self):
        with open(data_path("dead_end.json")) as fh:
            with self.assertRaises(CLError) as context:
                load_scenario(fh.read())
        self.assertEqual(context.exception.err_key, "INVALID_SCENARIO")
        self.assertIn("stuck at B at t=1", context.exception.desc)

    def test_lenient_load_keeps_scenario(self):
        with open(data_path("dead_end.json")) as fh:
            text = fh.read()
        with self.assertLogs(level="WARNING"):
            scenario = load_scenario(text, strict=False)
        self.assertEqual(scenario.horizon, 3)


class ScenarioIOTest(unittest.TestCase):
    def test_load_data_file(self):
        self.assertEqual(
            load_scenario_file(data_path("two_corridor.json")), corridor_scenario()
        )

    def test_save_then_load(self):
        scenario = convoy_scenario()
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "convoy.json")
            save_scenario_file(scenario, path)
            self.assertEqual(load_scenario_file(path), scenario)

    def test_missing_field(self):
        doc = scenario_to_dict(corridor_scenario())
        del doc["horizon"]
        with self.assertRaises(CLError) as context:
            load_scenario(json.dumps(doc))
        self.assertEqual(context.exception.err_key, "SCENARIO_PARSE_ERROR")
        self.assertIn("horizon", context.exception.desc)

    def test_bad_number(self):
        doc = scenario_to_dict(corridor_scenario())
        doc["packages"][0]["unit_weight"] = "heavy"
        with self.assertRaises(CLError) as context:
            load_scenario(json.dumps(doc))
        self.assertIn("packages[0].unit_weight", context.exception.desc)

    def test_fractional_horizon(self):
        doc = scenario_to_dict(corridor_scenario())
        doc["horizon"] = 2.5
        with self.assertRaises(CLError) as context:
            load_scenario(json.dumps(doc))
        self.assertEqual(context.exception.err_key, "SCENARIO_PARSE_ERROR")

    def test_malformed_json(self):
        with self.assertRaises(CLError) as context:
            load_scenario("{")
        self.assertEqual(context.exception.err_key, "SCENARIO_PARSE_ERROR")

    def test_document_is_stable(self):
        text = save_scenario(corridor_scenario())
        self.assertEqual(save_scenario(load_scenario(text)), text)


class GridWorldTest(unittest.TestCase):
    def test_full_grid(self):
        scenario = generate_grid_world(3, 4, 1.0, edge_drop_prob=0.0)
        # 12 adjacencies in both directions plus 9 wait loops
        self.assertEqual(len(scenario.graph.edges), 33)
        self.assertEqual(len(scenario.interdiction.cost), 24)
        self.assertEqual(validate_scenario(scenario), [])
        self.assertEqual(
            {c.initial_location for c in scenario.connectors},
            {grid_node(0, 0), grid_node(2, 2)},
        )
        demand = {w.node for w in scenario.demand_warehouses}
        self.assertEqual(demand, {grid_node(0, 2), grid_node(2, 0)})
        self.assertIsNotNone(scenario.warehouse_at(grid_node(1, 1)))

    def test_five_by_five(self):
        scenario = generate_grid_world(5, 3, 1.0, edge_drop_prob=0.0, seed=3)
        self.assertEqual(len(scenario.graph.nodes), 25)
        # 40 adjacencies in both directions plus 25 wait loops
        self.assertEqual(len(scenario.graph.edges), 105)
        self.assertEqual(len(scenario.warehouses), 5)
        self.assertEqual(len(scenario.connectors), 2)

    def test_loops_are_never_interdictable(self):
        scenario = generate_grid_world(4, 3, 2.0, edge_drop_prob=0.3, seed=7)
        for edge in scenario.graph.edges:
            if edge.is_loop:
                self.assertNotIn(edge.id, scenario.interdiction.cost)

    def test_seed_is_reproducible(self):
        a = generate_grid_world(4, 5, 1.0, uniform_costs=False, seed=3)
        b = generate_grid_world(4, 5, 1.0, uniform_costs=False, seed=3)
        self.assertEqual(a, b)
        self.assertEqual(save_scenario(a), save_scenario(b))

    def test_random_costs_in_range(self):
        scenario = generate_grid_world(5, 3, 1.0, uniform_costs=False, seed=11)
        for cost in scenario.interdiction.cost.values():
            self.assertIn(cost, (1.0, 2.0, 3.0, 4.0, 5.0))

    def test_demand_payoffs_in_range(self):
        scenario = generate_grid_world(3, 3, 1.0, seed=5)
        for w in scenario.demand_warehouses:
            self.assertGreaterEqual(w.unit_payoff, 1.0)
            self.assertLessEqual(w.unit_payoff, 2.0)

    def test_too_small(self):
        with self.assertRaises(CLError) as context:
            generate_grid_world(2, 3, 1.0)
        self.assertEqual(context.exception.err_key, "GRID_TOO_SMALL")


class GadgetTest(unittest.TestCase):
    def test_sat_gadget_shape(self):
        scenario = generate_sat_gadget([[1, -2], [2, 3, -1]])
        self.assertEqual(validate_scenario(scenario), [])
        self.assertEqual(scenario.horizon, 6)
        # assignment connector plus one per clause
        self.assertEqual(len(scenario.connectors), 3)
        terminal = scenario.warehouse_at("t")
        self.assertEqual(dict(terminal.demand), {"P": 2.0})

    def test_clause_paths_end_on_literal_loops(self):
        scenario = generate_sat_gadget([[1, -2], [2, 3, -1]])
        clause = scenario.connector("c2")
        for node in ("x2T", "x3T", "x1F"):
            self.assertIn("{0}>{0}".format(node), clause.traversal_time)
        graph = unroll(scenario, clause)
        # one path per literal, idling at the literal until the horizon
        self.assertEqual(graph.path_count(), 3)
        for path in graph.paths():
            self.assertEqual(len({s.head for s in path}), 1)

    def test_sat_gadget_rejects_long_clause(self):
        with self.assertRaises(CLError) as context:
            generate_sat_gadget([[1, 2, 3, 4]])
        self.assertEqual(context.exception.err_key, "INVALID_CNF")

    def test_sat_gadget_rejects_empty_formula(self):
        with self.assertRaises(CLError) as context:
            generate_sat_gadget([])
        self.assertEqual(context.exception.err_key, "EMPTY_FORMULA")

    def test_set_cover_gadget(self):
        scenario, mixture = generate_set_cover_gadget(3, [[1, 2], [2, 3]], 1.0)
        self.assertEqual(validate_scenario(scenario), [])
        self.assertEqual(scenario.horizon, 7)
        self.assertEqual(len(mixture), 3)
        for _, prob in mixture.items():
            self.assertAlmostEqual(prob, 1.0 / 3.0)
        self.assertEqual(
            sorted(scenario.interdiction.cost), ["S1>S'1", "S2>S'2"]
        )

    def test_set_cover_uncovered_element(self):
        with self.assertRaises(CLError) as context:
            generate_set_cover_gadget(3, [[1, 2]], 1.0)
        self.assertEqual(context.exception.err_key, "UNCOVERED_ELEMENT")

    def test_set_cover_element_out_of_range(self):
        with self.assertRaises(CLError) as context:
            generate_set_cover_gadget(2, [[1, 5]], 1.0)
        self.assertEqual(context.exception.err_key, "INVALID_SET_SYSTEM")
