#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import importlib.util
import os
import tempfile
import unittest
from unittest.mock import Mock, patch

import numpy as np

from ..lib import constant, milp
from ..lib.error import CLError
from ..lib.milp import highs, Model, ObjSense, Sense, SolveStatus, to_lp_format, VarKind

HAS_MIP = importlib.util.find_spec("mip") is not None


def small_model(kind=VarKind.CONTINUOUS):
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    model = Model("small")
    x = model.add_var("x", kind)
    y = model.add_var("y", kind)
    model.add_constr({x: 1.0, y: 2.0}, Sense.LE, 4.0, "a")
    model.add_constr({x: 3.0, y: 1.0}, Sense.LE, 6.0, "b")
    model.set_objective({x: 1.0, y: 1.0}, ObjSense.MAXIMIZE)
    return model, x, y


class ModelTest(unittest.TestCase):
    def test_terms_are_accumulated(self):
        model = Model()
        x = model.add_var("x")
        row = model.add_constr([(x, 1.0), (x, 2.0)], Sense.LE, 1.0)
        self.assertEqual(dict(model.constraints[row].coeffs), {x: 3.0})

    def test_zero_terms_dropped(self):
        model = Model()
        x = model.add_var("x")
        y = model.add_var("y")
        row = model.add_constr({x: 1.0, y: 0.0}, Sense.EQ, 0.0)
        self.assertEqual(dict(model.constraints[row].coeffs), {x: 1.0})

    def test_undeclared_variable(self):
        model = Model("m")
        with self.assertRaises(CLError) as context:
            model.add_constr({3: 1.0}, Sense.LE, 1.0)
        self.assertEqual(context.exception.err_key, "INVALID_MODEL")

    def test_bad_bounds(self):
        with self.assertRaises(CLError):
            Model().add_var("x", lb=2.0, ub=1.0)

    def test_non_finite_rhs(self):
        model = Model()
        x = model.add_var("x")
        with self.assertRaises(CLError):
            model.add_constr({x: 1.0}, Sense.LE, milp.INF)

    def test_binary_bounds_clamped(self):
        model = Model()
        b = model.add_var("b", VarKind.BINARY, lb=-3.0, ub=7.0)
        self.assertEqual((model.variables[b].lb, model.variables[b].ub), (0.0, 1.0))
        self.assertTrue(model.is_mip)

    def test_columns(self):
        model, x, y = small_model()
        self.assertEqual(model.columns()[y], {0: 2.0, 1: 1.0})

    def test_lp_format(self):
        model, _, _ = small_model(VarKind.BINARY)
        text = to_lp_format(model)
        self.assertIn("Maximize", text)
        self.assertIn(" a_0: 1.0 x_0 + 2.0 y_1 <= 4.0", text)
        self.assertIn("Binaries", text)
        self.assertTrue(text.endswith("End\n"))

    def test_lp_format_constant(self):
        model, x, y = small_model()
        model.set_objective({x: 1.0, y: 1.0}, ObjSense.MAXIMIZE, constant=2.5)
        lines = to_lp_format(model).splitlines()
        self.assertEqual(lines[2], " obj: 1.0 x_0 + 1.0 y_1 + 2.5 constant_term")
        bounds = lines[lines.index("Bounds") + 1 :]
        self.assertIn(" constant_term = 1", bounds)

    def test_write_lp(self):
        model, _, _ = small_model()
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "small.lp")
            model.write_lp(path)
            with open(path) as fh:
                self.assertEqual(fh.read(), to_lp_format(model))


class BackendSelectionTest(unittest.TestCase):
    def test_default_backend(self):
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(milp.backend_name(), constant.DEFAULT_BACKEND)

    def test_env_var(self):
        with patch.dict(os.environ, {constant.BACKEND_ENV_VAR: "CBC"}):
            self.assertEqual(milp.backend_name(), "cbc")
            self.assertEqual(milp.backend_name("highs"), "highs")

    def test_unknown_backend(self):
        with self.assertRaises(CLError) as context:
            milp.get_backend("gurobi")
        self.assertEqual(context.exception.err_key, "UNKNOWN_BACKEND")

    def test_backend_object_passes_through(self):
        backend = milp.get_backend("highs")
        self.assertIs(milp.get_backend(backend), backend)


class HighsTest(unittest.TestCase):
    backend = "highs"

    def test_lp(self):
        model, x, y = small_model()
        outcome = milp.solve(model, backend=self.backend)
        self.assertIs(outcome.status, SolveStatus.OPTIMAL)
        self.assertAlmostEqual(outcome.objective, 2.8, places=6)
        self.assertAlmostEqual(outcome.value(x), 1.6, places=6)
        self.assertAlmostEqual(outcome.value(y), 1.2, places=6)

    def test_lp_duals(self):
        model, _, _ = small_model()
        outcome = milp.solve(model, backend=self.backend)
        self.assertAlmostEqual(outcome.dual(0), 0.4, places=6)
        self.assertAlmostEqual(outcome.dual(1), 0.2, places=6)

    def test_mip(self):
        model, x, y = small_model(VarKind.INTEGER)
        outcome = milp.solve(model, backend=self.backend)
        self.assertIs(outcome.status, SolveStatus.OPTIMAL)
        self.assertAlmostEqual(outcome.objective, 2.0, places=6)
        self.assertAlmostEqual(outcome.bound, 2.0, places=4)

    def test_minimize_with_ge_rows(self):
        model = Model("cover")
        x = model.add_var("x", VarKind.BINARY)
        y = model.add_var("y", VarKind.BINARY)
        model.add_constr({x: 1.0, y: 1.0}, Sense.GE, 1.0)
        model.set_objective({x: 2.0, y: 3.0}, ObjSense.MINIMIZE, constant=1.0)
        outcome = milp.solve(model, backend=self.backend)
        self.assertAlmostEqual(outcome.objective, 3.0, places=6)
        self.assertGreater(outcome.value(x), 0.5)

    def test_mip_without_rows(self):
        model = Model("free")
        b = model.add_var("b", VarKind.BINARY)
        model.set_objective({b: 1.0}, ObjSense.MAXIMIZE)
        outcome = milp.solve(model, backend=self.backend)
        self.assertAlmostEqual(outcome.objective, 1.0, places=6)

    def test_fixed_variable(self):
        model, x, y = small_model()
        model.fix(x, 0.0)
        outcome = milp.solve(model, backend=self.backend)
        self.assertAlmostEqual(outcome.objective, 2.0, places=6)

    def test_infeasible_raises(self):
        model = Model("broken")
        x = model.add_var("x")
        model.add_constr({x: 1.0}, Sense.GE, 2.0)
        model.add_constr({x: 1.0}, Sense.LE, 1.0)
        model.set_objective({x: 1.0}, ObjSense.MAXIMIZE)
        self.assertIs(
            milp.solve(model, backend=self.backend).status, SolveStatus.INFEASIBLE
        )
        with self.assertRaises(CLError) as context:
            milp.solve_or_raise(model, backend=self.backend)
        self.assertEqual(context.exception.err_key, "MODEL_INFEASIBLE")

    def test_free_variable_and_equality(self):
        model = Model("eq")
        x = model.add_var("x", lb=-milp.INF)
        y = model.add_var("y")
        model.add_constr({x: 1.0, y: 1.0}, Sense.EQ, -1.0)
        model.add_constr({y: 1.0}, Sense.LE, 2.0)
        model.set_objective({x: 1.0}, ObjSense.MINIMIZE)
        outcome = milp.solve(model, backend=self.backend)
        self.assertAlmostEqual(outcome.objective, -3.0, places=6)


@unittest.skipUnless(HAS_MIP, "python-mip is not installed")
class CbcTest(HighsTest):
    backend = "cbc"

    def test_lp_duals(self):
        model, _, _ = small_model()
        outcome = milp.solve(model, backend=self.backend)
        self.assertEqual(len(outcome.duals), 2)


class HighsOptionsTest(unittest.TestCase):
    def test_mip_presolve_off_by_default(self):
        model, _, _ = small_model(VarKind.INTEGER)
        with patch.object(highs, "milp", wraps=highs.milp) as solver:
            outcome = highs.HighsBackend().solve(model)
        self.assertAlmostEqual(outcome.objective, 2.0, places=6)
        self.assertIs(solver.call_args.kwargs["options"]["presolve"], False)

    def test_mip_presolve_on(self):
        model, _, _ = small_model(VarKind.INTEGER)
        with patch.object(highs, "milp", wraps=highs.milp) as solver:
            highs.HighsBackend(presolve=True).solve(model)
        self.assertIs(solver.call_args.kwargs["options"]["presolve"], True)

    def test_lp_iteration_limit_keeps_point(self):
        model, x, y = small_model()
        limited = Mock(
            status=1, x=np.array([1.0, 1.0]), fun=-2.0, message="Iteration limit reached."
        )
        with patch.object(highs, "linprog", return_value=limited):
            outcome = highs.HighsBackend().solve(model)
        self.assertIs(outcome.status, SolveStatus.FEASIBLE)
        self.assertTrue(outcome.status.has_solution)
        self.assertAlmostEqual(outcome.objective, 2.0)
        self.assertAlmostEqual(outcome.value(x), 1.0)
        self.assertIsNone(outcome.duals)

    def test_lp_limit_without_point(self):
        model, _, _ = small_model()
        limited = Mock(status=1, x=None, fun=None, message="Time limit reached.")
        with patch.object(highs, "linprog", return_value=limited):
            outcome = highs.HighsBackend().solve(model)
        self.assertIs(outcome.status, SolveStatus.NO_SOLUTION)
