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

import numpy as np
from scipy.optimize import Bounds, linprog, LinearConstraint, milp

from .. import constant
from .model import Model, ObjSense, Sense, SolveOutcome, SolveStatus, VarKind

log = logging.getLogger(__name__)

# scipy.optimize.milp status codes
_MILP_STATUS = {
    0: SolveStatus.OPTIMAL,
    1: SolveStatus.FEASIBLE,
    2: SolveStatus.INFEASIBLE,
    3: SolveStatus.UNBOUNDED,
}
# scipy.optimize.linprog status codes
_LP_STATUS = {
    0: SolveStatus.OPTIMAL,
    2: SolveStatus.INFEASIBLE,
    3: SolveStatus.UNBOUNDED,
}


class HighsBackend:
    """
    HiGHS through scipy. Pure LPs go through linprog so that row duals are
    available, models with integer variables through milp.
    """

    name = "highs"

    def __init__(self, threads: int | None = None, presolve: bool | None = None):
        # scipy does not expose HiGHS threading, solves are single threaded
        self.threads = threads
        self.presolve = constant.HIGHS_MIP_PRESOLVE if presolve is None else presolve

    def solve(
        self,
        model: Model,
        time_limit: float | None = None,
        gap: float = constant.DEFAULT_MIP_GAP,
    ) -> SolveOutcome:
        log.debug("Solving {} with HiGHS".format(model.describe()))
        start = time.monotonic()
        if model.is_mip:
            outcome = self._solve_mip(model, time_limit, gap)
        else:
            outcome = self._solve_lp(model, time_limit)
        outcome.wall_time = time.monotonic() - start
        log.debug(
            "{}: status {} objective {} in {:.3f}s".format(
                model.name, outcome.status.value, outcome.objective, outcome.wall_time
            )
        )
        return outcome

    def _sign(self, model: Model) -> float:
        # scipy minimizes
        return -1.0 if model.obj_sense is ObjSense.MAXIMIZE else 1.0

    def _solve_mip(self, model, time_limit, gap) -> SolveOutcome:
        sign = self._sign(model)
        c = sign * model.objective_vector()
        lb, ub = model.bounds()
        integrality = np.array(
            [0 if v.kind is VarKind.CONTINUOUS else 1 for v in model.variables]
        )
        constraints = None
        if model.constraints:
            row_lb = np.array(
                [
                    -np.inf if r.sense is Sense.LE else r.rhs
                    for r in model.constraints
                ]
            )
            row_ub = np.array(
                [
                    np.inf if r.sense is Sense.GE else r.rhs
                    for r in model.constraints
                ]
            )
            constraints = LinearConstraint(model.matrix(), row_lb, row_ub)
        options = {"disp": False, "mip_rel_gap": gap, "presolve": self.presolve}
        if time_limit is not None:
            options["time_limit"] = float(time_limit)
        try:
            res = milp(
                c,
                integrality=integrality,
                bounds=Bounds(lb, ub),
                constraints=constraints,
                options=options,
            )
        except ValueError as e:
            return SolveOutcome(SolveStatus.ERROR, message=str(e))

        status = _MILP_STATUS.get(res.status, SolveStatus.ERROR)
        if res.x is None:
            if status.has_solution:
                status = SolveStatus.NO_SOLUTION
            return SolveOutcome(status, message=res.message)
        if res.status == 4:
            # Stopped for another reason with an incumbent in hand
            status = SolveStatus.FEASIBLE
        objective = sign * float(res.fun) + model.objective_constant
        bound = getattr(res, "mip_dual_bound", None)
        if bound is None or not math.isfinite(bound):
            bound = objective if status is SolveStatus.OPTIMAL else math.nan
        else:
            bound = sign * float(bound) + model.objective_constant
        return SolveOutcome(
            status,
            objective=objective,
            bound=bound,
            values=np.asarray(res.x, dtype=float),
            message=res.message,
        )

    def _solve_lp(self, model, time_limit) -> SolveOutcome:
        sign = self._sign(model)
        c = sign * model.objective_vector()
        lb, ub = model.bounds()
        ineq = [r for r in model.constraints if r.sense is not Sense.EQ]
        eq = [r for r in model.constraints if r.sense is Sense.EQ]
        # >= rows are passed negated as <= rows
        flip = np.array([-1.0 if r.sense is Sense.GE else 1.0 for r in ineq])
        kwargs = {}
        if ineq:
            kwargs["A_ub"] = model.matrix(ineq).multiply(flip[:, None]).tocsr()
            kwargs["b_ub"] = flip * np.array([r.rhs for r in ineq])
        if eq:
            kwargs["A_eq"] = model.matrix(eq)
            kwargs["b_eq"] = np.array([r.rhs for r in eq])
        options = {
            "disp": False,
            "primal_feasibility_tolerance": constant.LP_TOLERANCE,
            "dual_feasibility_tolerance": constant.LP_TOLERANCE,
        }
        if time_limit is not None:
            options["time_limit"] = float(time_limit)
        bounds = list(
            zip(
                [None if x == -np.inf else x for x in lb],
                [None if x == np.inf else x for x in ub],
            )
        )
        try:
            res = linprog(c, bounds=bounds, method="highs", options=options, **kwargs)
        except ValueError as e:
            return SolveOutcome(SolveStatus.ERROR, message=str(e))

        status = _LP_STATUS.get(res.status, SolveStatus.ERROR)
        if res.status == 1:
            # iteration or time limit
            if res.x is None:
                return SolveOutcome(SolveStatus.NO_SOLUTION, message=res.message)
            return SolveOutcome(
                SolveStatus.FEASIBLE,
                objective=sign * float(res.fun) + model.objective_constant,
                values=np.asarray(res.x, dtype=float),
                message=res.message,
            )
        if status is not SolveStatus.OPTIMAL or res.x is None:
            return SolveOutcome(status, message=res.message)

        objective = sign * float(res.fun) + model.objective_constant
        duals = np.zeros(model.num_constraints)
        if ineq:
            marginals = np.asarray(res.ineqlin.marginals, dtype=float)
            for r, m, f in zip(ineq, marginals, flip):
                duals[r.index] = sign * f * m
        if eq:
            marginals = np.asarray(res.eqlin.marginals, dtype=float)
            for r, m in zip(eq, marginals):
                duals[r.index] = sign * m
        return SolveOutcome(
            SolveStatus.OPTIMAL,
            objective=objective,
            bound=objective,
            values=np.asarray(res.x, dtype=float),
            duals=duals,
            message=res.message,
        )
