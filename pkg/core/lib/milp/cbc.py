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

from .. import constant
from ..error import CLError
from .model import Model, ObjSense, Sense, SolveOutcome, SolveStatus, VarKind

log = logging.getLogger(__name__)


class CbcBackend:
    """
    COIN-OR CBC through python-mip, installed with the `cbc` extra
    """

    name = "cbc"

    def __init__(self, threads: int | None = None):
        try:
            import mip
        except ImportError as e:
            raise CLError("BACKEND_UNAVAILABLE", {"backend": self.name, "errmsg": str(e)})
        self._mip = mip
        self.threads = threads

    def _status(self, status, has_values: bool) -> SolveStatus:
        mip = self._mip
        if status == mip.OptimizationStatus.OPTIMAL:
            return SolveStatus.OPTIMAL
        if status == mip.OptimizationStatus.FEASIBLE:
            return SolveStatus.FEASIBLE
        if status == mip.OptimizationStatus.INFEASIBLE:
            return SolveStatus.INFEASIBLE
        if status == mip.OptimizationStatus.UNBOUNDED:
            return SolveStatus.UNBOUNDED
        if status == mip.OptimizationStatus.NO_SOLUTION_FOUND:
            return SolveStatus.NO_SOLUTION
        return SolveStatus.FEASIBLE if has_values else SolveStatus.ERROR

    def solve(
        self,
        model: Model,
        time_limit: float | None = None,
        gap: float = constant.DEFAULT_MIP_GAP,
    ) -> SolveOutcome:
        mip = self._mip
        log.debug("Solving {} with CBC".format(model.describe()))
        start = time.monotonic()
        sense = mip.MAXIMIZE if model.obj_sense is ObjSense.MAXIMIZE else mip.MINIMIZE
        m = mip.Model(name=model.name, sense=sense, solver_name=mip.CBC)
        m.verbose = 0
        if self.threads:
            m.threads = self.threads
        m.max_mip_gap = gap

        var_type = {
            VarKind.CONTINUOUS: mip.CONTINUOUS,
            VarKind.BINARY: mip.BINARY,
            VarKind.INTEGER: mip.INTEGER,
        }
        xs = [
            m.add_var(
                name="{}_{}".format(v.index, v.name)[:200],
                lb=-mip.INF if v.lb == -math.inf else v.lb,
                ub=mip.INF if v.ub == math.inf else v.ub,
                var_type=var_type[v.kind],
            )
            for v in model.variables
        ]
        rows = []
        for constr in model.constraints:
            expr = mip.xsum(coef * xs[var] for var, coef in constr.coeffs.items())
            if constr.sense is Sense.LE:
                rows.append(m.add_constr(expr <= constr.rhs))
            elif constr.sense is Sense.GE:
                rows.append(m.add_constr(expr >= constr.rhs))
            else:
                rows.append(m.add_constr(expr == constr.rhs))
        m.objective = (
            mip.xsum(coef * xs[var] for var, coef in model.objective.items())
            + model.objective_constant
        )

        if time_limit is None:
            status = m.optimize()
        else:
            status = m.optimize(max_seconds=time_limit)
        has_values = m.num_solutions > 0
        outcome = SolveOutcome(self._status(status, has_values))
        if outcome.status.has_solution and has_values:
            outcome.values = np.array([x.x for x in xs], dtype=float)
            outcome.objective = float(m.objective_value)
            outcome.bound = float(m.objective_bound)
            if not model.is_mip:
                outcome.duals = np.array(
                    [r.pi if r.pi is not None else math.nan for r in rows], dtype=float
                )
        outcome.wall_time = time.monotonic() - start
        return outcome
