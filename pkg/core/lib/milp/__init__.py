#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging
import os

from .. import constant
from ..error import CLError
from .model import (
    Constraint,
    INF,
    Model,
    ObjSense,
    Sense,
    SolveOutcome,
    SolveStatus,
    to_lp_format,
    Variable,
    VarKind,
)

log = logging.getLogger(__name__)


def backend_name(name: str | None = None) -> str:
    return (name or os.environ.get(constant.BACKEND_ENV_VAR) or constant.DEFAULT_BACKEND).lower()


def get_backend(name=None, threads: int | None = None):
    """
    Resolve a solver backend by name, falling back to the CL_MILP_BACKEND
    environment variable and then to the bundled HiGHS. Backend objects are
    passed through unchanged.
    """
    if name is not None and not isinstance(name, str):
        return name
    resolved = backend_name(name)
    if resolved == "highs":
        from .highs import HighsBackend

        return HighsBackend(threads=threads)
    if resolved == "cbc":
        from .cbc import CbcBackend

        return CbcBackend(threads=threads)
    raise CLError(
        "UNKNOWN_BACKEND",
        {"backend": resolved, "choices": ", ".join(constant.SUPPORTED_BACKENDS)},
    )


def solve(model: Model, time_limit=None, gap=constant.DEFAULT_MIP_GAP, backend=None) -> SolveOutcome:
    return get_backend(backend).solve(model, time_limit=time_limit, gap=gap)


def solve_or_raise(model: Model, time_limit=None, gap=constant.DEFAULT_MIP_GAP, backend=None) -> SolveOutcome:
    """
    Solve and turn infeasible and failed outcomes into CLError. Time-limited
    outcomes, with or without an incumbent, are returned to the caller.
    """
    outcome = solve(model, time_limit=time_limit, gap=gap, backend=backend)
    if outcome.status is SolveStatus.INFEASIBLE:
        log.error("Model {} is infeasible".format(model.describe()))
        raise CLError("MODEL_INFEASIBLE", {"model": model.name})
    if outcome.status in (SolveStatus.ERROR, SolveStatus.UNBOUNDED):
        raise CLError(
            "SOLVER_ERROR",
            {
                "model": model.name,
                "status": outcome.status.value,
                "errmsg": outcome.message,
            },
        )
    return outcome


__all__ = [
    "backend_name",
    "Constraint",
    "get_backend",
    "INF",
    "Model",
    "ObjSense",
    "Sense",
    "solve",
    "solve_or_raise",
    "SolveOutcome",
    "SolveStatus",
    "to_lp_format",
    "Variable",
    "VarKind",
]
