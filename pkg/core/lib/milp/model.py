#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Solver independent LP/MILP model builder. Everything upstream expresses its
models through this surface only; backends translate a Model into their own
representation.
"""

import enum
import logging
import math
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .. import util
from ..error import CLError

log = logging.getLogger(__name__)

INF = math.inf


class VarKind(enum.Enum):
    CONTINUOUS = "continuous"
    BINARY = "binary"
    INTEGER = "integer"


class Sense(enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class ObjSense(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class SolveStatus(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible-time-limit"
    # Time limit reached before any incumbent was found
    NO_SOLUTION = "no-solution"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ERROR = "error"

    @property
    def has_solution(self) -> bool:
        return self in (SolveStatus.OPTIMAL, SolveStatus.FEASIBLE)


@dataclass(frozen=True)
class Variable:
    index: int
    name: str
    kind: VarKind
    lb: float
    ub: float


@dataclass(frozen=True)
class Constraint:
    index: int
    name: str
    coeffs: Mapping[int, float]
    sense: Sense
    rhs: float


Terms = Mapping[int, float] | Iterable[tuple[int, float]]


def _accumulate(terms: Terms) -> dict[int, float]:
    items = terms.items() if isinstance(terms, Mapping) else terms
    coeffs = {}
    for var, coef in items:
        coeffs[var] = coeffs.get(var, 0.0) + float(coef)
    return {var: coef for var, coef in coeffs.items() if coef != 0.0}


class Model:
    def __init__(self, name: str = "model"):
        self.name = name
        self.variables: list[Variable] = []
        self.constraints: list[Constraint] = []
        self.objective: dict[int, float] = {}
        self.objective_constant: float = 0.0
        self.obj_sense: ObjSense = ObjSense.MAXIMIZE

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    @property
    def is_mip(self) -> bool:
        return any(v.kind is not VarKind.CONTINUOUS for v in self.variables)

    def add_var(
        self,
        name: str = "",
        kind: VarKind = VarKind.CONTINUOUS,
        lb: float = 0.0,
        ub: float = INF,
    ) -> int:
        if kind is VarKind.BINARY:
            lb, ub = max(lb, 0.0), min(ub, 1.0)
        if math.isnan(lb) or math.isnan(ub) or lb > ub:
            raise CLError(
                "INVALID_MODEL",
                {"model": self.name, "reason": "bad bounds on {}".format(name)},
            )
        index = len(self.variables)
        self.variables.append(
            Variable(index, name or "v{}".format(index), kind, float(lb), float(ub))
        )
        return index

    def _check_terms(self, coeffs: dict[int, float], where: str) -> None:
        for var, coef in coeffs.items():
            if not 0 <= var < len(self.variables):
                raise CLError(
                    "INVALID_MODEL",
                    {
                        "model": self.name,
                        "reason": "{} references undeclared variable {}".format(
                            where, var
                        ),
                    },
                )
            if not math.isfinite(coef):
                raise CLError(
                    "INVALID_MODEL",
                    {
                        "model": self.name,
                        "reason": "{} has non-finite coefficient on {}".format(
                            where, self.variables[var].name
                        ),
                    },
                )

    def add_constr(self, terms: Terms, sense: Sense, rhs: float, name: str = "") -> int:
        coeffs = _accumulate(terms)
        index = len(self.constraints)
        name = name or "r{}".format(index)
        self._check_terms(coeffs, "constraint {}".format(name))
        if not math.isfinite(rhs):
            raise CLError(
                "INVALID_MODEL",
                {"model": self.name, "reason": "constraint {} rhs".format(name)},
            )
        self.constraints.append(Constraint(index, name, coeffs, sense, float(rhs)))
        return index

    def set_objective(self, terms: Terms, sense: ObjSense, constant: float = 0.0) -> None:
        coeffs = _accumulate(terms)
        self._check_terms(coeffs, "objective")
        self.objective = coeffs
        self.obj_sense = sense
        self.objective_constant = float(constant)

    def fix(self, var: int, value: float) -> None:
        v = self.variables[var]
        self.variables[var] = Variable(v.index, v.name, v.kind, float(value), float(value))

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lb = np.array([v.lb for v in self.variables], dtype=float)
        ub = np.array([v.ub for v in self.variables], dtype=float)
        return lb, ub

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.num_vars)
        for var, coef in self.objective.items():
            c[var] = coef
        return c

    def matrix(self, rows: list[Constraint] | None = None) -> sparse.csr_matrix:
        rows = self.constraints if rows is None else rows
        data, row_idx, col_idx = [], [], []
        for i, constr in enumerate(rows):
            for var, coef in constr.coeffs.items():
                data.append(coef)
                row_idx.append(i)
                col_idx.append(var)
        return sparse.csr_matrix(
            (data, (row_idx, col_idx)), shape=(len(rows), self.num_vars)
        )

    def columns(self) -> list[dict[int, float]]:
        """
        Column view: for each variable, its coefficient in each row
        """
        cols = [dict() for _ in self.variables]
        for constr in self.constraints:
            for var, coef in constr.coeffs.items():
                cols[var][constr.index] = coef
        return cols

    def write_lp(self, path: str) -> None:
        util.write_text(path, to_lp_format(self))

    def describe(self) -> str:
        return "{}: {} vars ({} integer), {} rows".format(
            self.name,
            self.num_vars,
            sum(1 for v in self.variables if v.kind is not VarKind.CONTINUOUS),
            self.num_constraints,
        )


@dataclass
class SolveOutcome:
    status: SolveStatus
    objective: float = math.nan
    bound: float = math.nan
    wall_time: float = 0.0
    values: np.ndarray | None = None
    # d(objective)/d(rhs) per row, in the model's own objective sense
    duals: np.ndarray | None = field(default=None, repr=False)
    message: str = ""

    def value(self, var: int) -> float:
        if self.values is None:
            raise CLError(
                "SOLVER_ERROR",
                {"model": "?", "status": self.status.value, "errmsg": "no primal values"},
            )
        return float(self.values[var])

    def dual(self, row: int) -> float:
        if self.duals is None:
            raise CLError(
                "SOLVER_ERROR",
                {"model": "?", "status": self.status.value, "errmsg": "no duals"},
            )
        return float(self.duals[row])


_LP_NAME = re.compile(r"[^A-Za-z0-9_.]")


def _lp_name(name: str) -> str:
    cleaned = _LP_NAME.sub("_", name)
    if not cleaned or cleaned[0].isdigit() or cleaned[0] == ".":
        cleaned = "_" + cleaned
    return cleaned


def _lp_terms(coeffs: Mapping[int, float], names: list[str]) -> str:
    if not coeffs:
        return "0 {}".format(names[0]) if names else "0"
    parts = []
    for var, coef in sorted(coeffs.items()):
        sign = "-" if coef < 0 else "+"
        parts.append("{} {!r} {}".format(sign, abs(coef), names[var]))
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def to_lp_format(model: Model) -> str:
    """
    Render the model in CPLEX LP text for offline debugging
    """
    names = ["{}_{}".format(_lp_name(v.name), v.index) for v in model.variables]
    lines = [
        "\\ {}".format(model.describe()),
        "Maximize" if model.obj_sense is ObjSense.MAXIMIZE else "Minimize",
        " obj: {}".format(_lp_terms(model.objective, names)),
    ]
    if model.objective_constant:
        lines[-1] += " + {!r} constant_term".format(model.objective_constant)
    lines.append("Subject To")
    for constr in model.constraints:
        lines.append(
            " {}_{}: {} {} {!r}".format(
                _lp_name(constr.name),
                constr.index,
                _lp_terms(constr.coeffs, names),
                constr.sense.value,
                constr.rhs,
            )
        )
    lines.append("Bounds")
    for v, name in zip(model.variables, names):
        lb = "-inf" if v.lb == -INF else repr(v.lb)
        ub = "+inf" if v.ub == INF else repr(v.ub)
        lines.append(" {} <= {} <= {}".format(lb, name, ub))
    if model.objective_constant:
        lines.append(" constant_term = 1")
    binaries = [n for v, n in zip(model.variables, names) if v.kind is VarKind.BINARY]
    generals = [n for v, n in zip(model.variables, names) if v.kind is VarKind.INTEGER]
    if binaries:
        lines.append("Binaries")
        lines.append(" " + " ".join(binaries))
    if generals:
        lines.append("Generals")
        lines.append(" " + " ".join(generals))
    lines.append("End")
    return "\n".join(lines) + "\n"
