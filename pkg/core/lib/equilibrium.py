#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Equilibria of the zero-sum game, Blue maximizing and Red minimizing the
expected utility. Small games are solved by enumerating the full payoff
matrix; everything else goes through the double oracle, which grows a
subgame with best responses until the value bracket closes.
"""

import collections
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import constant, milp, util
from .error import CLError
from .hook import NoopHook, wrap_hook
from .layered import (
    enumerate_interdiction_plans,
    enumerate_logistics_plans,
    InterdictionPlan,
    unroll_all,
)
from .milp import Model, ObjSense, Sense
from .oracle import blue_best_response, MixedStrategy, red_best_response
from .payoff import payoff_matrix, PayoffEvaluator, PayoffMatrix
from .scenario.models import Scenario

log = logging.getLogger(__name__)

TRACE_HEADER = (
    "iteration",
    "subgame_value",
    "blue_br_value",
    "red_br_value",
    "gap",
    "seconds",
    "blue_plans",
    "red_plans",
    "exact",
)


def _simplex(weights) -> np.ndarray:
    weights = np.clip(np.asarray(weights, dtype=float), 0.0, None)
    return weights / weights.sum()


def subgame_nash(matrix, backend=None) -> tuple[np.ndarray, np.ndarray, float]:
    """
    Nash equilibrium of the matrix game where the row player maximizes.
    Solves the row player's LP and the column player's LP and returns
    (row mixture, column mixture, value).
    """
    values = matrix.values if isinstance(matrix, PayoffMatrix) else matrix
    values = np.atleast_2d(np.asarray(values, dtype=float))
    rows, cols = values.shape
    if rows == 0 or cols == 0:
        raise CLError("EMPTY_MATRIX", {"what": "{}x{} subgame".format(rows, cols)})
    backend = milp.get_backend(backend)

    blue = Model("subgame_blue")
    x = [blue.add_var("x[{}]".format(i)) for i in range(rows)]
    v = blue.add_var("v", lb=-milp.INF)
    for j in range(cols):
        blue.add_constr(
            [(x[i], values[i, j]) for i in range(rows)] + [(v, -1.0)],
            Sense.GE,
            0.0,
            "col[{}]".format(j),
        )
    blue.add_constr([(var, 1.0) for var in x], Sense.EQ, 1.0, "simplex")
    blue.set_objective({v: 1.0}, ObjSense.MAXIMIZE)
    blue_out = milp.solve_or_raise(blue, backend=backend)

    red = Model("subgame_red")
    y = [red.add_var("y[{}]".format(j)) for j in range(cols)]
    w = red.add_var("w", lb=-milp.INF)
    for i in range(rows):
        red.add_constr(
            [(y[j], values[i, j]) for j in range(cols)] + [(w, -1.0)],
            Sense.LE,
            0.0,
            "row[{}]".format(i),
        )
    red.add_constr([(var, 1.0) for var in y], Sense.EQ, 1.0, "simplex")
    red.set_objective({w: 1.0}, ObjSense.MINIMIZE)
    red_out = milp.solve_or_raise(red, backend=backend)

    if abs(blue_out.objective - red_out.objective) > 1e-6:
        log.warning(
            "Subgame LP values disagree: {!r} vs {!r}".format(
                blue_out.objective, red_out.objective
            )
        )
    x_b = _simplex([blue_out.value(var) for var in x])
    x_r = _simplex([red_out.value(var) for var in y])
    return x_b, x_r, float(blue_out.objective)


def exploiting_response(scenario: Scenario, blue_mixture: MixedStrategy, backend=None, evaluator=None):
    """
    Red's exact best response to a fixed Blue mixture
    """
    evaluator = evaluator or PayoffEvaluator(scenario, backend)
    return red_best_response(
        scenario, blue_mixture, backend=evaluator.backend, evaluator=evaluator
    )


def exploitability(scenario: Scenario, blue_mixture: MixedStrategy, backend=None, evaluator=None) -> float:
    """
    Expected utility of blue_mixture against a best-responding Red
    """
    return exploiting_response(scenario, blue_mixture, backend, evaluator).value


def exact_nash_bruteforce(
    scenario: Scenario,
    blue_cap: int = constant.DEFAULT_ENUMERATION_CAP,
    red_cap: int = constant.DEFAULT_ENUMERATION_CAP,
    backend=None,
    threads: int | None = None,
) -> tuple[float, MixedStrategy, MixedStrategy]:
    """
    Game value and equilibrium over every logistics plan and every maximal
    interdiction plan
    """
    blue_plans = enumerate_logistics_plans(scenario, blue_cap)
    red_plans = enumerate_interdiction_plans(scenario, red_cap)
    log.info(
        "Brute force over {} logistics x {} interdiction plans".format(
            len(blue_plans), len(red_plans)
        )
    )
    matrix = payoff_matrix(scenario, blue_plans, red_plans, threads=threads, backend=backend)
    x_b, x_r, value = subgame_nash(matrix, backend)
    return (
        value,
        MixedStrategy.normalized(blue_plans, x_b, constant.PROBABILITY_TOLERANCE),
        MixedStrategy.normalized(red_plans, x_r, constant.PROBABILITY_TOLERANCE),
    )


@dataclass
class IterationRecord:
    iteration: int
    subgame_value: float
    blue_br_value: float
    red_br_value: float
    gap: float
    seconds: float
    blue_plans: int
    red_plans: int
    exact: bool

    def row(self) -> list:
        return [getattr(self, name) for name in TRACE_HEADER]


@dataclass
class SolveResult:
    value: float
    blue: MixedStrategy
    red: MixedStrategy
    lower: float
    upper: float
    termination: str
    iterations: int
    wall_time: float
    trace: list[IterationRecord] = field(default_factory=list)

    @property
    def gap(self) -> float:
        return max(0.0, self.upper - self.lower)

    @property
    def converged(self) -> bool:
        return self.termination == "converged"

    def trace_rows(self):
        return TRACE_HEADER, [record.row() for record in self.trace]

    def strategies_json(self) -> dict:
        return {"blue": self.blue.to_json(), "red": self.red.to_json()}

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "gap": self.gap,
            "termination": self.termination,
            "iterations": self.iterations,
            "wall_time": self.wall_time,
            "blue_support": len(self.blue),
            "red_support": len(self.red),
            "strategies": self.strategies_json(),
            "trace": [asdict(record) for record in self.trace],
        }


class DoubleOracle:
    """
    Double oracle driver. Every iteration solves the subgame, computes both
    best responses and adds them to the subgame; it stops once the bracket
    between Blue's best-response value and Red's is at most epsilon with
    both responses solved to optimality.
    """

    def __init__(self, scenario: Scenario, **kwargs):
        self.scenario = scenario
        self.epsilon = kwargs.get("epsilon", constant.DEFAULT_EPSILON)
        self.br_time_limit = kwargs.get("br_time_limit", constant.DEFAULT_BR_TIME_LIMIT)
        self.exact_every = kwargs.get("exact_every", constant.DEFAULT_EXACT_EVERY)
        self.max_iterations = kwargs.get("max_iterations", constant.DEFAULT_MAX_ITERATIONS)
        self.threads = kwargs.get("threads", None)
        self.backend = milp.get_backend(kwargs.get("backend", None), self.threads)
        self.hook_map = kwargs.get(
            "hook_map", collections.defaultdict(lambda: NoopHook())
        )
        self.initial_blue = list(kwargs.get("initial_blue", None) or [])
        self.initial_red = list(kwargs.get("initial_red", None) or [])
        if self.epsilon <= 0:
            raise CLError(
                "ARGUMENT_ERROR", {"name": "epsilon", "reason": "must be positive"}
            )

        self.evaluator = PayoffEvaluator(scenario, self.backend)
        self.layered = None
        self.matrix: PayoffMatrix | None = None
        self.x_b: MixedStrategy | None = None
        self.x_r: MixedStrategy | None = None
        self.value = 0.0
        self.lower = -np.inf
        self.upper = np.inf
        self.blue_br = None
        self.red_br = None
        self.exact = False
        self.iteration = 0
        self.records: list[IterationRecord] = []
        self._start = 0.0

    def execute_hook(self, hook_point=""):
        log.debug("Trigger hook point: {}".format(hook_point))
        hook_obj = self.hook_map[hook_point]
        if not isinstance(hook_obj, NoopHook):
            log.debug(
                "Executing hook: {} for hook point: {}".format(
                    hook_obj.__class__.__name__, hook_point
                )
            )
            hook_obj.execute(self)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._start

    def trace_rows(self):
        return TRACE_HEADER, [record.row() for record in self.records]

    def initial_subgame(self):
        """
        Blue's optimal plan without Red and the empty interdiction, unless
        initial plans were given
        """
        blue = list(self.initial_blue)
        if not blue:
            response = blue_best_response(
                self.scenario,
                MixedStrategy.pure(InterdictionPlan.empty()),
                backend=self.backend,
                layered=self.layered,
            )
            blue = [response.plan]
        red = list(self.initial_red) or [InterdictionPlan.empty()]
        self.matrix = PayoffMatrix(self.evaluator, threads=self.threads)
        for plan in blue:
            if self.matrix.blue_index(plan) is None:
                self.matrix.add_blue(plan)
        for plan in red:
            if self.matrix.red_index(plan) is None:
                self.matrix.add_red(plan)

    @wrap_hook
    def solve_subgame(self):
        x_b, x_r, self.value = subgame_nash(self.matrix, self.backend)
        self.x_b = MixedStrategy.normalized(
            self.matrix.blue_plans, x_b, constant.PROBABILITY_TOLERANCE
        )
        self.x_r = MixedStrategy.normalized(
            self.matrix.red_plans, x_r, constant.PROBABILITY_TOLERANCE
        )

    @wrap_hook
    def compute_best_responses(self, exact: bool = False):
        time_limit = None if exact else self.br_time_limit

        def blue():
            return blue_best_response(
                self.scenario,
                self.x_r,
                time_limit=time_limit,
                backend=self.backend,
                layered=self.layered,
                evaluator=self.evaluator,
                incumbents=self.matrix.blue_plans,
            )

        def red():
            return red_best_response(
                self.scenario,
                self.x_b,
                time_limit=time_limit,
                backend=self.backend,
                evaluator=self.evaluator,
            )

        if self.threads == 1:
            self.blue_br, self.red_br = blue(), red()
        else:
            with ThreadPoolExecutor(max_workers=2) as executor:
                blue_future = executor.submit(blue)
                red_future = executor.submit(red)
                self.blue_br, self.red_br = blue_future.result(), red_future.result()
        self.exact = exact or (self.blue_br.optimal and self.red_br.optimal)
        if self.blue_br.value < self.value - constant.BR_SHORTFALL_TOLERANCE:
            log.warning(
                "Blue best response value {:.6f} is below the subgame value "
                "{:.6f}".format(self.blue_br.value, self.value)
            )
        self.upper = max(self.blue_br.value, self.value)
        self.lower = min(self.red_br.value, self.value)

    @property
    def gap(self) -> float:
        return max(0.0, self.upper - self.lower)

    @wrap_hook
    def expand_subgame(self) -> int:
        added = 0
        if self.matrix.blue_index(self.blue_br.plan) is None:
            self.matrix.add_blue(self.blue_br.plan)
            added += 1
        if self.matrix.red_index(self.red_br.plan) is None:
            self.matrix.add_red(self.red_br.plan)
            added += 1
        return added

    def _record(self):
        self.records.append(
            IterationRecord(
                iteration=self.iteration,
                subgame_value=self.value,
                blue_br_value=self.blue_br.value,
                red_br_value=self.red_br.value,
                gap=self.gap,
                seconds=self.elapsed,
                blue_plans=self.matrix.shape[0],
                red_plans=self.matrix.shape[1],
                exact=self.exact,
            )
        )
        log.info(
            "Iteration {}: subgame value {:.6f}, bracket [{:.6f}, {:.6f}], "
            "gap {:.6f}, subgame {}x{}".format(
                self.iteration,
                self.value,
                self.lower,
                self.upper,
                self.gap,
                self.matrix.shape[0],
                self.matrix.shape[1],
            )
        )

    def run(self) -> SolveResult:
        self._start = time.monotonic()
        self.layered = unroll_all(self.scenario, self.threads)
        self.initial_subgame()
        termination = "cap"
        force_exact = self.br_time_limit is None
        while self.iteration < self.max_iterations:
            self.iteration += 1
            self.solve_subgame()
            periodic = self.exact_every and self.iteration % self.exact_every == 0
            self.compute_best_responses(exact=force_exact or bool(periodic))
            if self.gap <= self.epsilon and not self.exact:
                log.info("Gap closed with time-limited responses, confirming exactly")
                self.compute_best_responses(exact=True)
            self._record()
            if self.gap <= self.epsilon and self.exact:
                termination = "converged"
                break
            added = self.expand_subgame()
            if not added:
                if self.exact:
                    log.warning(
                        "Best responses are already in the subgame with gap "
                        "{:.3g}, stopping".format(self.gap)
                    )
                    termination = "converged"
                    break
                force_exact = True
            else:
                force_exact = self.br_time_limit is None

        if termination == "cap":
            log.warning(
                "Stopped after {} iterations with gap {:.6f}".format(
                    self.iteration, self.gap
                )
            )
        result = SolveResult(
            value=self.value,
            blue=self.x_b,
            red=self.x_r,
            lower=self.lower,
            upper=self.upper,
            termination=termination,
            iterations=self.iteration,
            wall_time=self.elapsed,
            trace=list(self.records),
        )
        log.info(
            "Double oracle {} after {} iterations: value {:.6f} in {}".format(
                termination, self.iteration, result.value, util.readable_seconds(self.elapsed)
            )
        )
        return result


def double_oracle(
    scenario: Scenario,
    epsilon: float = constant.DEFAULT_EPSILON,
    br_time_limit: float | None = constant.DEFAULT_BR_TIME_LIMIT,
    exact_every: int = constant.DEFAULT_EXACT_EVERY,
    initial_blue=None,
    initial_red=None,
    **kwargs,
) -> SolveResult:
    return DoubleOracle(
        scenario,
        epsilon=epsilon,
        br_time_limit=br_time_limit,
        exact_every=exact_every,
        initial_blue=initial_blue,
        initial_red=initial_red,
        **kwargs,
    ).run()
