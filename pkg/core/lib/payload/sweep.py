#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import collections
import logging
import math

from .. import constant, util
from ..equilibrium import double_oracle
from ..scenario import generate_grid_world
from .base import Payload

log = logging.getLogger(__name__)

RUNTIME_HEADER = (
    "budget",
    "horizon",
    "samples",
    "mean_value",
    "stderr_value",
    "mean_seconds",
    "stderr_seconds",
    "mean_iterations",
    "capped",
)


def monotonicity_violations(budgets, horizons, means, tol: float = 1e-8) -> list[str]:
    """
    Cells where the mean value grows with the budget, or shrinks with the
    horizon
    """
    violations = []
    for T in horizons:
        for lo, hi in zip(budgets, budgets[1:]):
            a, b = means.get((lo, T)), means.get((hi, T))
            if a is not None and b is not None and b > a + tol:
                violations.append(
                    "T={}: budget {} -> {} raises value {:.6f} -> {:.6f}".format(
                        T, lo, hi, a, b
                    )
                )
    for budget in budgets:
        for lo, hi in zip(horizons, horizons[1:]):
            a, b = means.get((budget, lo)), means.get((budget, hi))
            if a is not None and b is not None and b < a - tol:
                violations.append(
                    "budget {}: T {} -> {} lowers value {:.6f} -> {:.6f}".format(
                        budget, lo, hi, a, b
                    )
                )
    return violations


class SweepPayload(Payload):
    """
    Game values and solve times over a budget x horizon grid, averaged over
    seeded grid instances or taken from a template scenario. Both CSV files
    are rewritten after every cell.
    """

    def __init__(self, *args, **kwargs):
        super(SweepPayload, self).__init__(*args, **kwargs)
        self.budgets = list(kwargs.get("budgets", None) or [])
        self.horizons = list(kwargs.get("horizons", None) or [])
        self.n = kwargs.get("n", None)
        self.uniform_costs = kwargs.get("costs", "uniform") == "uniform"
        self.drop_prob = kwargs.get("drop_prob", constant.DEFAULT_EDGE_DROP_PROB)
        self.seeds = kwargs.get("seeds", constant.DEFAULT_SWEEP_SEEDS)
        self.base_seed = kwargs.get("seed", 0)
        self.epsilon = kwargs.get("epsilon", constant.DEFAULT_EPSILON)
        self.br_time_limit = kwargs.get("time_limit", constant.DEFAULT_BR_TIME_LIMIT)
        self.max_iterations = kwargs.get(
            "max_iterations", constant.DEFAULT_MAX_ITERATIONS
        )
        self.samples = collections.defaultdict(list)
        self._template = None

    def instances(self, budget, horizon):
        if self.scenario_path:
            if self._template is None:
                self._template = self.load_scenario()
            yield self._template.with_budget(budget).with_horizon(horizon)
            return
        for k in range(self.seeds):
            yield generate_grid_world(
                self.n,
                horizon,
                budget,
                uniform_costs=self.uniform_costs,
                edge_drop_prob=self.drop_prob,
                seed=self.base_seed + k,
            )

    def means(self) -> dict:
        return {
            cell: util.mean_and_stderr([s[0] for s in samples])[0]
            for cell, samples in self.samples.items()
        }

    def heatmap_rows(self):
        means = self.means()
        header = ["budget\\horizon"] + [str(T) for T in self.horizons]
        rows = [
            [util.format_cell(b)] + [means.get((b, T), math.nan) for T in self.horizons]
            for b in self.budgets
        ]
        return header, rows

    def runtime_rows(self):
        rows = []
        for b in self.budgets:
            for T in self.horizons:
                samples = self.samples.get((b, T))
                if not samples:
                    continue
                values, seconds, iterations, capped = zip(*samples)
                rows.append(
                    [util.format_cell(b), T, len(samples)]
                    + list(util.mean_and_stderr(values))
                    + list(util.mean_and_stderr(seconds))
                    + [sum(iterations) / len(iterations), sum(capped)]
                )
        return RUNTIME_HEADER, rows

    def flush(self):
        self.write_csv(constant.HEATMAP_FILE, *self.heatmap_rows())
        self.write_csv(constant.RUNTIMES_FILE, *self.runtime_rows())

    def run_cell(self, budget, horizon):
        for scenario in self.instances(budget, horizon):
            result = double_oracle(
                scenario,
                epsilon=self.epsilon,
                br_time_limit=self.br_time_limit,
                max_iterations=self.max_iterations,
                threads=self.threads,
                backend=self.backend,
            )
            self.samples[(budget, horizon)].append(
                (result.value, result.wall_time, result.iterations, not result.converged)
            )
        log.info(
            "Cell budget={} T={}: mean value {:.6f} over {} instances".format(
                budget,
                horizon,
                self.means()[(budget, horizon)],
                len(self.samples[(budget, horizon)]),
            )
        )

    def run(self) -> int:
        try:
            for budget in self.budgets:
                for horizon in self.horizons:
                    self.run_cell(budget, horizon)
                    self.flush()
        except KeyboardInterrupt:
            log.warning("Interrupted, flushing the finished cells")
            self.flush()
            raise
        for violation in monotonicity_violations(
            self.budgets, self.horizons, self.means()
        ):
            log.warning("Monotonicity violation: {}".format(violation))
        header, rows = self.heatmap_rows()
        print(util.csv_text(header, rows), end="")
        return constant.EXIT_OK
