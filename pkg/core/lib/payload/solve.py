#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging

from .. import constant, hook
from ..equilibrium import DoubleOracle, SolveResult
from .base import Payload

log = logging.getLogger(__name__)


class SolvePayload(Payload):
    """
    Approximate the equilibrium of one scenario file with the double oracle
    and write the result, the iteration trace and both mixed strategies
    """

    def __init__(self, *args, **kwargs):
        super(SolvePayload, self).__init__(*args, **kwargs)
        self.epsilon = kwargs.get("epsilon", constant.DEFAULT_EPSILON)
        self.br_time_limit = kwargs.get("time_limit", constant.DEFAULT_BR_TIME_LIMIT)
        self.exact_every = kwargs.get("exact_every", constant.DEFAULT_EXACT_EVERY)
        self.max_iterations = kwargs.get(
            "max_iterations", constant.DEFAULT_MAX_ITERATIONS
        )
        self.dump_models = kwargs.get("dump_models", None)
        self.result: SolveResult | None = None

    def setup_hooks(self):
        if "after_expand_subgame" not in self.hook_map:
            self.hook_map["after_expand_subgame"] = hook.TraceCheckpointHook(
                out_dir=self.output_path("") or "."
            )
        if self.dump_models and "after_compute_best_responses" not in self.hook_map:
            self.hook_map["after_compute_best_responses"] = hook.ModelDumpHook(
                out_dir=self.dump_models
            )

    def run(self) -> int:
        scenario = self.load_scenario()
        self.setup_hooks()
        solver = DoubleOracle(
            scenario,
            epsilon=self.epsilon,
            br_time_limit=self.br_time_limit,
            exact_every=self.exact_every,
            max_iterations=self.max_iterations,
            threads=self.threads,
            backend=self.backend,
            hook_map=self.hook_map,
        )
        self.result = solver.run()
        self.write_json(constant.RESULT_FILE, self.result.to_json())
        self.write_csv(constant.TRACE_FILE, *self.result.trace_rows())
        self.write_json(constant.STRATEGIES_FILE, self.result.strategies_json())
        print(
            "value {:.6f} in [{:.6f}, {:.6f}] after {} iterations ({})".format(
                self.result.value,
                self.result.lower,
                self.result.upper,
                self.result.iterations,
                self.result.termination,
            )
        )
        return self.exit_status(self.result.converged)
