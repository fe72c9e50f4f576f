#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging

from ..lib import constant
from ..lib.payload.robustness import RobustnessPayload
from .base import CommandBase

log = logging.getLogger(__name__)


class Robustness(CommandBase):
    DESCRIPTION = (
        "Price of robustness: equilibrium strategies computed for each "
        "expected budget, evaluated against every true budget.\n"
        "Rows of robustness.csv are expected budgets, columns true budgets. "
        "With --ks and --n-strs the min-overlap heuristic table is written "
        "to heuristic.csv as well."
    )
    NAME = "por"

    def setup_parser(self, parser, **kwargs):
        super(Robustness, self).setup_parser(parser, **kwargs)
        self.add_solver_parser(parser)
        parser.add_argument(
            "--budgets", type=float, nargs="+", required=True, help="Red budgets"
        )
        parser.add_argument("--ks", type=float, nargs="+", help="Heuristic targets")
        parser.add_argument(
            "--n-strs", type=int, nargs="+", help="Heuristic support sizes"
        )
        parser.add_argument(
            "--heuristic-time-limit",
            type=float,
            default=constant.DEFAULT_HEURISTIC_TIME_LIMIT,
        )

    def validate_args(self):
        self.validate_common_args()
        if self.args.budgets != sorted(self.args.budgets):
            self.usage("--budgets must be ascending")
        if bool(self.args.ks) != bool(self.args.n_strs):
            self.usage("--ks and --n-strs go together")

    def op(self) -> int:
        self.payload = RobustnessPayload(**self.payload_kwargs())
        return self.payload.run()
