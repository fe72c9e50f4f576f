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
from ..lib.payload.solve import SolvePayload
from .base import CommandBase

log = logging.getLogger(__name__)


class Solve(CommandBase):
    DESCRIPTION = (
        "Approximate the equilibrium of a scenario with the double oracle.\n"
        "Writes result.json, trace.csv and strategies.json into --out-dir. "
        "Exits with 2 when the iteration cap is hit before the gap closes."
    )
    NAME = "solve"

    def setup_parser(self, parser, **kwargs):
        super(Solve, self).setup_parser(parser, **kwargs)
        self.add_solver_parser(parser)
        parser.add_argument(
            "--exact-every",
            type=int,
            default=constant.DEFAULT_EXACT_EVERY,
            help="Solve both best responses to optimality every N iterations "
            "(defaults to %(default)s)",
        )
        parser.add_argument(
            "--dump-models",
            metavar="DIR",
            help="Write both best-response models of every iteration in LP "
            "format into DIR",
        )

    def validate_args(self):
        self.validate_common_args()
        if self.args.exact_every < 1:
            self.usage("--exact-every must be at least 1")

    def op(self) -> int:
        self.payload = SolvePayload(**self.payload_kwargs())
        log.debug("Running double oracle")
        return self.payload.run()
