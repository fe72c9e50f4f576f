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
from ..lib.payload.sweep import SweepPayload
from .base import CommandBase
from .gridgen import probability

log = logging.getLogger(__name__)


class Sweep(CommandBase):
    DESCRIPTION = (
        "Sweep game values over Red budgets and Blue horizons.\n"
        "Either a template scenario file or --grid N with grid generator "
        "flags; writes heatmap.csv (mean value per budget and horizon) and "
        "runtimes.csv (mean and standard error over the seeds)."
    )
    NAME = "sweep"

    def setup_parser(self, parser, **kwargs):
        super(Sweep, self).setup_parser(parser, require_scenario=False)
        self.add_solver_parser(parser)
        parser.add_argument("--scenario", help="Template scenario file")
        parser.add_argument("--grid", dest="n", type=int, help="Grid side N")
        parser.add_argument(
            "--costs", choices=["uniform", "random"], default="uniform"
        )
        parser.add_argument(
            "--drop-prob", type=probability, default=constant.DEFAULT_EDGE_DROP_PROB
        )
        parser.add_argument(
            "--budgets", type=float, nargs="+", required=True, help="Red budgets"
        )
        parser.add_argument(
            "--horizons", type=int, nargs="+", required=True, help="Blue horizons"
        )
        parser.add_argument(
            "--seeds",
            type=int,
            default=constant.DEFAULT_SWEEP_SEEDS,
            help="Grid instances per cell (defaults to %(default)s)",
        )
        parser.add_argument("--seed", type=int, default=0, help="First seed")

    def validate_args(self):
        self.validate_common_args()
        if bool(self.args.scenario) == bool(self.args.n):
            self.usage("give exactly one of --scenario and --grid")
        if self.args.n is not None and self.args.n < constant.GRID_MIN_SIDE:
            self.usage(
                "grid side must be at least {}".format(constant.GRID_MIN_SIDE)
            )
        if self.args.seeds < 1:
            self.usage("--seeds must be at least 1")
        if min(self.args.horizons) < 1 or min(self.args.budgets) < 0:
            self.usage("horizons must be positive and budgets nonnegative")

    def op(self) -> int:
        self.payload = SweepPayload(**self.payload_kwargs())
        return self.payload.run()
