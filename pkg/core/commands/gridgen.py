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
from ..lib.payload.generate import GridGenPayload
from .base import CommandBase

log = logging.getLogger(__name__)


def probability(text):
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise ValueError(text)
    return value


class GridGen(CommandBase):
    DESCRIPTION = (
        "Generate an N x N grid-world scenario.\n"
        "Two trucks start at opposite corners holding supply, the center "
        "holds supply as well and the two remaining corners hold demand. "
        "Every edge survives with probability 1 - drop_prob."
    )
    NAME = "gridgen"

    def setup_parser(self, parser, **kwargs):
        parser.add_argument("n", type=int, help="Grid side")
        parser.add_argument("horizon", type=int, help="Number of timesteps T")
        parser.add_argument("budget", type=float, help="Red's interdiction budget")
        parser.add_argument(
            "costs",
            choices=["uniform", "random"],
            help="Unit interdiction costs, or integer costs drawn from "
            "{}..{}".format(*constant.RANDOM_COST_RANGE),
        )
        parser.add_argument(
            "drop_prob", type=probability, help="Probability of dropping an edge"
        )
        parser.add_argument("seed", type=int, help="Random seed")
        parser.add_argument("--out", required=True, help="Scenario file to write")

    def validate_args(self):
        if self.args.n < constant.GRID_MIN_SIDE:
            self.usage(
                "grid side must be at least {}".format(constant.GRID_MIN_SIDE)
            )
        if self.args.horizon < 1:
            self.usage("horizon must be at least 1")
        if self.args.budget < 0:
            self.usage("budget must be nonnegative")

    def op(self) -> int:
        self.payload = GridGenPayload(**self.payload_kwargs())
        return self.payload.run()
