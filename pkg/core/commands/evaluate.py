#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging

from ..lib import constant, util
from ..lib.error import CLError
from ..lib.payload.evaluate import EvaluatePayload
from .base import CommandBase

log = logging.getLogger(__name__)


class Evaluate(CommandBase):
    DESCRIPTION = (
        "Exploitability of a Blue mixed strategy against a best-responding Red.\n"
        "The mixture comes from --strategy (strategies.json of 'solve'), "
        "from the min-overlap heuristic (--k and --n-str) or is the optimal "
        "plan without Red (--no-red). Writes report.json."
    )
    NAME = "eval"

    def setup_parser(self, parser, **kwargs):
        super(Evaluate, self).setup_parser(parser, **kwargs)
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--strategy", help="Strategy file")
        source.add_argument("--k", type=float, help="Heuristic target payoff")
        source.add_argument("--no-red", action="store_true")
        parser.add_argument("--n-str", type=int, help="Heuristic support size")
        parser.add_argument(
            "--heuristic-time-limit",
            type=float,
            default=constant.DEFAULT_HEURISTIC_TIME_LIMIT,
            help="Seconds for the heuristic MILP (defaults to %(default)s)",
        )

    def validate_args(self):
        self.validate_common_args()
        if self.args.k is not None and (self.args.n_str is None or self.args.n_str < 1):
            self.usage("--k needs --n-str of at least 1")
        if self.args.strategy and not util.is_file_readable(self.args.strategy):
            raise CLError("FAILED_TO_READ_FILE", {"filepath": self.args.strategy})

    def op(self) -> int:
        self.payload = EvaluatePayload(**self.payload_kwargs())
        return self.payload.run()
