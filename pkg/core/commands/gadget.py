#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging

from ..lib import util
from ..lib.error import CLError
from ..lib.payload.generate import GadgetPayload
from .base import CommandBase

log = logging.getLogger(__name__)


def element_set(text):
    return frozenset(int(x) for x in text.split(","))


class Gadget(CommandBase):
    DESCRIPTION = (
        "Build a scenario from a hardness gadget.\n"
        "'sat' turns a DIMACS CNF file into a game whose value is the largest "
        "fraction of simultaneously satisfiable clauses; 'setcover' builds the "
        "set cover game and, with --strategy-out, Blue's element-path mixture."
    )
    NAME = "gadget"

    def setup_parser(self, parser, **kwargs):
        parser.add_argument("kind", choices=["sat", "setcover"])
        parser.add_argument("--cnf", help="DIMACS CNF file, for 'sat'")
        parser.add_argument("--universe", type=int, help="Universe size n")
        parser.add_argument(
            "--set",
            type=element_set,
            action="append",
            help="Comma separated elements of one set, repeat per set",
        )
        parser.add_argument("--budget", type=float, default=1.0, help="Red's budget")
        parser.add_argument("--out", required=True, help="Scenario file to write")
        parser.add_argument("--strategy-out", help="Blue mixture file, for 'setcover'")

    def validate_args(self):
        if self.args.kind == "sat":
            if not self.args.cnf:
                self.usage("'sat' needs --cnf")
            if not util.is_file_readable(self.args.cnf):
                raise CLError("FAILED_TO_READ_FILE", {"filepath": self.args.cnf})
        else:
            if not self.args.universe or not self.args.set:
                self.usage("'setcover' needs --universe and at least one --set")

    def op(self) -> int:
        self.payload = GadgetPayload(**self.payload_kwargs())
        return self.payload.run()
