#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging
import os

from ..lib import constant, util
from ..lib.error import CLError

log = logging.getLogger(__name__)


class CommandBase:
    DESCRIPTION = """
    This is a default description. You should overwrite it in your sub-class.
    """

    # args from ArgumentParser.parse_args()
    args = None

    # subparser for this command
    parser = None

    def __init__(self, hook_map=None):
        """
        Initialize the command base object

        @param hook_map: Override the hooks fired around the double-oracle
        stages. If not specified, every hook point is a no-op.
        @type: dict
        """
        self.hook_map = hook_map
        self.init()

    def init(self):
        """
        Called upon init, override me.
        """
        pass

    def name(self):
        """
        Return the name of this subcommand.
        """
        return self.NAME

    def description(self):
        """
        Return a one-line description of this command
        Exceptions are ignored
        """
        return self.DESCRIPTION.splitlines()[0]

    def help(self):
        """
        Return a chunk of text explaining this command
        """
        return self.DESCRIPTION

    def setup_parser(self, parser, require_scenario=True):
        """
        Common parser shared across all the commands
        """
        if require_scenario:
            parser.add_argument("scenario", help="Scenario JSON file")
        parser.add_argument(
            "--backend",
            choices=constant.SUPPORTED_BACKENDS,
            help="MILP solver backend (defaults to ${} or '{}')".format(
                constant.BACKEND_ENV_VAR, constant.DEFAULT_BACKEND
            ),
        )
        parser.add_argument(
            "--threads",
            type=int,
            help="Cap on internal parallelism (defaults to the CPU count, "
            "1 makes runs deterministic)",
        )
        parser.add_argument(
            "--out-dir",
            default=".",
            help="Directory receiving the output files (defaults to '%(default)s')",
        )
        parser.add_argument(
            "--lenient",
            action="store_true",
            help="Log scenario validation violations instead of failing",
        )

    def add_solver_parser(self, parser):
        parser.add_argument(
            "--epsilon",
            type=float,
            default=constant.DEFAULT_EPSILON,
            help="Stop once the equilibrium gap is at most this "
            "(defaults to %(default)s)",
        )
        parser.add_argument(
            "--time-limit",
            type=float,
            default=constant.DEFAULT_BR_TIME_LIMIT,
            help="Seconds per time-limited best response "
            "(defaults to %(default)s)",
        )
        parser.add_argument(
            "--max-iterations",
            type=int,
            default=constant.DEFAULT_MAX_ITERATIONS,
            help="Give up after this many double-oracle iterations "
            "(defaults to %(default)s)",
        )

    def usage(self, *args, **kwargs):
        self.parser.error(*args, **kwargs)

    def validate_args(self):
        pass

    def validate_common_args(self):
        if getattr(self.args, "threads", None) is not None and self.args.threads < 1:
            self.usage("--threads must be at least 1")
        if getattr(self.args, "epsilon", 1.0) <= 0:
            self.usage("--epsilon must be positive")
        time_limit = getattr(self.args, "time_limit", None)
        if time_limit is not None and time_limit <= 0:
            self.usage("--time-limit must be positive")
        scenario = getattr(self.args, "scenario", None)
        if scenario and not util.is_file_readable(scenario):
            raise CLError("FAILED_TO_READ_FILE", {"filepath": scenario})
        out_dir = getattr(self.args, "out_dir", None)
        if out_dir and os.path.exists(out_dir) and not os.path.isdir(out_dir):
            raise CLError("OUT_DIR_NOT_DIR", {"dir": out_dir})

    def op(self) -> int:
        raise NotImplementedError("op function in Command not implemented")

    def payload_kwargs(self) -> dict:
        kwargs = vars(self.args).copy()
        if self.hook_map is not None:
            kwargs["hook_map"] = self.hook_map
        return kwargs
