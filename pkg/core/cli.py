#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import argparse
import logging
import sys

from .commands import commands
from .lib import constant
from .lib.error import CLError

log = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser(hook_map=None):
    parser = argparse.ArgumentParser(
        prog="cl_cli",
        description="Solve and analyse contested logistics games",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log at DEBUG level"
    )
    subparsers = parser.add_subparsers(dest="command_name", metavar="command")
    subparsers.required = True
    for command_cls in commands:
        command = command_cls(hook_map=hook_map)
        subparser = subparsers.add_parser(
            command.name(),
            help=command.description(),
            description=command.help(),
        )
        command.setup_parser(subparser)
        command.parser = subparser
        subparser.set_defaults(command=command)
    return parser


def setup_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO, format=LOG_FORMAT
    )


def main(argv=None, hook_map=None) -> int:
    parser = build_parser(hook_map)
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    command = args.command
    command.args = args
    try:
        command.validate_args()
        return command.op()
    except CLError as e:
        if e.internal:
            # traceback for internal errors
            log.exception(e.desc)
        else:
            log.error(e.desc)
        return constant.EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
