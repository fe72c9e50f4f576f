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
import os

from .. import constant, hook, milp, util
from ..scenario import load_scenario_file, Scenario

log = logging.getLogger(__name__)


class Payload:
    """
    Base class for all the jobs the command line can run. Settings arrive
    as keyword arguments, usually straight from the parsed command line.
    """

    def __init__(self, **kwargs):
        self._backend = None
        self.hook_map = kwargs.get(
            "hook_map", collections.defaultdict(lambda: hook.NoopHook())
        )
        self.backend_name = kwargs.get("backend", None)
        self.threads = kwargs.get("threads", None) or os.cpu_count() or 1
        self.out_dir = kwargs.get("out_dir", "") or ""
        self.strict = not kwargs.get("lenient", False)
        self.scenario_path = kwargs.get("scenario", None)

    @property
    def backend(self):
        if self._backend is None:
            self._backend = milp.get_backend(self.backend_name, self.threads)
            log.info("Using solver backend {}".format(self._backend.name))
        return self._backend

    def load_scenario(self, filepath: str | None = None) -> Scenario:
        return load_scenario_file(filepath or self.scenario_path, strict=self.strict)

    def output_path(self, filename: str) -> str:
        if self.out_dir:
            util.ensure_dir(self.out_dir)
        return os.path.join(self.out_dir, filename)

    def write_json(self, filename: str, data) -> str:
        path = self.output_path(filename)
        util.write_json(path, data)
        log.info("Wrote {}".format(path))
        return path

    def write_csv(self, filename: str, header, rows) -> str:
        path = self.output_path(filename)
        util.write_csv(path, header, rows)
        log.info("Wrote {}".format(path))
        return path

    def write_text(self, filename: str, text: str) -> str:
        path = self.output_path(filename)
        util.write_text(path, text)
        log.info("Wrote {}".format(path))
        return path

    def run(self) -> int:
        """
        Main logic of the payload, returns the process exit status
        """
        raise NotImplementedError("run function in Payload not implemented")

    def exit_status(self, converged: bool = True) -> int:
        return constant.EXIT_OK if converged else constant.EXIT_ITERATION_CAP
