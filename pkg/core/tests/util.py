#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import math
import os
import tempfile
import unittest

import numpy as np

from ..lib import util
from ..lib.error import CLError


class CsvTest(unittest.TestCase):
    def test_float_cells_use_repr(self):
        text = util.csv_text(["a", "b"], [[0.1, 2]])
        self.assertEqual(text, "a,b\n0.1,2\n")

    def test_nan_is_empty_cell(self):
        text = util.csv_text(["a", "b", "c"], [[math.nan, np.float64(1.5), np.int64(3)]])
        self.assertEqual(text, "a,b,c\n,1.5,3\n")

    def test_write_csv_replaces_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.csv")
            util.write_csv(path, ["x"], [[1]])
            util.write_csv(path, ["x"], [[2]])
            with open(path) as fh:
                self.assertEqual(fh.read(), "x\n2\n")
            self.assertFalse(os.path.exists(path + ".tmp"))


class MeanAndStderrTest(unittest.TestCase):
    def test_single_sample_has_no_error(self):
        self.assertEqual(util.mean_and_stderr([3.0]), (3.0, 0.0))

    def test_empty_is_nan(self):
        mean, stderr = util.mean_and_stderr([])
        self.assertTrue(math.isnan(mean))
        self.assertTrue(math.isnan(stderr))

    def test_stderr(self):
        mean, stderr = util.mean_and_stderr([1.0, 2.0, 3.0, 4.0])
        self.assertAlmostEqual(mean, 2.5)
        # sample std is sqrt(5/3), divided by sqrt(4)
        self.assertAlmostEqual(stderr, math.sqrt(5.0 / 3.0) / 2.0)


class FileTest(unittest.TestCase):
    def test_read_missing_file(self):
        with self.assertRaises(CLError) as context:
            util.read_text("/nonexistent/scenario.json")
        self.assertEqual(context.exception.err_key, "FAILED_TO_READ_FILE")

    def test_ensure_dir_rejects_file(self):
        with tempfile.NamedTemporaryFile() as fh:
            with self.assertRaises(CLError) as context:
                util.ensure_dir(fh.name)
            self.assertEqual(context.exception.err_key, "OUT_DIR_NOT_DIR")

    def test_ensure_dir_creates_nested(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "a", "b")
            self.assertEqual(util.ensure_dir(path), path)
            self.assertTrue(os.path.isdir(path))

    def test_dump_json_is_sorted(self):
        self.assertEqual(util.dump_json({"b": 1, "a": 2}), '{\n  "a": 2,\n  "b": 1\n}\n')


class ReadableSecondsTest(unittest.TestCase):
    def test_units(self):
        self.assertEqual(util.readable_seconds(0.25), "250ms")
        self.assertEqual(util.readable_seconds(3.5), "3.50s")
        self.assertEqual(util.readable_seconds(300), "5.0min")
