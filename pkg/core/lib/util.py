#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import csv
import io
import json
import logging
import os
import stat
from collections.abc import Iterable, Sequence

import numpy as np

from .error import CLError

log = logging.getLogger(__name__)


def is_file_readable(filepath):
    """
    Check if the file given is readable to the user we are currently running
    at
    """
    if not os.path.isfile(filepath):
        return False
    uid = os.getuid()
    euid = os.geteuid()
    gid = os.getgid()
    egid = os.getegid()

    # This is probably true most of the time, so just let os.access()
    # handle it.  Avoids potential bugs in the rest of this function.
    if uid == euid and gid == egid:
        return os.access(filepath, os.R_OK)

    st = os.stat(filepath)

    if st.st_uid == euid:
        return st.st_mode & stat.S_IRUSR != 0

    groups = os.getgroups()
    if st.st_gid == egid or st.st_gid in groups:
        return st.st_mode & stat.S_IRGRP != 0

    return st.st_mode & stat.S_IROTH != 0


def read_text(filepath: str) -> str:
    if not is_file_readable(filepath):
        raise CLError("FAILED_TO_READ_FILE", {"filepath": filepath})
    with open(filepath, "r", encoding="utf-8") as fh:
        return fh.read()


def ensure_dir(dirname: str) -> str:
    """
    Create the output directory if needed and make sure it is a directory
    """
    if os.path.exists(dirname) and not os.path.isdir(dirname):
        raise CLError("OUT_DIR_NOT_DIR", {"dir": dirname})
    os.makedirs(dirname, exist_ok=True)
    return dirname


def write_text(filepath: str, text: str) -> None:
    # Write to a sibling file first so readers never see half a file
    tmp_path = "{}.tmp".format(filepath)
    with open(tmp_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp_path, filepath)
    log.debug("Wrote {}".format(filepath))


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(filepath: str, data) -> None:
    write_text(filepath, dump_json(data))


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])
    return buf.getvalue()


def write_csv(filepath: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    write_text(filepath, csv_text(header, rows))


def format_cell(cell) -> str:
    """
    Render a CSV cell with dot-decimal floats and empty cells for NaN
    """
    if isinstance(cell, (float, np.floating)):
        if np.isnan(cell):
            return ""
        return repr(float(cell))
    if isinstance(cell, (np.integer,)):
        return str(int(cell))
    return str(cell)


def mean_and_stderr(samples: Sequence[float]) -> tuple[float, float]:
    """
    Mean and standard error of the mean. A single sample has zero error.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.size == 0:
        return float("nan"), float("nan")
    if arr.size == 1:
        return float(arr[0]), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / np.sqrt(arr.size))


def readable_seconds(seconds: float) -> str:
    if seconds < 1:
        return "{:.0f}ms".format(seconds * 1000)
    if seconds < 120:
        return "{:.2f}s".format(seconds)
    return "{:.1f}min".format(seconds / 60)
