#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

from typing import TypedDict


class ErrorDescriptor(TypedDict):
    code: int
    desc: str
    retryable: bool
    internal: bool


class CLError(Exception):
    ERR_MAPPING: dict[str, ErrorDescriptor] = {
        # Input and scenario errors
        "FAILED_TO_READ_FILE": {
            "code": 100,
            "desc": "Failed to read file: {filepath}",
            "retryable": False,
            "internal": False,
        },
        "SCENARIO_PARSE_ERROR": {
            "code": 101,
            "desc": "Failed to parse scenario at {locus}: {reason}",
            "retryable": False,
            "internal": False,
        },
        "INVALID_SCENARIO": {
            "code": 102,
            "desc": "Scenario failed validation: {violations}",
            "retryable": False,
            "internal": False,
        },
        "GRID_TOO_SMALL": {
            "code": 103,
            "desc": "Grid side must be at least {min_side}, got {n}",
            "retryable": False,
            "internal": False,
        },
        "EMPTY_FORMULA": {
            "code": 104,
            "desc": "CNF formula has no clauses",
            "retryable": False,
            "internal": False,
        },
        "INVALID_CNF": {
            "code": 105,
            "desc": "Invalid CNF input: {reason}",
            "retryable": False,
            "internal": False,
        },
        "UNCOVERED_ELEMENT": {
            "code": 106,
            "desc": "Universe element {element} is not covered by any set",
            "retryable": False,
            "internal": False,
        },
        "INVALID_SET_SYSTEM": {
            "code": 107,
            "desc": "Invalid set system: {reason}",
            "retryable": False,
            "internal": False,
        },
        "OUT_DIR_NOT_DIR": {
            "code": 108,
            "desc": '--out-dir "{dir}" is not a directory',
            "retryable": False,
            "internal": False,
        },
        "ARGUMENT_ERROR": {
            "code": 109,
            "desc": "Invalid argument {name}: {reason}",
            "retryable": False,
            "internal": False,
        },
        "STRATEGY_PARSE_ERROR": {
            "code": 110,
            "desc": "Failed to read strategy file {filepath}: {reason}",
            "retryable": False,
            "internal": False,
        },
        # Layered graph and plan errors
        "EDGE_CONNECTOR_MISMATCH": {
            "code": 200,
            "desc": "Layered edge {edge} does not belong to connector {connector}",
            "retryable": False,
            "internal": True,
        },
        "ENUMERATION_CAP_EXCEEDED": {
            "code": 201,
            "desc": "Enumerating {what} would produce {count} plans, over cap {cap} "
            "({detail})",
            "retryable": False,
            "internal": False,
        },
        "INVALID_STRATEGY": {
            "code": 202,
            "desc": "Invalid mixed strategy: {reason}",
            "retryable": False,
            "internal": False,
        },
        "INFEASIBLE_PLAN": {
            "code": 203,
            "desc": "Plan {plan} is not feasible in this scenario: {reason}",
            "retryable": False,
            "internal": False,
        },
        "EMPTY_MATRIX": {
            "code": 204,
            "desc": "Payoff matrix is empty: {what}",
            "retryable": False,
            "internal": True,
        },
        # Solver errors
        "UNKNOWN_BACKEND": {
            "code": 300,
            "desc": "{backend} is not a supported solver backend, choose from {choices}",
            "retryable": False,
            "internal": False,
        },
        "BACKEND_UNAVAILABLE": {
            "code": 301,
            "desc": "Solver backend {backend} cannot be loaded: {errmsg}",
            "retryable": False,
            "internal": False,
        },
        "INVALID_MODEL": {
            "code": 302,
            "desc": "Model {model} is malformed: {reason}",
            "retryable": False,
            "internal": True,
        },
        "SOLVER_ERROR": {
            "code": 303,
            "desc": "Solver failed on model {model} with status {status}: {errmsg}",
            "retryable": True,
            "internal": True,
        },
        "MODEL_INFEASIBLE": {
            "code": 304,
            "desc": "Model {model} is infeasible, which should never happen for "
            "a well-formed scenario",
            "retryable": False,
            "internal": True,
        },
        "HEURISTIC_INFEASIBLE": {
            "code": 305,
            "desc": "No {n_str} logistics plans reach payoff target {k} without Red",
            "retryable": False,
            "internal": False,
        },
    }

    def __init__(self, err_key: str, desc_kwargs=None):
        self.err_key = err_key
        if desc_kwargs:
            self.desc_kwargs = desc_kwargs
        else:
            self.desc_kwargs = {}
        self.err_entry = self.ERR_MAPPING[err_key]
        self._retryable: bool = self.err_entry["retryable"]

    @property
    def code(self) -> int:
        return self.err_entry["code"]

    @property
    def desc(self) -> str:
        description = self.err_entry["desc"].format(**self.desc_kwargs)
        return "{}: {}: {}".format(self.code, self.err_key, description)

    @property
    def retryable(self) -> bool:
        return self._retryable

    @property
    def internal(self) -> bool:
        return self.err_entry["internal"]

    def __str__(self) -> str:
        return self.desc
