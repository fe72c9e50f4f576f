#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

# Double oracle
DEFAULT_EPSILON = 1e-2
DEFAULT_BR_TIME_LIMIT = 5  # seconds for a time-limited Blue best response
DEFAULT_EXACT_EVERY = 10  # solve Blue's BR to completion every N iterations
DEFAULT_MAX_ITERATIONS = 500

# Solver tolerances
DEFAULT_MIP_GAP = 1e-6
LP_TOLERANCE = 1e-8
PROBABILITY_TOLERANCE = 1e-9
BUDGET_TOLERANCE = 1e-9
# f and y are binaries, anything above this is read as 1
BINARY_THRESHOLD = 0.5

# Solver backends
BACKEND_ENV_VAR = "CL_MILP_BACKEND"
DEFAULT_BACKEND = "highs"
SUPPORTED_BACKENDS = ("highs", "cbc")
# HiGHS MIP presolve has returned wrong optima on best-response models
HIGHS_MIP_PRESOLVE = False
# incumbent Blue plans above the fresh response by more than this win
BR_SHORTFALL_TOLERANCE = 1e-6

# Brute-force enumeration
DEFAULT_ENUMERATION_CAP = 200000

# Grid world generator
GRID_MIN_SIDE = 3
DEFAULT_EDGE_DROP_PROB = 0.1
RANDOM_COST_RANGE = (1, 5)
DEMAND_PAYOFF_RANGE = (1.0, 2.0)
GRID_PACKAGES = ("A", "B")
GRID_CORNER_SUPPLY = {"A": 4.0, "B": 1.0}
GRID_OPPOSITE_CORNER_SUPPLY = {"A": 1.0, "B": 3.0}
GRID_CENTER_SUPPLY = {"A": 1.0, "B": 1.0}
GRID_DEMAND = {"A": 3.0, "B": 2.0}

# Hardness gadgets
SAT_EDGE_COST = 2.0
SAT_TERMINAL_LOOP_COST = 1.0
SAT_PACKAGE = "P"
SET_COVER_PACKAGE = "P"

# Experiments
DEFAULT_SWEEP_SEEDS = 20
DEFAULT_HEURISTIC_TIME_LIMIT = 60

# Output files
RESULT_FILE = "result.json"
TRACE_FILE = "trace.csv"
STRATEGIES_FILE = "strategies.json"
HEATMAP_FILE = "heatmap.csv"
RUNTIMES_FILE = "runtimes.csv"
REPORT_FILE = "report.json"
ROBUSTNESS_FILE = "robustness.csv"
HEURISTIC_FILE = "heuristic.csv"
MODEL_DUMP_PATTERN = "iter{iteration:04d}_{player}.lp"

# Exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ITERATION_CAP = 2
