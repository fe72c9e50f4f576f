#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

from .blue import blue_best_response, build_blue_model
from .formulation import BlueFormulation, load_bounds, Replica
from .red import build_red_model, RecourseInnerLP, red_best_response
from .strategy import (
    BestResponseResult,
    blue_strategy_from_json,
    MixedStrategy,
    red_strategy_from_json,
)

__all__ = [
    "BestResponseResult",
    "blue_best_response",
    "blue_strategy_from_json",
    "BlueFormulation",
    "build_blue_model",
    "build_red_model",
    "load_bounds",
    "MixedStrategy",
    "RecourseInnerLP",
    "red_best_response",
    "red_strategy_from_json",
    "Replica",
]
