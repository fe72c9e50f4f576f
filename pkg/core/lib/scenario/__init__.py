#!/usr/bin/env python3
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

from .generators import (
    edge_id,
    generate_grid_world,
    generate_sat_gadget,
    generate_set_cover_gadget,
    grid_node,
)
from .io import (
    load_scenario,
    load_scenario_file,
    save_scenario,
    save_scenario_file,
    scenario_from_dict,
    scenario_to_dict,
)
from .models import (
    Connector,
    Edge,
    InterdictionSpec,
    Package,
    PhysicalGraph,
    Scenario,
    Warehouse,
)
from .validation import validate_scenario

__all__ = [
    "Connector",
    "Edge",
    "edge_id",
    "generate_grid_world",
    "generate_sat_gadget",
    "generate_set_cover_gadget",
    "grid_node",
    "InterdictionSpec",
    "load_scenario",
    "load_scenario_file",
    "Package",
    "PhysicalGraph",
    "save_scenario",
    "save_scenario_file",
    "Scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "validate_scenario",
    "Warehouse",
]
