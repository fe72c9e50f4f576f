#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Immutable data model of a Contested Logistics game instance.
"""

import dataclasses
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType


def _frozen_map(mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class PhysicalGraph:
    nodes: frozenset[str]
    edges: tuple[Edge, ...]
    _by_id: Mapping[str, Edge] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "_by_id", {e.id: e for e in self.edges})

    def edge(self, edge_id: str) -> Edge:
        return self._by_id[edge_id]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._by_id


@dataclass(frozen=True)
class Package:
    id: str
    unit_weight: float
    unit_volume: float


@dataclass(frozen=True)
class Connector:
    """
    A transport asset. traversal_time maps every allowed edge id to the
    number of timesteps the connector needs to cross it.
    """

    id: str
    initial_location: str
    weight_cap: float
    volume_cap: float
    traversal_time: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "traversal_time", _frozen_map(self.traversal_time))

    @property
    def allowed_edges(self) -> frozenset[str]:
        return frozenset(self.traversal_time)

    def __eq__(self, other):
        if not isinstance(other, Connector):
            return NotImplemented
        return (
            self.id == other.id
            and self.initial_location == other.initial_location
            and self.weight_cap == other.weight_cap
            and self.volume_cap == other.volume_cap
            and dict(self.traversal_time) == dict(other.traversal_time)
        )

    def __hash__(self):
        return hash((self.id, self.initial_location))


@dataclass(frozen=True)
class Warehouse:
    node: str
    supply: Mapping[str, float]
    demand: Mapping[str, float]
    unit_payoff: float
    max_units: float

    def __post_init__(self):
        object.__setattr__(self, "supply", _frozen_map(self.supply))
        object.__setattr__(self, "demand", _frozen_map(self.demand))

    @property
    def has_demand(self) -> bool:
        return any(d > 0 for d in self.demand.values())

    def positive_demand(self) -> dict[str, float]:
        return {p: d for p, d in self.demand.items() if d > 0}

    def __eq__(self, other):
        if not isinstance(other, Warehouse):
            return NotImplemented
        return (
            self.node == other.node
            and dict(self.supply) == dict(other.supply)
            and dict(self.demand) == dict(other.demand)
            and self.unit_payoff == other.unit_payoff
            and self.max_units == other.max_units
        )

    def __hash__(self):
        return hash(self.node)


@dataclass(frozen=True)
class InterdictionSpec:
    budget: float
    cost: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "cost", _frozen_map(self.cost))

    @property
    def interdictable(self) -> frozenset[str]:
        return frozenset(self.cost)

    def __eq__(self, other):
        if not isinstance(other, InterdictionSpec):
            return NotImplemented
        return self.budget == other.budget and dict(self.cost) == dict(other.cost)

    def __hash__(self):
        return hash(self.budget)


@dataclass(frozen=True)
class Scenario:
    graph: PhysicalGraph
    packages: tuple[Package, ...]
    connectors: tuple[Connector, ...]
    warehouses: tuple[Warehouse, ...]
    interdiction: InterdictionSpec
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "packages", tuple(self.packages))
        object.__setattr__(self, "connectors", tuple(self.connectors))
        object.__setattr__(self, "warehouses", tuple(self.warehouses))

    def edge(self, edge_id: str) -> Edge:
        return self.graph.edge(edge_id)

    def connector(self, connector_id: str) -> Connector:
        for c in self.connectors:
            if c.id == connector_id:
                return c
        raise KeyError(connector_id)

    def package(self, package_id: str) -> Package:
        for p in self.packages:
            if p.id == package_id:
                return p
        raise KeyError(package_id)

    def warehouse_at(self, node: str):
        for w in self.warehouses:
            if w.node == node:
                return w
        return None

    @property
    def warehouse_nodes(self) -> frozenset[str]:
        return frozenset(w.node for w in self.warehouses)

    @property
    def demand_warehouses(self) -> tuple[Warehouse, ...]:
        return tuple(w for w in self.warehouses if w.has_demand)

    @property
    def budget(self) -> float:
        return self.interdiction.budget

    def total_supply(self, package_id: str) -> float:
        return sum(w.supply.get(package_id, 0.0) for w in self.warehouses)

    def max_payoff(self) -> float:
        """
        Upper bound of every utility: all demand satisfied up to the caps
        """
        return sum(w.unit_payoff * w.max_units for w in self.demand_warehouses)

    def penalty_constant(self) -> float:
        """
        Penalty charged per unit of load moved on or after an interdicted
        step. One unit of a package raises a Leontief ratio by at most 1/D,
        so the penalty must be at least max P(w) / min D(w, p).
        """
        payoffs = [w.unit_payoff for w in self.demand_warehouses]
        if not payoffs:
            return 1.0
        demands = [
            d for w in self.demand_warehouses for d in w.positive_demand().values()
        ]
        return max(payoffs) / min(1.0, min(demands))

    def with_budget(self, budget: float) -> "Scenario":
        return dataclasses.replace(
            self,
            interdiction=InterdictionSpec(budget=budget, cost=self.interdiction.cost),
        )

    def with_horizon(self, horizon: int) -> "Scenario":
        return dataclasses.replace(self, horizon=horizon)
