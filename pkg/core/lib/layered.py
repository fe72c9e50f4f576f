#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.

Connector-specific time-expanded graphs and the pure strategies built on
them. A layered node is a (physical node, timestep) pair; a layered edge is a
Step that moves a connector along one physical edge.
"""

import collections
import hashlib
import itertools
import json
import logging
import math
from collections.abc import Iterable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from . import constant
from .error import CLError
from .scenario.models import Connector, Scenario

log = logging.getLogger(__name__)

State = tuple[str, int]


@dataclass(frozen=True, order=True)
class Step:
    edge_id: str
    tail: str
    head: str
    depart: int
    arrive: int

    @property
    def tail_state(self) -> State:
        return (self.tail, self.depart)

    @property
    def head_state(self) -> State:
        return (self.head, self.arrive)

    def to_json(self) -> list:
        return [self.edge_id, self.tail, self.head, self.depart, self.arrive]

    @classmethod
    def from_json(cls, item) -> "Step":
        edge_id, tail, head, depart, arrive = item
        return cls(str(edge_id), str(tail), str(head), int(depart), int(arrive))

    def __str__(self):
        return "{}@{}->{}@{}".format(self.tail, self.depart, self.head, self.arrive)


def _digest(payload) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha1(text.encode("utf-8")).hexdigest()[:12]


Routes = tuple[tuple[str, tuple[Step, ...]], ...]


@dataclass(frozen=True)
class LogisticsPlan:
    """
    Blue pure strategy: one root-to-horizon path per connector, in scenario
    connector order.
    """

    routes: Routes

    def route(self, connector_id: str) -> tuple[Step, ...]:
        for cid, steps in self.routes:
            if cid == connector_id:
                return steps
        raise KeyError(connector_id)

    @property
    def connector_ids(self) -> tuple[str, ...]:
        return tuple(cid for cid, _ in self.routes)

    def physical_edges(self) -> frozenset[str]:
        return frozenset(step.edge_id for _, steps in self.routes for step in steps)

    @cached_property
    def ident(self) -> str:
        return _digest(self.routes_json())

    def routes_json(self) -> dict:
        return {cid: [s.to_json() for s in steps] for cid, steps in self.routes}

    def to_json(self) -> dict:
        return {"id": self.ident, "routes": self.routes_json()}

    @classmethod
    def from_json(cls, doc) -> "LogisticsPlan":
        routes = doc["routes"]
        return cls(
            tuple(
                (str(cid), tuple(Step.from_json(item) for item in steps))
                for cid, steps in routes.items()
            )
        )

    def describe(self) -> str:
        parts = []
        for cid, steps in self.routes:
            if steps:
                path = [steps[0].tail] + [s.head for s in steps]
            else:
                path = []
            parts.append("{}: {}".format(cid, " ".join(path)))
        return "; ".join(parts)


@dataclass(frozen=True)
class TruncatedPlan:
    """
    A logistics plan after interdiction: every destroyed connector's route
    ends with the step on which it was destroyed.
    """

    routes: Routes
    destroyed: frozenset[str]

    def route(self, connector_id: str) -> tuple[Step, ...]:
        for cid, steps in self.routes:
            if cid == connector_id:
                return steps
        raise KeyError(connector_id)


@dataclass(frozen=True)
class InterdictionPlan:
    """
    Red pure strategy: a budget-feasible set of physical edges
    """

    edges: frozenset[str]
    cost: float = 0.0

    @classmethod
    def empty(cls) -> "InterdictionPlan":
        return cls(frozenset(), 0.0)

    @classmethod
    def from_edges(cls, scenario: Scenario, edges: Iterable[str]) -> "InterdictionPlan":
        edge_set = frozenset(edges)
        costs = scenario.interdiction.cost
        return cls(edge_set, float(sum(costs[e] for e in edge_set)))

    @property
    def ident(self) -> str:
        if not self.edges:
            return "none"
        return "+".join(sorted(self.edges))

    def to_json(self) -> dict:
        return {"id": self.ident, "edges": sorted(self.edges), "cost": self.cost}

    @classmethod
    def from_json(cls, doc) -> "InterdictionPlan":
        return cls(frozenset(str(e) for e in doc["edges"]), float(doc.get("cost", 0.0)))

    def is_feasible(self, scenario: Scenario) -> bool:
        costs = scenario.interdiction.cost
        if any(e not in costs for e in self.edges):
            return False
        total = sum(costs[e] for e in self.edges)
        return total <= scenario.interdiction.budget + constant.BUDGET_TOLERANCE


def _state_key(state: State):
    node, t = state
    return (t, node)


class LayeredGraph:
    """
    Time-expanded DAG of one connector. Only states reachable from
    (o(c), 0) are materialized.
    """

    def __init__(self, connector_id: str, horizon: int, root: State, graph: nx.MultiDiGraph):
        self.connector_id = connector_id
        self.horizon = horizon
        self.root = root
        self._graph = graph
        self.nodes: list[State] = list(
            nx.lexicographical_topological_sort(graph, key=_state_key)
        )
        self._index = {state: i for i, state in enumerate(self.nodes)}
        self.steps: list[Step] = [
            data["step"] for _, _, data in graph.edges(data=True)
        ]
        self._step_set = frozenset(self.steps)
        self._reach = self._build_reach_index()

    def _build_reach_index(self) -> dict[State, int]:
        # Forward reachability bitsets, filled in reverse topological order
        reach = {}
        for state in reversed(self.nodes):
            bits = 1 << self._index[state]
            for _, head in self._graph.out_edges(state):
                bits |= reach[head]
            reach[state] = bits
        return reach

    @property
    def graph(self) -> nx.MultiDiGraph:
        return self._graph

    def size(self) -> tuple[int, int]:
        return (len(self.nodes), len(self.steps))

    def out_steps(self, state: State) -> list[Step]:
        if state not in self._index:
            return []
        return [data["step"] for _, _, data in self._graph.out_edges(state, data=True)]

    def in_steps(self, state: State) -> list[Step]:
        if state not in self._index:
            return []
        return [data["step"] for _, _, data in self._graph.in_edges(state, data=True)]

    def contains(self, step: Step) -> bool:
        return step in self._step_set

    def state_reaches(self, src: State, dst: State) -> bool:
        if src not in self._reach or dst not in self._index:
            return False
        return bool(self._reach[src] >> self._index[dst] & 1)

    def reachable_between(self, e: Step, e2: Step) -> bool:
        """
        True iff e2 can follow e on some path of this connector, i.e. the
        head of e reaches the tail of e2. An edge never reaches itself.
        """
        for step in (e, e2):
            if not self.contains(step):
                raise CLError(
                    "EDGE_CONNECTOR_MISMATCH",
                    {"edge": str(step), "connector": self.connector_id},
                )
        if e == e2:
            return False
        return self.state_reaches(e.head_state, e2.tail_state)

    def path_count(self) -> int:
        """
        Number of root-to-horizon paths, by dynamic programming on the DAG
        """
        count = {}
        for state in reversed(self.nodes):
            if state[1] == self.horizon:
                count[state] = 1
            else:
                count[state] = sum(count[s.head_state] for s in self.out_steps(state))
        return count.get(self.root, 0)

    def paths(self) -> Iterator[tuple[Step, ...]]:
        """
        Depth-first enumeration of all root-to-horizon paths
        """
        stack = [(self.root, ())]
        while stack:
            state, prefix = stack.pop()
            if state[1] == self.horizon:
                yield prefix
                continue
            for step in reversed(self.out_steps(state)):
                stack.append((step.head_state, prefix + (step,)))

    def check_path(self, steps: tuple[Step, ...]) -> str | None:
        """
        Return why `steps` is not a root-to-horizon path, or None if it is
        """
        state = self.root
        for step in steps:
            if not self.contains(step):
                return "step {} is not an edge of connector {}".format(
                    step, self.connector_id
                )
            if step.tail_state != state:
                return "step {} does not continue from {}".format(step, state)
            state = step.head_state
        if state[1] != self.horizon:
            return "route of connector {} ends at t={} instead of {}".format(
                self.connector_id, state[1], self.horizon
            )
        return None

    def to_dot(self) -> str:
        lines = ['digraph "{}" {{'.format(self.connector_id), "  rankdir=LR;"]
        for node, t in self.nodes:
            lines.append('  "{n}@{t}" [label="{n}\\nt={t}"];'.format(n=node, t=t))
        for step in self.steps:
            lines.append(
                '  "{}@{}" -> "{}@{}" [label="{}"];'.format(
                    step.tail, step.depart, step.head, step.arrive, step.edge_id
                )
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def unroll(scenario: Scenario, connector: Connector | str) -> LayeredGraph:
    """
    Breadth-first unrolling of one connector from (o(c), 0). A layered edge
    (v, t) -> (v', t + M(c, e)) exists iff e = (v, v') is allowed for the
    connector and t + M(c, e) <= T.
    """
    if isinstance(connector, str):
        connector = scenario.connector(connector)
    horizon = scenario.horizon
    out_edges = collections.defaultdict(list)
    for edge_id, steps in connector.traversal_time.items():
        edge = scenario.edge(edge_id)
        out_edges[edge.tail].append((edge, int(steps)))

    root = (connector.initial_location, 0)
    graph = nx.MultiDiGraph()
    graph.add_node(root)
    queue = collections.deque([root])
    while queue:
        node, t = queue.popleft()
        for edge, steps in out_edges[node]:
            arrive = t + steps
            if arrive > horizon:
                continue
            head = (edge.head, arrive)
            if head not in graph:
                graph.add_node(head)
                queue.append(head)
            step = Step(edge.id, edge.tail, edge.head, t, arrive)
            graph.add_edge((node, t), head, key=edge.id, step=step)

    layered = LayeredGraph(connector.id, horizon, root, graph)
    num_nodes, num_edges = layered.size()
    log.debug(
        "Unrolled connector {} over T={}: {} nodes, {} edges".format(
            connector.id, horizon, num_nodes, num_edges
        )
    )
    return layered


def unroll_all(scenario: Scenario, threads: int | None = None) -> dict[str, LayeredGraph]:
    """
    Unroll every connector, concurrently when threads allow it
    """
    connectors = list(scenario.connectors)
    workers = max(1, min(threads or len(connectors) or 1, len(connectors) or 1))
    if workers == 1:
        graphs = [unroll(scenario, c) for c in connectors]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            graphs = list(executor.map(lambda c: unroll(scenario, c), connectors))
    return {c.id: g for c, g in zip(connectors, graphs)}


def truncate_plan(plan: LogisticsPlan | TruncatedPlan, interdiction: InterdictionPlan) -> TruncatedPlan:
    """
    Cut every route at its first interdicted step. The connector is
    destroyed on that step together with its load.
    """
    destroyed = set(getattr(plan, "destroyed", frozenset()))
    routes = []
    for cid, steps in plan.routes:
        for k, step in enumerate(steps):
            if step.edge_id in interdiction.edges:
                routes.append((cid, steps[: k + 1]))
                destroyed.add(cid)
                break
        else:
            routes.append((cid, steps))
    return TruncatedPlan(tuple(routes), frozenset(destroyed))


def validate_plan(plan: LogisticsPlan, layered: dict[str, LayeredGraph]) -> None:
    if set(plan.connector_ids) != set(layered):
        raise CLError(
            "INFEASIBLE_PLAN",
            {
                "plan": plan.ident,
                "reason": "routes for {} but connectors are {}".format(
                    sorted(plan.connector_ids), sorted(layered)
                ),
            },
        )
    for cid, steps in plan.routes:
        reason = layered[cid].check_path(steps)
        if reason:
            raise CLError("INFEASIBLE_PLAN", {"plan": plan.ident, "reason": reason})


def enumerate_logistics_plans(
    scenario: Scenario,
    cap: int = constant.DEFAULT_ENUMERATION_CAP,
    layered: dict[str, LayeredGraph] | None = None,
) -> list[LogisticsPlan]:
    """
    Cartesian product of every connector's root-to-horizon paths
    """
    if layered is None:
        layered = unroll_all(scenario)
    counts = {cid: g.path_count() for cid, g in layered.items()}
    total = 1
    for count in counts.values():
        total *= count
    if total > cap:
        raise CLError(
            "ENUMERATION_CAP_EXCEEDED",
            {
                "what": "logistics plans",
                "count": total,
                "cap": cap,
                "detail": ", ".join(
                    "{}={}".format(cid, count) for cid, count in counts.items()
                ),
            },
        )
    order = [c.id for c in scenario.connectors]
    per_connector = [list(layered[cid].paths()) for cid in order]
    plans = [
        LogisticsPlan(tuple(zip(order, combo)))
        for combo in itertools.product(*per_connector)
    ]
    log.debug("Enumerated {} logistics plans".format(len(plans)))
    return plans


def enumerate_interdiction_plans(
    scenario: Scenario,
    cap: int = constant.DEFAULT_ENUMERATION_CAP,
    include_all: bool = False,
) -> list[InterdictionPlan]:
    """
    All maximal budget-feasible edge sets plus the empty set. Non-maximal
    sets are dominated for Red, include_all lists them anyway.
    """
    budget = scenario.interdiction.budget + constant.BUDGET_TOLERANCE
    costs = scenario.interdiction.cost
    candidates = sorted(e for e, c in costs.items() if c <= budget)
    # cost of candidates[i:]
    suffix = list(itertools.accumulate(costs[e] for e in reversed(candidates)))[::-1]
    suffix.append(0.0)
    found = []

    def is_maximal(chosen, spent):
        taken = set(chosen)
        return all(e in taken or spent + costs[e] > budget for e in candidates)

    def out_of_reach(start, spent, cheapest_skipped):
        # a skipped edge stays affordable whatever is added from candidates[start:]
        return not include_all and spent + suffix[start] <= budget - cheapest_skipped

    def visit(start, chosen, spent, cheapest_skipped):
        if out_of_reach(start, spent, cheapest_skipped):
            return
        if include_all or is_maximal(chosen, spent):
            found.append(frozenset(chosen))
            if len(found) > cap + 1:
                raise CLError(
                    "ENUMERATION_CAP_EXCEEDED",
                    {
                        "what": "interdiction plans",
                        "count": "more than {}".format(cap),
                        "cap": cap,
                        "detail": "{} candidate edges, budget {}".format(
                            len(candidates), scenario.interdiction.budget
                        ),
                    },
                )
        for i in range(start, len(candidates)):
            edge = candidates[i]
            if spent + costs[edge] <= budget:
                chosen.append(edge)
                visit(i + 1, chosen, spent + costs[edge], cheapest_skipped)
                chosen.pop()
            cheapest_skipped = min(cheapest_skipped, costs[edge])
            if out_of_reach(i + 1, spent, cheapest_skipped):
                break

    visit(0, [], 0.0, math.inf)
    if frozenset() not in found:
        found.insert(0, frozenset())
    if len(found) > cap:
        raise CLError(
            "ENUMERATION_CAP_EXCEEDED",
            {
                "what": "interdiction plans",
                "count": len(found),
                "cap": cap,
                "detail": "{} candidate edges".format(len(candidates)),
            },
        )
    plans = [InterdictionPlan.from_edges(scenario, edges) for edges in found]
    log.debug("Enumerated {} interdiction plans".format(len(plans)))
    return plans
