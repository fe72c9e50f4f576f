#!/usr/bin/env python3

# pyre-ignore-all-errors
"""
Copyright (c) 2017-present, Facebook, Inc.
All rights reserved.

This source code is licensed under the BSD-style license found in the
LICENSE file in the root directory of this source tree.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .. import constant
from ..error import CLError
from ..layered import InterdictionPlan, LogisticsPlan

log = logging.getLogger(__name__)


class MixedStrategy:
    """
    Probability distribution over distinct pure plans
    """

    def __init__(self, support: Sequence[Any], probabilities: Sequence[float]):
        if len(support) != len(probabilities):
            raise CLError(
                "INVALID_STRATEGY",
                {"reason": "support and probabilities differ in length"},
            )
        if not support:
            raise CLError("INVALID_STRATEGY", {"reason": "empty support"})
        if len(set(support)) != len(support):
            raise CLError("INVALID_STRATEGY", {"reason": "duplicate support entries"})
        probs = np.asarray(probabilities, dtype=float)
        if np.any(probs < -constant.PROBABILITY_TOLERANCE):
            raise CLError("INVALID_STRATEGY", {"reason": "negative probability"})
        if abs(probs.sum() - 1.0) > constant.PROBABILITY_TOLERANCE:
            raise CLError(
                "INVALID_STRATEGY",
                {"reason": "probabilities sum to {!r}".format(float(probs.sum()))},
            )
        self.support = list(support)
        self.probabilities = [max(0.0, float(p)) for p in probs]

    @classmethod
    def pure(cls, plan) -> "MixedStrategy":
        return cls([plan], [1.0])

    @classmethod
    def normalized(cls, support: Iterable[Any], weights: Iterable[float], drop_below: float = 0.0) -> "MixedStrategy":
        """
        Merge duplicate plans, drop weights at or below drop_below and
        rescale the rest onto the simplex
        """
        merged = {}
        for plan, weight in zip(support, weights):
            merged[plan] = merged.get(plan, 0.0) + max(0.0, float(weight))
        kept = [(plan, w) for plan, w in merged.items() if w > drop_below]
        if not kept:
            raise CLError("INVALID_STRATEGY", {"reason": "all weights vanish"})
        total = sum(w for _, w in kept)
        return cls([plan for plan, _ in kept], [w / total for _, w in kept])

    @classmethod
    def uniform(cls, plans: Iterable[Any]) -> "MixedStrategy":
        plans = list(plans)
        return cls.normalized(plans, [1.0] * len(plans))

    def items(self):
        return zip(self.support, self.probabilities)

    def __len__(self):
        return len(self.support)

    def __iter__(self):
        return iter(self.support)

    def probability(self, plan) -> float:
        for candidate, prob in self.items():
            if candidate == plan:
                return prob
        return 0.0

    def active(self, tol: float = constant.PROBABILITY_TOLERANCE) -> list[tuple[Any, float]]:
        return [(plan, prob) for plan, prob in self.items() if prob > tol]

    def expected(self, func: Callable[[Any], float]) -> float:
        return float(sum(prob * func(plan) for plan, prob in self.items()))

    def to_json(self) -> dict:
        return {
            "support": [plan.to_json() for plan in self.support],
            "probabilities": list(self.probabilities),
        }

    @classmethod
    def from_json(cls, doc, plan_type) -> "MixedStrategy":
        return cls(
            [plan_type.from_json(item) for item in doc["support"]],
            [float(p) for p in doc["probabilities"]],
        )

    def __eq__(self, other):
        if not isinstance(other, MixedStrategy):
            return NotImplemented
        return dict(self.items()) == dict(other.items())

    def __repr__(self):
        return "MixedStrategy({})".format(
            ", ".join(
                "{}: {:.4f}".format(getattr(plan, "ident", plan), prob)
                for plan, prob in self.items()
            )
        )


def blue_strategy_from_json(doc) -> MixedStrategy:
    return MixedStrategy.from_json(doc, LogisticsPlan)


def red_strategy_from_json(doc) -> MixedStrategy:
    return MixedStrategy.from_json(doc, InterdictionPlan)


@dataclass
class BestResponseResult:
    plan: Any
    value: float
    bound: float
    optimal: bool
    wall_time: float = 0.0
    model: Any = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "plan": self.plan.to_json(),
            "value": self.value,
            "bound": self.bound,
            "optimal": self.optimal,
            "wall_time": self.wall_time,
        }
