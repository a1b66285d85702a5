"""Temporal-logic subgoal policies: STL monitoring, decomposition, training."""

from ._core import (
    Formula,
    Scene,
    TaskSet,
    TgpoError,
    decompose,
    evaluate,
    format,
    ground,
    parse,
    robustness,
    sample_assignment,
    satisfies,
    train,
)

__all__ = [
    "Formula",
    "Scene",
    "TaskSet",
    "TgpoError",
    "decompose",
    "evaluate",
    "format",
    "ground",
    "parse",
    "robustness",
    "sample_assignment",
    "satisfies",
    "train",
]
