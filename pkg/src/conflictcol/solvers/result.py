from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    # search budget ran out before the exact solver could decide
    EXHAUSTED = "budget-exhausted"
    # randomized solver hit its resampling cap; never means unsatisfiable
    CAP_EXHAUSTED = "cap-exhausted"
    NOT_APPLICABLE = "not-applicable"
    FAILURE = "failure"


@dataclass(frozen=True)
class SearchLimits:
    nodes: int | None = None
    seconds: float | None = None

    def __post_init__(self):
        if self.nodes is not None and self.nodes <= 0:
            raise ValueError("node budget must be positive")
        if self.seconds is not None and self.seconds <= 0:
            raise ValueError("time budget must be positive")


@dataclass
class SolveResult:
    status: Status
    colouring: tuple[int, ...] | None = None
    counters: dict[str, Any] = field(default_factory=dict)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is Status.SAT
