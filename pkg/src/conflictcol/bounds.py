"""Closed-form colour bounds.

Every upper bound is returned as a :class:`Bound` carrying the real value and
its ceiling; the average-degree lower bound carries its floor instead.
Logarithms are natural unless ``log_base`` is given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class Bound(NamedTuple):
    exact: float | Fraction
    value: int
    ref: str


@dataclass(frozen=True)
class BoundConstants:
    C1: float = 1.0
    C2: float = 1.0
    C3: float = 1.0
    C: float = 1.0

    def __post_init__(self):
        for name in ("C1", "C2", "C3", "C"):
            if not getattr(self, name) > 0:
                raise ValueError(f"constant {name} must be positive")


DEFAULT_CONSTANTS = BoundConstants()

# smallest edge count for which the adaptable edge bound is claimed
ADAPTABLE_EDGE_THRESHOLD = 2 ** 16


def _log(x: float, base: float | None) -> float:
    return math.log(x) if base is None else math.log(x, base)


def _ceil(x: float) -> int:
    # guard against 1e-15 overshoot on exact integers like 10 * 2 ** 0.25 ** 4
    r = round(x)
    if abs(x - r) < 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def _floor(x: float) -> int:
    r = round(x)
    if abs(x - r) < 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.floor(x)


def bound_max_degree(max_degree: int) -> Bound:
    """Colours sufficient for every multigraph of the given maximum degree."""
    if max_degree < 1:
        raise ValueError("maximum degree must be at least 1")
    x = math.e * (2 * max_degree - 1)
    r = math.isqrt(math.floor(x))
    # ceil(sqrt(x)) for irrational x: smallest integer whose square exceeds x
    while r * r <= x:
        r += 1
    while r > 1 and (r - 1) ** 2 > x:
        r -= 1
    return Bound(math.sqrt(x), r, "max-degree local lemma bound")


def lower_bound_avg_degree(avg_degree: float, log_base: float | None = None) -> Bound:
    """Colours some local partition of any multigraph of this average degree defeats."""
    if avg_degree < 3:
        raise ValueError("average degree must be at least 3")
    x = math.sqrt(avg_degree / _log(avg_degree, log_base))
    return Bound(x, _floor(x), "average-degree first-moment lower bound")


def bound_edges(m: int, mu: int, constants: BoundConstants = DEFAULT_CONSTANTS,
                log_base: float | None = None) -> Bound:
    if m < 3:
        raise ValueError("edge bound needs m >= 3")
    if mu < 1:
        raise ValueError("multiplicity must be at least 1")
    x = constants.C2 * (mu * m) ** 0.25 * _log(mu * m, log_base)
    return Bound(x, _ceil(x), "edge-count bound")


def bound_surface(g: int, mu: int, constants: BoundConstants = DEFAULT_CONSTANTS,
                  log_base: float | None = None) -> Bound:
    if g < 0:
        raise ValueError("Euler genus must be nonnegative")
    if mu < 1:
        raise ValueError("multiplicity must be at least 1")
    x = max(constants.C1 * math.sqrt(mu) * (g + 1) ** 0.25 * _log(mu * mu * (g + 2), log_base),
            8 * mu)
    return Bound(x, _ceil(x), "surface bound")


def bound_adaptable_edges(m: int, mu: int) -> Bound:
    """Adaptable choosability bound in terms of edges.

    Only claimed for ``m >= 2**16``; smaller ``m`` is evaluated anyway and the
    reference tag says so.
    """
    x = 2 ** (11 / 4) * math.sqrt(math.e) * (mu * m) ** 0.25
    ref = "adaptable edge bound"
    if m < ADAPTABLE_EDGE_THRESHOLD:
        ref += " (below m >= 2^16: not guaranteed)"
    return Bound(x, _ceil(x), ref)


def bound_adaptable_surface(g: int, mu: int, constants: BoundConstants = DEFAULT_CONSTANTS) -> Bound:
    if g < 0:
        raise ValueError("Euler genus must be nonnegative")
    x = constants.C3 * math.sqrt(mu) * (g + 1) ** 0.25
    return Bound(x, _ceil(x), "adaptable surface bound")


def heawood_number(g: int) -> int:
    return (7 + math.isqrt(24 * g + 1)) // 2


def heawood_orientation_bound(g: int, triangle_free: bool = False) -> Bound:
    """Orientation-based bound on surfaces: ``H_g / 2 + 1`` for ``g >= 1``.

    ``g = 0`` is answered by the planar constants, 4 (or 3 when triangle-free).
    The exact value is a Fraction; ``value`` is its floor, which is still a
    valid integer bound since choosability is an integer.
    """
    if g < 0:
        raise ValueError("Euler genus must be nonnegative")
    if g == 0:
        x = Fraction(3 if triangle_free else 4)
        return Bound(x, int(x), "planar orientation bound" + (" (triangle-free)" if triangle_free else ""))
    x = Fraction(heawood_number(g), 2) + 1
    return Bound(x, math.floor(x), "Heawood orientation bound")


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    slacks: tuple[float, float, float]


def _exp_ratio(power: float, d: float, shift: float) -> float:
    """``d**power / exp(sqrt(d) / shift)`` without overflow."""
    return math.exp(power * math.log(d) - math.sqrt(d) / shift)


def lll_feasibility_check(d: float) -> Feasibility:
    """Evaluate the three General Local Lemma conditions of the two-phase
    selection argument at degree scale ``d``.

    Slacks are right-hand minus left-hand side for the first two (both read
    ``1/2 <= rhs``) and right minus left for the third; all three must be
    nonnegative.
    """
    if d <= 0:
        raise ValueError("degree scale must be positive")
    s = math.sqrt(d)
    t1 = (-1 / 2 ** 7 - 1 / (2 ** 14 * d) - 1 / 2 ** 7 - 1 / (2 ** 14 * d)
          - 2 * _exp_ratio(2, d, 2 ** 6) - 4 * _exp_ratio(2, d, 2 ** 5))
    slack1 = math.exp(t1) - 0.5
    t2 = (-1 / 2 ** 6 - 1 / (2 ** 13 * d)
          - 4 * _exp_ratio(2, d, 2 ** 6) - 8 * _exp_ratio(2, d, 2 ** 5))
    slack2 = (1 - 1 / (2 ** 7 * d)) ** 2 * math.exp(t2) - 0.5
    lhs3 = -s / 2 ** 4 + s / 2 ** 6
    rhs3 = (-1 / 2 ** 7 - 1 / (2 ** 14 * d) - s / 2 ** 7 - 1 / (2 ** 14 * s)
            - 2 * _exp_ratio(1.5, d, 2 ** 6) - 4 * _exp_ratio(1.5, d, 2 ** 5))
    slack3 = rhs3 - lhs3
    slacks = (slack1, slack2, slack3)
    return Feasibility(all(x >= 0 for x in slacks), slacks)


FORMULAS = {
    "max-degree": (bound_max_degree, ("max_degree",)),
    "avg-degree": (lower_bound_avg_degree, ("avg_degree",)),
    "edges": (bound_edges, ("m", "mu")),
    "surface": (bound_surface, ("g", "mu")),
    "adaptable-edges": (bound_adaptable_edges, ("m", "mu")),
    "adaptable-surface": (bound_adaptable_surface, ("g", "mu")),
    "heawood": (heawood_orientation_bound, ("g",)),
}
