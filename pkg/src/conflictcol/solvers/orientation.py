"""Minimum maximum-outdegree orientations and the colourings they certify."""

from __future__ import annotations

from collections import deque

from conflictcol.model import (
    ConflictInstance,
    Multigraph,
    colouring_from_orientation,
    validate_colouring,
)
from conflictcol.solvers.result import SolveResult, Status


def _try_target(g: Multigraph, head: list[int], outdeg: list[int], target: int) -> bool:
    """Reverse directed paths until every outdegree is at most ``target``.

    Works in place. Returns False when some overloaded vertex reaches no
    vertex of outdegree below ``target``; its reachable set then has more than
    ``target`` edges per vertex, so the target is infeasible.
    """
    edges = g.edges
    inc = g.incidence
    for s in range(g.n):
        while outdeg[s] > target:
            parent_edge = {s: -1}
            queue = deque([s])
            sink = -1
            while queue and sink < 0:
                x = queue.popleft()
                for e in inc[x]:
                    if head[e] == x:
                        continue
                    y = head[e]
                    if y in parent_edge:
                        continue
                    parent_edge[y] = e
                    if outdeg[y] < target:
                        sink = y
                        break
                    queue.append(y)
            if sink < 0:
                return False
            y = sink
            outdeg[y] += 1
            outdeg[s] -= 1
            while y != s:
                e = parent_edge[y]
                u, v = edges[e]
                x = u if y == v else v
                head[e] = x
                y = x
    return True


def solve_orientation(g: Multigraph) -> tuple[int, tuple[int, ...]]:
    """Orientation minimising the maximum outdegree.

    Returns ``(k_star, head)``. ``k_star`` equals the largest value of
    ``ceil(|E(S)| / |S|)`` over vertex subsets ``S``.
    """
    if g.m == 0:
        return 0, ()
    head = [max(u, v) for u, v in g.edges]
    outdeg = [0] * g.n
    for (u, v), h in zip(g.edges, head):
        outdeg[u if h == v else v] += 1
    lo = -(-g.m // g.n)
    hi = max(outdeg)
    best = list(head)
    # invariant: target hi is achievable and best realises it
    while lo < hi:
        mid = (lo + hi) // 2
        trial_head = list(best)
        trial_out = [0] * g.n
        for (u, v), h in zip(g.edges, trial_head):
            trial_out[u if h == v else v] += 1
        if _try_target(g, trial_head, trial_out, mid):
            best = trial_head
            hi = mid
        else:
            lo = mid + 1
    return hi, tuple(best)


def max_outdegree(g: Multigraph, head) -> int:
    out = [0] * g.n
    for (u, v), h in zip(g.edges, head):
        out[u if h == v else v] += 1
    return max(out, default=0)


def solve_via_orientation(inst: ConflictInstance) -> SolveResult:
    """Colour ``inst`` from an orientation of maximum outdegree below ``k``.

    With fewer than ``k`` out-edges no vertex can see every colour leaving
    it, so any such orientation is a conflict orientation. Reports
    NOT_APPLICABLE (never UNSAT) when the optimum outdegree is at least ``k``.
    """
    k_star, head = solve_orientation(inst.graph)
    counters = {"k_star": k_star}
    if k_star >= inst.k:
        return SolveResult(Status.NOT_APPLICABLE, counters=counters,
                           detail=f"minimum max-outdegree {k_star} is not below k={inst.k}")
    c = colouring_from_orientation(inst, head)
    assert not validate_colouring(inst, c)
    return SolveResult(Status.SAT, c, counters)
