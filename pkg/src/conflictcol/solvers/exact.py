"""Complete backtracking search for conflict colourings."""

from __future__ import annotations

import time

from conflictcol.model import ConflictInstance, validate_colouring
from conflictcol.solvers.result import SearchLimits, SolveResult, Status


class _OutOfBudget(Exception):
    pass


def solve_exact(inst: ConflictInstance, limits: SearchLimits | None = None) -> SolveResult:
    """Decide conflict colourability by backtracking.

    Vertices are visited in descending degree order (ties by id) and colours
    are tried in ascending order. Colouring ``u`` with ``x`` forbids, at every
    uncoloured neighbour ``v`` across an edge ``e`` with ``L_u(e) = x``, the
    colour ``L_v(e)``. A branch dies as soon as some uncoloured vertex has
    every colour forbidden.
    """
    limits = limits or SearchLimits()
    g = inst.graph
    k = inst.k
    n = g.n
    order = sorted(range(n), key=lambda v: (-g.degrees[v], v))

    # trigger[u][x]: neighbours v and the colour forbidden at v when u takes x
    trigger: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(n)]
    for (u, v), (a, b) in zip(g.edges, inst.pairs):
        trigger[u].setdefault(a, []).append((v, b))
        trigger[v].setdefault(b, []).append((u, a))

    # forbidden[v][x] counts active reasons; free[v] counts colours with no reason
    forbidden = [[0] * (k + 1) for _ in range(n)]
    free = [k] * n
    colour = [0] * n
    nodes = 0
    node_cap = limits.nodes
    deadline = time.monotonic() + limits.seconds if limits.seconds else None

    def assign(u: int, x: int) -> list[tuple[int, int]]:
        touched = []
        for v, y in trigger[u].get(x, ()):
            if colour[v]:
                continue
            row = forbidden[v]
            if row[y] == 0:
                free[v] -= 1
            row[y] += 1
            touched.append((v, y))
        return touched

    def undo(touched: list[tuple[int, int]]) -> None:
        for v, y in touched:
            row = forbidden[v]
            row[y] -= 1
            if row[y] == 0:
                free[v] += 1

    def search() -> bool:
        nonlocal nodes
        if n == 0:
            return True
        # next_colour[i]: first colour still to try at depth i
        next_colour = [1] * n
        trail: list[list[tuple[int, int]] | None] = [None] * n
        i = 0
        while i >= 0:
            u = order[i]
            if trail[i] is not None:
                undo(trail[i])
                trail[i] = None
                colour[u] = 0
            row = forbidden[u]
            x = next_colour[i]
            while x <= k and row[x]:
                x += 1
            if x > k:
                next_colour[i] = 1
                i -= 1
                continue
            next_colour[i] = x + 1
            nodes += 1
            if node_cap is not None and nodes > node_cap:
                raise _OutOfBudget
            if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
                raise _OutOfBudget
            colour[u] = x
            touched = assign(u, x)
            trail[i] = touched
            if all(free[v] for v, _ in touched):
                if i == n - 1:
                    return True
                i += 1
        return False

    start = time.perf_counter()
    try:
        found = search()
    except _OutOfBudget:
        return SolveResult(Status.EXHAUSTED, counters={"nodes": nodes},
                           detail="search budget exhausted before a decision")
    counters = {"nodes": nodes, "seconds": time.perf_counter() - start}
    if not found:
        return SolveResult(Status.UNSAT, counters=counters)
    result = tuple(colour)
    assert not validate_colouring(inst, result)
    return SolveResult(Status.SAT, result, counters)
