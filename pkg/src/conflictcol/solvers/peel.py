"""Minimum-degree peeling and greedy re-insertion.

A vertex with fewer than ``k`` incident edges into the already coloured part
always has a free colour: each such edge forbids at most one colour.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from conflictcol.model import ConflictInstance, InstanceError, validate_colouring


@dataclass(frozen=True)
class PeelTrace:
    # (vertex, edges to not-yet-removed vertices at removal time), in removal order
    removed: tuple[tuple[int, tuple[int, ...]], ...]
    # original ids of the core's vertices, core vertex i -> core_vertices[i]
    core_vertices: tuple[int, ...]


def kernelize(inst: ConflictInstance) -> tuple[ConflictInstance, PeelTrace]:
    """Repeatedly delete the lowest-id vertex of current degree below ``k``.

    Returns the core (renumbered, minimum degree at least ``k`` or empty) and
    the removal trace.
    """
    g = inst.graph
    k = inst.k
    deg = list(g.degrees)
    alive = [True] * g.n
    heap = [v for v in range(g.n) if deg[v] < k]
    heapq.heapify(heap)
    queued = set(heap)
    removed = []
    while heap:
        v = heapq.heappop(heap)
        alive[v] = False
        live_edges = tuple(e for e in g.incidence[v] if alive[g.other(e, v)])
        removed.append((v, live_edges))
        for e in live_edges:
            w = g.other(e, v)
            deg[w] -= 1
            if deg[w] < k and w not in queued:
                queued.add(w)
                heapq.heappush(heap, w)
    core_vertices = tuple(v for v in range(g.n) if alive[v])
    core_graph, _, emap = g.induced(core_vertices)
    core = ConflictInstance(core_graph, k, tuple(inst.pairs[e] for e in emap))
    return core, PeelTrace(tuple(removed), core_vertices)


def extend_peeled(core_colouring, trace: PeelTrace, inst: ConflictInstance) -> tuple[int, ...]:
    """Colour the peeled vertices in reverse removal order, lowest free colour first.

    Core vertices keep their colours.
    """
    if len(core_colouring) != len(trace.core_vertices):
        raise InstanceError("core colouring does not match the core size")
    c = [0] * inst.n
    for i, v in enumerate(trace.core_vertices):
        c[v] = core_colouring[i]
    for v, live_edges in reversed(trace.removed):
        blocked = set()
        for e in live_edges:
            w = inst.graph.other(e, v)
            if c[w] == inst.local(e, w):
                blocked.add(inst.local(e, v))
        x = 1
        while x in blocked:
            x += 1
        # fewer than k edges forbid fewer than k colours
        assert x <= inst.k
        c[v] = x
    colouring = tuple(c)
    if validate_colouring(inst, colouring):
        raise InstanceError("core colouring is not valid on the core")
    return colouring
