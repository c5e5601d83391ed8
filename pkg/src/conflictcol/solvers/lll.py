"""Moser-Tardos resampling for conflict colourings.

Bad events are the edges whose forbidden pair is realised. Under
``k >= ceil(sqrt(e * (2 * max_degree - 1)))`` the symmetric Local Lemma
condition holds and resampling terminates quickly in expectation.
"""

from __future__ import annotations

import heapq
import random

from conflictcol.model import ConflictInstance, validate_colouring
from conflictcol.solvers.result import SolveResult, Status

DEFAULT_CAP = 1_000_000


def solve_lll(inst: ConflictInstance, seed: int, cap: int = DEFAULT_CAP,
              rng: random.Random | None = None) -> SolveResult:
    """Uniform random colouring, then repeatedly redraw both endpoints of the
    lowest-id violated edge. Deterministic given ``seed``.

    Passing ``rng`` overrides ``seed`` (used by pipelines sharing one stream).
    """
    rng = rng if rng is not None else random.Random(seed)
    g = inst.graph
    k = inst.k
    edges = g.edges
    pairs = inst.pairs
    inc = g.incidence
    c = [rng.randint(1, k) for _ in range(g.n)]

    def bad(e: int) -> bool:
        u, v = edges[e]
        a, b = pairs[e]
        return c[u] == a and c[v] == b

    violated = [bad(e) for e in range(g.m)]
    heap = [e for e in range(g.m) if violated[e]]
    heapq.heapify(heap)
    resamples = 0
    while heap:
        e = heap[0]
        if not violated[e]:
            heapq.heappop(heap)
            continue
        if resamples >= cap:
            return SolveResult(Status.CAP_EXHAUSTED, counters={"resamples": resamples},
                               detail=f"no valid colouring after {cap} resamplings")
        resamples += 1
        u, v = edges[e]
        c[u] = rng.randint(1, k)
        c[v] = rng.randint(1, k)
        for w in (u, v):
            for f in inc[w]:
                now = bad(f)
                if now and not violated[f]:
                    heapq.heappush(heap, f)
                violated[f] = now
    colouring = tuple(c)
    assert not validate_colouring(inst, colouring)
    return SolveResult(Status.SAT, colouring, {"resamples": resamples})
