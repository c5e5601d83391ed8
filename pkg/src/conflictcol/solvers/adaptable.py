"""Adaptable list colouring by splitting the palette and the vertex set.

The palette is cut into two random halves X1, X2 with every list keeping at
least ``ceil(k/4)`` colours on each side. Vertices of degree at least
``sqrt(2 * mu * m)`` colour from X2, the rest from X1; each side then has
maximum degree at most that threshold and is coloured independently by
Moser-Tardos resampling. Edges between the sides cannot be monochromatic
since the two palettes are disjoint.
"""

from __future__ import annotations

import math
import random

from conflictcol.model import Multigraph
from conflictcol.reductions import AdaptableInstance, adaptable_to_conflict, check_adapted
from conflictcol.solvers.lll import DEFAULT_CAP, solve_lll
from conflictcol.solvers.result import SolveResult, Status

BIPARTITION_CAP = 64


def degree_threshold(g: Multigraph) -> float:
    return math.sqrt(2 * g.multiplicity() * g.m)


def split_adaptable(inst: AdaptableInstance, seed: int, cap: int = DEFAULT_CAP,
                    bipartition_cap: int = BIPARTITION_CAP) -> SolveResult:
    k = inst.k
    if k < 8:
        raise ValueError(f"list size {k} is below 8; the palette split needs k/4 >= 2")
    rng = random.Random(seed)
    g = inst.graph
    quota = -(-k // 4)
    palette = sorted(set().union(*inst.lists)) if inst.lists else []

    for attempt in range(1, bipartition_cap + 1):
        x1 = {x for x in palette if rng.random() < 0.5}
        sides = [(len([x for x in lst if x in x1]), len([x for x in lst if x not in x1]))
                 for lst in inst.lists]
        if all(a >= quota and b >= quota for a, b in sides):
            break
    else:
        return SolveResult(Status.FAILURE, counters={"bipartition_attempts": bipartition_cap},
                           detail=f"no palette split gave every list {quota} colours per side")
    counters = {
        "bipartition_attempts": attempt,
        "min_side": min((min(s) for s in sides), default=0),
        "quota": quota,
    }

    threshold = degree_threshold(g)
    high = [v for v in range(g.n) if g.m and g.degrees[v] >= threshold]
    high_set = set(high)
    low = [v for v in range(g.n) if v not in high_set]
    counters.update(threshold=threshold, high=len(high), low=len(low))

    colouring = [0] * g.n
    resamples = 0
    for part, use_x1 in ((high, False), (low, True)):
        if not part:
            continue
        sub, vmap, emap = g.induced(part)
        lists = []
        for v in vmap:
            kept = [x for x in inst.lists[v] if (x in x1) == use_x1]
            lists.append(tuple(kept[:quota]))
        sub_inst = AdaptableInstance(sub, tuple(lists), tuple(inst.labels[e] for e in emap))
        conflict, decoding = adaptable_to_conflict(sub_inst)
        res = solve_lll(conflict, seed, cap=cap, rng=rng)
        resamples += res.counters.get("resamples", 0)
        if not res.ok:
            counters["resamples"] = resamples
            return SolveResult(res.status, counters=counters,
                               detail=f"{'low' if use_x1 else 'high'}-degree side: {res.detail}")
        for i, x in enumerate(decoding.decode(res.colouring)):
            colouring[vmap[i]] = x
    counters["resamples"] = resamples
    result = tuple(colouring)
    assert check_adapted(inst, result)
    return SolveResult(Status.SAT, result, counters)
