"""Two-phase degree-split solver.

Vertices of degree at least ``d = sqrt(2 * mu * m)`` form the set A, the rest
form B. Phase A colours A by a random sparse selection of local colours,
repaired by Moser-Tardos resampling against three kinds of bad events:

* I   an A-vertex has no selected colour;
* II  both local colours of an edge inside A are selected;
* III a B-vertex has more than ``sqrt(d)`` edges into A whose A-side local
      colour is selected.

Each A-vertex then keeps its lowest selected colour. Phase B removes, at
every B-vertex, the colours that clash with the A colouring, trims the rest
to ``ceil(sqrt(e * (2d - 1)))`` colours and finishes with plain resampling on
G[B], whose maximum degree is below ``d``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from conflictcol.bounds import lll_feasibility_check  # noqa: F401  (solver-facing alias)
from conflictcol.model import ConflictInstance, Multigraph, validate_colouring
from conflictcol.solvers.lll import DEFAULT_CAP, solve_lll
from conflictcol.solvers.result import SolveResult, Status

PAPER_MIN_D = 2 ** 23  # smallest d accepted in paper mode
DESK_RETRIES = 32


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class TwoPhaseParams:
    d: float
    p: float
    prune_cap: float
    b_cap: float
    kA: int
    kB: int
    resample_cap: int = DEFAULT_CAP
    mode: str = "desk"
    C: float = 1.0

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ParameterError(f"selection probability {self.p} outside (0, 1)")
        if self.mode not in ("paper", "desk"):
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.mode == "paper" and self.d < PAPER_MIN_D:
            raise ParameterError(
                f"paper mode needs d >= 2^23, got d = {self.d:.1f}; use desk mode")

    @property
    def k_prime(self) -> int:
        return self.kB - math.ceil(math.sqrt(self.d))

    @classmethod
    def for_graph(cls, g: Multigraph, mode: str = "desk", C: float = 1.0,
                  resample_cap: int = DEFAULT_CAP) -> "TwoPhaseParams":
        """Parameter formulas evaluated at ``d = sqrt(2 * mu * m)`` of ``g``."""
        if g.m == 0:
            raise ParameterError("graph has no edges")
        d = math.sqrt(2 * g.multiplicity() * g.m)
        sd = math.sqrt(d)
        k_prime = math.ceil(math.sqrt(math.e * (2 * d - 1)))
        return cls(
            d=d,
            p=2 ** -4 / sd,
            prune_cap=sd,
            b_cap=sd,
            kA=math.ceil(C * sd * math.log(d)) if d > 1 else 1,
            kB=k_prime + math.ceil(sd),
            resample_cap=resample_cap,
            mode=mode,
            C=C,
        )

    @property
    def k_required(self) -> int:
        return max(self.kA, self.kB)


@dataclass
class PhaseA:
    colouring: dict[int, int]
    resamples: int
    pruned: int
    clashes: dict[int, int]  # B-vertex -> edges e = xy into A with c(y) = L_y(e)


def split_vertices(g: Multigraph, d: float) -> tuple[list[int], list[int]]:
    a = [v for v in range(g.n) if g.degrees[v] >= d]
    a_set = set(a)
    return a, [v for v in range(g.n) if v not in a_set]


def phase_a(inst: ConflictInstance, params: TwoPhaseParams, high: list[int],
            rng: random.Random) -> PhaseA | None:
    """Colour the high-degree set; None when the resampling cap is hit."""
    g = inst.graph
    k = inst.k
    in_a = [False] * g.n
    for v in high:
        in_a[v] = True
    edges = g.edges

    # prune: colours with more than prune_cap edges inside A are never used
    avail: dict[int, list[int]] = {}
    pruned = 0
    for v in high:
        count = [0] * (k + 1)
        for e in g.incidence[v]:
            if in_a[g.other(e, v)]:
                count[inst.local(e, v)] += 1
        avail[v] = [i for i in range(1, k + 1) if count[i] <= params.prune_cap]
        pruned += k - len(avail[v])

    # watchers of each selection variable (y, i)
    inner: dict[tuple[int, int], list[int]] = {}   # edges inside A
    outer: dict[tuple[int, int], list[int]] = {}   # B-endpoints of edges into A
    b_vars: dict[int, list[tuple[int, int]]] = {}
    for e, (u, v) in enumerate(edges):
        if in_a[u] and in_a[v]:
            inner.setdefault((u, inst.pairs[e][0]), []).append(e)
            inner.setdefault((v, inst.pairs[e][1]), []).append(e)
        elif in_a[u] or in_a[v]:
            y, x = (u, v) if in_a[u] else (v, u)
            var = (y, inst.local(e, y))
            outer.setdefault(var, []).append(x)
            b_vars.setdefault(x, []).append(var)

    p = params.p
    sel: dict[int, set[int]] = {v: {i for i in avail[v] if rng.random() < p} for v in high}
    hits = {x: sum(1 for y, i in vs if i in sel[y]) for x, vs in b_vars.items()}

    def edge_bad(e: int) -> bool:
        u, v = edges[e]
        a, b = inst.pairs[e]
        return a in sel[u] and b in sel[v]

    bad1 = {v for v in high if not sel[v]}
    bad2 = {e for e in range(len(edges))
            if in_a[edges[e][0]] and in_a[edges[e][1]] and edge_bad(e)}
    bad3 = {x for x, h in hits.items() if h > params.b_cap}

    def redraw(y: int, i: int) -> None:
        now = rng.random() < p
        was = i in sel[y]
        if now == was:
            return
        if now:
            sel[y].add(i)
        else:
            sel[y].discard(i)
        if sel[y]:
            bad1.discard(y)
        else:
            bad1.add(y)
        for e in inner.get((y, i), ()):
            if edge_bad(e):
                bad2.add(e)
            else:
                bad2.discard(e)
        delta = 1 if now else -1
        for x in outer.get((y, i), ()):
            hits[x] += delta
            if hits[x] > params.b_cap:
                bad3.add(x)
            else:
                bad3.discard(x)

    resamples = 0
    while bad1 or bad2 or bad3:
        if resamples >= params.resample_cap:
            return None
        resamples += 1
        if bad1:
            y = min(bad1)
            for i in avail[y]:
                redraw(y, i)
        elif bad2:
            e = min(bad2)
            u, v = edges[e]
            redraw(u, inst.pairs[e][0])
            redraw(v, inst.pairs[e][1])
        else:
            x = min(bad3)
            for y, i in b_vars[x]:
                redraw(y, i)

    # deselection never creates events of the second or third kind
    colouring = {v: min(sel[v]) for v in high}
    clashes: dict[int, int] = {}
    for x, vs in b_vars.items():
        clashes[x] = sum(1 for y, i in vs if colouring[y] == i)
    return PhaseA(colouring, resamples, pruned, clashes)


def phase_a_contract(inst: ConflictInstance, params: TwoPhaseParams, a: PhaseA) -> bool:
    """No conflict inside A and no B-vertex with more than b_cap clashing edges."""
    col = a.colouring
    for (u, v), (x, y) in zip(inst.graph.edges, inst.pairs):
        if u in col and v in col and col[u] == x and col[v] == y:
            return False
    return all(c <= params.b_cap for c in a.clashes.values())


def phase_b(inst: ConflictInstance, params: TwoPhaseParams, a: PhaseA, low: list[int],
            rng: random.Random) -> SolveResult:
    g = inst.graph
    k_prime = params.k_prime
    col = a.colouring
    # colours each B-vertex must avoid because an A-neighbour took its side
    dead: dict[int, set[int]] = {x: set() for x in low}
    for e, (u, v) in enumerate(g.edges):
        ua, va = u in col, v in col
        if ua == va:
            continue
        y, x = (u, v) if ua else (v, u)
        if col[y] == inst.local(e, y):
            dead[x].add(inst.local(e, x))
    kept: dict[int, list[int]] = {}
    for x in low:
        live = [i for i in range(1, inst.k + 1) if i not in dead[x]]
        if len(live) < k_prime:
            raise ParameterError(f"vertex {x} keeps {len(live)} colours, fewer than {k_prime}")
        kept[x] = live[:k_prime]
    sub, vmap, emap = g.induced(low)
    pos = [{c: j + 1 for j, c in enumerate(kept[v])} for v in vmap]
    edges, pairs = [], []
    for j, e in enumerate(emap):
        u, v = sub.edges[j]
        a_, b_ = inst.pairs[e]
        if a_ in pos[u] and b_ in pos[v]:
            edges.append((u, v))
            pairs.append((pos[u][a_], pos[v][b_]))
    reduced = ConflictInstance(Multigraph(sub.n, tuple(edges)), k_prime, tuple(pairs))
    res = solve_lll(reduced, 0, cap=params.resample_cap, rng=rng)
    if not res.ok:
        return res
    colouring = {vmap[i]: kept[vmap[i]][c - 1] for i, c in enumerate(res.colouring)}
    return SolveResult(Status.SAT, tuple(colouring[v] for v in vmap), res.counters)


def two_phase(inst: ConflictInstance, params: TwoPhaseParams | None = None, seed: int = 0,
              mode: str = "desk", retries: int = DESK_RETRIES) -> SolveResult:
    """Colour ``inst`` with the two-phase pipeline.

    Raises ParameterError when ``inst.k`` is below ``kA`` or ``kB``, or in
    paper mode below ``d = 2^23``. Desk mode retries with fresh seeds up to
    ``retries`` times after a capped phase.
    """
    if params is None:
        if inst.m == 0:
            return SolveResult(Status.SAT, (1,) * inst.n, {"attempts": 0})
        params = TwoPhaseParams.for_graph(inst.graph, mode=mode)
    if inst.k < params.k_required:
        raise ParameterError(
            f"k = {inst.k} is below the required max(kA, kB) = {params.k_required}")
    high, low = split_vertices(inst.graph, params.d)
    base = {"d": params.d, "p": params.p, "kA": params.kA, "kB": params.kB,
            "high": len(high), "low": len(low)}
    attempts = 1 if params.mode == "paper" else retries
    last = None
    for attempt in range(attempts):
        rng = random.Random(f"{seed}:{attempt}")
        if not high:
            res = solve_lll(inst, seed if attempt == 0 else 0, cap=params.resample_cap,
                            rng=None if attempt == 0 else rng)
            res.counters.update(base, attempts=attempt + 1)
            if res.ok:
                return res
            last = res
            continue
        a = phase_a(inst, params, high, rng)
        if a is None:
            last = SolveResult(Status.CAP_EXHAUSTED, counters=dict(base, attempts=attempt + 1),
                               detail="phase A resampling cap reached")
            continue
        assert phase_a_contract(inst, params, a)
        b = phase_b(inst, params, a, low, rng)
        counters = dict(base, attempts=attempt + 1, phase_a_resamples=a.resamples,
                        phase_b_resamples=b.counters.get("resamples", 0), pruned=a.pruned,
                        max_clashes=max(a.clashes.values(), default=0), b_cap=params.b_cap)
        if not b.ok:
            last = SolveResult(b.status, counters=counters, detail="phase B: " + b.detail)
            continue
        colour = [0] * inst.n
        for v, c in a.colouring.items():
            colour[v] = c
        for v, c in zip(low, b.colouring):
            colour[v] = c
        result = tuple(colour)
        assert not validate_colouring(inst, result)
        return SolveResult(Status.SAT, result, counters)
    return last
