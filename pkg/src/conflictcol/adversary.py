"""Instance generators and exact choosability oracles for tiny graphs.

The oracles enumerate every local partition (or list assignment) and decide
colourability with a bitset over all ``k**n`` colourings: bit ``i`` of the
working set is colouring ``i`` read as ``n`` base-``k`` digits. Adding a
conflict clears the colourings that realise it, so an instance is
uncolourable exactly when the set becomes empty.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator

from conflictcol.model import ConflictInstance, Multigraph
from conflictcol.solvers.exact import solve_exact
from conflictcol.solvers.orientation import solve_orientation
from conflictcol.solvers.result import SearchLimits, Status


class WorkBudgetExceeded(RuntimeError):
    """The oracle refused or abandoned an enumeration that exceeds its budget."""


DEFAULT_BUDGET = 20_000_000
MAX_COLOURINGS = 1 << 22


# --------------------------------------------------------------------------
# generators

def gen_two_vertex(k: int) -> ConflictInstance:
    """Two vertices joined by ``k*k`` edges listing every pair of ``[k]^2``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    pairs = tuple(itertools.product(range(1, k + 1), repeat=2))
    return ConflictInstance(Multigraph(2, ((0, 1),) * len(pairs)), k, pairs)


def gen_star(mu: int) -> ConflictInstance:
    """Centre 0 with leaves ``1..mu``; the bundle to leaf ``i`` forbids every
    pair ``(i, j)`` so the centre has no usable colour."""
    if mu < 1:
        raise ValueError("mu must be at least 1")
    edges, pairs = [], []
    for i in range(1, mu + 1):
        for j in range(1, mu + 1):
            edges.append((0, i))
            pairs.append((i, j))
    return ConflictInstance(Multigraph(mu + 1, tuple(edges)), mu, tuple(pairs))


def gen_random_partition(g: Multigraph, k: int, seed: int | None = None,
                         rng: random.Random | None = None) -> ConflictInstance:
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = rng if rng is not None else random.Random(seed)
    pairs = tuple((rng.randint(1, k), rng.randint(1, k)) for _ in range(g.m))
    return ConflictInstance(g, k, pairs)


def gen_complete_multigraph(n: int, mu: int) -> Multigraph:
    if n < 1 or mu < 1:
        raise ValueError("n and mu must be at least 1")
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) for _ in range(mu)]
    return Multigraph(n, tuple(edges))


def gen_planar_triangulation(n: int, seed: int, flips: int | None = None) -> Multigraph:
    """Random simple planar triangulation with ``3n - 6`` edges.

    Vertices are inserted one at a time into a uniformly chosen face, then
    ``flips`` (default ``n``) random edge flips diversify the result away
    from stacked triangulations.
    """
    if n < 3:
        raise ValueError("a triangulation needs n >= 3")
    rng = random.Random(seed)
    faces: list[tuple[int, int, int]] = [(0, 1, 2), (0, 2, 1)]
    if n == 3:
        return Multigraph(3, ((0, 1), (1, 2), (0, 2)))
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
    # each undirected edge borders exactly two faces
    edge_faces: dict[frozenset, list[int]] = {}
    for i, f in enumerate(faces):
        for j in range(3):
            edge_faces.setdefault(frozenset((f[j], f[(j + 1) % 3])), []).append(i)
    for _ in range(n if flips is None else flips):
        key = rng.choice(list(edge_faces))
        i, j = edge_faces[key]
        a, b = sorted(key)
        c = next(x for x in faces[i] if x not in key)
        d = next(x for x in faces[j] if x not in key)
        if frozenset((c, d)) in edge_faces or c == d:
            continue
        # rotate each face so that it reads (a, b, third) or (b, a, third)
        fi = faces[i]
        r = fi.index(c)
        x, y = fi[(r + 1) % 3], fi[(r + 2) % 3]  # fi = (c, x, y) cyclically
        faces[i] = (c, x, d)
        faces[j] = (d, y, c)
        del edge_faces[key]
        edge_faces[frozenset((c, d))] = [i, j]
        for face_id, (p, q) in ((i, (x, d)), (j, (y, c))):
            lst = edge_faces[frozenset((p, q))]
            other = j if face_id == i else i
            lst[lst.index(other)] = face_id
    edges = sorted(tuple(sorted(e)) for e in edge_faces)
    return Multigraph(n, tuple(edges))


def gen_random_multigraph(n: int, m: int, seed: int, max_mult: int = 1,
                          max_degree: int | None = None, hubs: int = 0,
                          hub_degree: int = 0) -> Multigraph:
    """Random multigraph with ``m`` edges and multiplicity at most ``max_mult``.

    ``hubs`` vertices (ids ``0..hubs-1``) first receive ``hub_degree`` edges
    each to random partners; remaining edges join uniform random pairs. With
    ``max_degree`` set, pairs that would exceed it are skipped, so fewer than
    ``m`` edges may result when the degree cap is tight.
    """
    rng = random.Random(seed)
    mult: dict[tuple[int, int], int] = {}
    deg = [0] * n
    edges: list[tuple[int, int]] = []

    def try_add(u: int, v: int) -> bool:
        if u == v:
            return False
        key = (min(u, v), max(u, v))
        if mult.get(key, 0) >= max_mult:
            return False
        if max_degree is not None and (deg[u] >= max_degree or deg[v] >= max_degree):
            return False
        mult[key] = mult.get(key, 0) + 1
        deg[u] += 1
        deg[v] += 1
        edges.append(key)
        return True

    for h in range(hubs):
        placed = 0
        attempts = 0
        while placed < hub_degree and len(edges) < m and attempts < 50 * hub_degree:
            attempts += 1
            placed += try_add(h, rng.randrange(n))
    attempts = 0
    while len(edges) < m and attempts < 50 * m + 1000:
        attempts += 1
        try_add(rng.randrange(n), rng.randrange(n))
    return Multigraph(n, tuple(edges))


# --------------------------------------------------------------------------
# bitset machinery

def _digit_masks(n: int, k: int) -> list[list[int]]:
    """``masks[v][a]``: colourings whose vertex ``v`` has 0-based colour ``a``."""
    total = k ** n
    masks = []
    for v in range(n):
        block = k ** v
        period = block * k
        reps = total // period
        repeat = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
        masks.append([(((1 << block) - 1) << (a * block)) * repeat for a in range(k)])
    return masks


def _guard(n: int, k: int, max_colourings: int) -> None:
    if k ** n > max_colourings:
        raise WorkBudgetExceeded(f"{k}^{n} colourings exceed the limit {max_colourings}")


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise WorkBudgetExceeded(f"enumeration exceeded {self.budget} nodes")


def find_uncolourable_partition(g: Multigraph, k: int, budget: int = DEFAULT_BUDGET,
                                symmetry: bool = True,
                                max_colourings: int = MAX_COLOURINGS) -> ConflictInstance | None:
    """Search every local k-partition of ``g`` for an uncolourable one.

    With ``symmetry`` only canonical partitions are visited: at every vertex
    the local colours, read along its incident edges in id order, first
    appear in the order 1, 2, 3, ... Every partition is a per-vertex colour
    renaming of exactly one canonical partition, and renaming preserves
    colourability.
    """
    _guard(g.n, k, max_colourings)
    counter = _Counter(budget)
    masks = _digit_masks(g.n, k)
    full = (1 << (k ** g.n)) - 1
    edges = g.edges
    m = g.m
    used = [0] * g.n
    chosen: list[tuple[int, int]] = []

    def dfs(i: int, valid: int) -> bool:
        if valid == 0:
            return True
        if i == m:
            return False
        u, v = edges[i]
        top_u = min(k, used[u] + 1) if symmetry else k
        top_v = min(k, used[v] + 1) if symmetry else k
        for a in range(1, top_u + 1):
            for b in range(1, top_v + 1):
                counter.tick()
                old_u, old_v = used[u], used[v]
                used[u] = max(old_u, a)
                used[v] = max(old_v, b)
                chosen.append((a, b))
                if dfs(i + 1, valid & ~(masks[u][a - 1] & masks[v][b - 1])):
                    return True
                chosen.pop()
                used[u], used[v] = old_u, old_v
        return False

    if m == 0:
        return None
    if dfs(0, full):
        # pad an early-dead prefix with arbitrary pairs
        pairs = chosen + [(1, 1)] * (m - len(chosen))
        return ConflictInstance(g, k, tuple(pairs))
    return None


def exact_choosability(g: Multigraph, k_max: int, budget: int = DEFAULT_BUDGET,
                       symmetry: bool = True,
                       max_colourings: int = MAX_COLOURINGS) -> int | None:
    """Least ``k <= k_max`` such that every local k-partition is colourable.

    Returns None when the value exceeds ``k_max``. Raises WorkBudgetExceeded
    rather than guessing.
    """
    _guard(g.n, k_max, max_colourings)
    for k in range(1, k_max + 1):
        if find_uncolourable_partition(g, k, budget, symmetry, max_colourings) is None:
            return k
    return None


def find_hard_partition(g: Multigraph, k: int, trials: int, seed: int,
                        limits: SearchLimits | None = None) -> ConflictInstance | None:
    """First sampled uniform random local k-partition that is uncolourable."""
    rng = random.Random(seed)
    for _ in range(trials):
        inst = gen_random_partition(g, k, rng=rng)
        res = solve_exact(inst, limits)
        if res.status is Status.EXHAUSTED:
            raise WorkBudgetExceeded("exact solver budget exhausted during witness search")
        if res.status is Status.UNSAT:
            return inst
    return None


# --------------------------------------------------------------------------
# list-colouring oracles

def _set_partitions(m: int) -> Iterator[list[int]]:
    """Restricted growth strings: block ids 0, 1, ... in first-use order."""
    if m == 0:
        yield []
        return
    rgs = [0] * m

    def rec(i: int, top: int):
        if i == m:
            yield rgs
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def find_unadaptable_lists(g: Multigraph, k: int, budget: int = DEFAULT_BUDGET,
                           max_colourings: int = MAX_COLOURINGS):
    """Search for a k-list-assignment and labelling with no adapted L-colouring.

    Only the equality pattern of labels matters, so labellings range over set
    partitions of the edges. A list holding a colour that labels none of the
    vertex's edges frees that vertex entirely, and such an assignment is
    colourable whenever any assignment agreeing elsewhere is. So only
    vertices with at least ``k`` distinct incident labels are constrained, and
    their lists range over ``k``-subsets of those labels. Returns
    ``(labels, lists)`` with private colours filled in, or None.
    """
    _guard(g.n, k, max_colourings)
    counter = _Counter(budget)
    masks = _digit_masks(g.n, k)
    full = (1 << (k ** g.n)) - 1
    n = g.n
    inc = g.incidence
    edges = g.edges

    for labels in _set_partitions(g.m):
        counter.tick()
        label_sets = [sorted({labels[e] for e in inc[v]}) for v in range(n)]
        options = [list(itertools.combinations(ls, k)) if len(ls) >= k else [None]
                   for ls in label_sets]
        chosen: list[tuple[int, ...] | None] = [None] * n

        def dfs(v: int, valid: int) -> bool:
            if valid == 0:
                return True
            if v == n:
                return False
            for s in options[v]:
                counter.tick()
                chosen[v] = s
                cur = valid
                if s is not None:
                    pos_v = {x: i for i, x in enumerate(s)}
                    for e in inc[v]:
                        w = g.other(e, v)
                        if w >= v or chosen[w] is None:
                            continue
                        x = labels[e]
                        if x in pos_v and x in chosen[w]:
                            cur &= ~(masks[v][pos_v[x]] & masks[w][chosen[w].index(x)])
                if dfs(v + 1, cur):
                    return True
            chosen[v] = None
            return False

        if g.m and dfs(0, full):
            return _materialise_lists(g, k, [x + 1 for x in labels], chosen)
    return None


def _materialise_lists(g: Multigraph, k: int, labels, chosen):
    nxt = max(labels, default=0) + 1
    lists = []
    for s in chosen:
        if s is None:
            lst = []
        else:
            lst = [x + 1 for x in s]
        while len(lst) < k:
            lst.append(nxt)
            nxt += 1
        lists.append(tuple(sorted(lst)))
    return tuple(labels), tuple(lists)


def find_unseparable_lists(g: Multigraph, k: int, budget: int = DEFAULT_BUDGET,
                           max_colourings: int = MAX_COLOURINGS):
    """Search for a maximally separated k-list-assignment with no proper L-colouring.

    A list colour matters only through the set of vertices holding it, and
    through the edges inside that set. Colours are enumerated as classes of a
    partial set partition of the edges: an edge is either in no class (its
    lists are disjoint) or in the class of its unique shared colour. Every
    edge of ``g`` joining two vertices of a class must belong to that class,
    which is exactly maximum separation. Vertices in fewer than ``k`` classes
    own a private colour. Returns the lists, or None.
    """
    _guard(g.n, k, max_colourings)
    counter = _Counter(budget)
    masks = _digit_masks(g.n, k)
    full = (1 << (k ** g.n)) - 1
    n, m = g.n, g.m
    edges = g.edges
    # edge id between each adjacent pair (simple graphs: one; multigraphs: all)
    between: dict[tuple[int, int], list[int]] = {}
    for e, (u, v) in enumerate(edges):
        between.setdefault((min(u, v), max(u, v)), []).append(e)
    cls = [-1] * m  # -1 unassigned, 0 no shared colour, j >= 1 class j
    members: list[set[int]] = [set()]  # members[j]: vertices of class j
    classes_at = [set() for _ in range(n)]

    def consistent(e: int, j: int) -> bool:
        u, v = edges[e]
        if j == 0:
            return not any(u in s and v in s for s in members[1:])
        for t in range(1, len(members)):
            if t != j and u in members[t] and v in members[t]:
                return False
        new = {u, v} - members[j] if j < len(members) else {u, v}
        old = members[j] if j < len(members) else set()
        group = old | new
        for x in new:
            for y in group:
                if x == y:
                    continue
                for f in between.get((min(x, y), max(x, y)), ()):
                    if f != e and cls[f] != -1 and cls[f] != j:
                        return False
        return True

    def leaf() -> tuple | None:
        counter.tick()
        valid = full
        order = [sorted(classes_at[v]) for v in range(n)]
        for e, (u, v) in enumerate(edges):
            j = cls[e]
            if j <= 0 or len(order[u]) < k or len(order[v]) < k:
                continue
            valid &= ~(masks[u][order[u].index(j)] & masks[v][order[v].index(j)])
            if valid == 0:
                return order
        return None

    def dfs(i: int, top: int):
        if i == m:
            return leaf()
        u, v = edges[i]
        for j in range(top + 2):
            counter.tick()
            if not consistent(i, j):
                continue
            added = []
            if j > 0:
                if j == len(members):
                    members.append(set())
                for x in (u, v):
                    if j not in classes_at[x]:
                        if len(classes_at[x]) >= k:
                            break
                        classes_at[x].add(j)
                        added.append(x)
                else:
                    members[j] |= set(added)
                    cls[i] = j
                    out = dfs(i + 1, max(top, j))
                    if out is not None:
                        return out
                    members[j] -= set(added)
                for x in added:
                    classes_at[x].discard(j)
                if j == len(members) - 1 and not members[j]:
                    members.pop()
                cls[i] = -1
            else:
                cls[i] = 0
                out = dfs(i + 1, top)
                if out is not None:
                    return out
                cls[i] = -1
        return None

    if m == 0:
        return None
    order = dfs(0, 0)
    if order is None:
        return None
    nxt = m + 1
    lists = []
    for v in range(n):
        lst = list(order[v]) if len(order[v]) >= k else []
        while len(lst) < k:
            lst.append(nxt)
            nxt += 1
        lists.append(tuple(sorted(lst)))
    return tuple(lists)


def _least_k(finder, g: Multigraph, k_max: int, **kw) -> int | None:
    for k in range(1, k_max + 1):
        if finder(g, k, **kw) is None:
            return k
    return None


def exact_adaptable_choosability(g: Multigraph, k_max: int, budget: int = DEFAULT_BUDGET,
                                 max_colourings: int = MAX_COLOURINGS,
                                 orientation_certificate: bool = False) -> int | None:
    """Least ``k <= k_max`` with every k-list-assignment and labelling adaptable.

    With ``orientation_certificate`` the enumeration at ``k = k_star + 1`` is
    skipped: orienting with outdegree below ``k``, each vertex picks a list
    colour avoiding the labels of its out-edges, and no edge is then
    monochromatic in its own label.
    """
    k_cert = solve_orientation(g)[0] + 1 if orientation_certificate else None
    for k in range(1, k_max + 1):
        if k == k_cert:
            return k
        if find_unadaptable_lists(g, k, budget=budget, max_colourings=max_colourings) is None:
            return k
    return None


def exact_separation_choosability(g: Multigraph, k_max: int, budget: int = DEFAULT_BUDGET,
                                  max_colourings: int = MAX_COLOURINGS) -> int | None:
    return _least_k(find_unseparable_lists, g, k_max, budget=budget,
                    max_colourings=max_colourings)


def prop4_witness_probability(mu: int, k: int) -> float:
    """Probability that ``mu`` uniform pairs cover all of ``[k]^2`` (two-vertex graph)."""
    q = k * k
    return sum((-1) ** j * math.comb(q, j) * ((q - j) / q) ** mu for j in range(q + 1))
