"""Core data model: multigraphs, conflict instances, colourings and orientations.

A local k-partition is stored per edge as the ordered pair ``(lu, lv)`` where
``lu`` is the local colour at the edge's first endpoint and ``lv`` the one at
its second endpoint. Colours are 1-based throughout.

Colourings are plain tuples ``c`` with ``c[v]`` in ``[1, k]``; orientations are
tuples ``head`` with ``head[e]`` one of the endpoints of edge ``e``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Colouring = tuple[int, ...]
Orientation = tuple[int, ...]


class InstanceError(ValueError):
    """Raised when an instance, colouring or orientation is malformed."""


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError(f"vertex count must be nonnegative, got {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InstanceError(f"edge {i}: endpoint out of range [0, {self.n})")
            if u == v:
                raise InstanceError(f"edge {i}: loop at vertex {u}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, in increasing id order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if v == u else u

    def multiplicity(self) -> int:
        if not self.edges:
            return 0
        return max(Counter((min(u, v), max(u, v)) for u, v in self.edges).values())

    def induced(self, vertices: Iterable[int]) -> tuple["Multigraph", tuple[int, ...], tuple[int, ...]]:
        """Induced submultigraph on ``vertices``.

        Returns ``(H, vmap, emap)`` where ``vmap[i]`` is the original id of
        vertex ``i`` of ``H`` and ``emap[j]`` the original id of edge ``j``.
        """
        vmap = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(vmap)}
        sub_edges = []
        emap = []
        for e, (u, v) in enumerate(self.edges):
            if u in index and v in index:
                sub_edges.append((index[u], index[v]))
                emap.append(e)
        return Multigraph(len(vmap), tuple(sub_edges)), vmap, tuple(emap)


@dataclass(frozen=True)
class ConflictInstance:
    graph: Multigraph
    k: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.k < 1:
            raise InstanceError(f"colour budget must be positive, got {self.k}")
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) != self.graph.m:
            raise InstanceError(f"{len(pairs)} colour pairs for {self.graph.m} edges")
        for i, (a, b) in enumerate(pairs):
            if not (1 <= a <= self.k and 1 <= b <= self.k):
                raise InstanceError(f"edge {i}: colour pair ({a}, {b}) outside [1, {self.k}]")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def local(self, e: int, v: int) -> int:
        """Local colour of vertex ``v`` on edge ``e``."""
        u, w = self.graph.edges[e]
        if v == u:
            return self.pairs[e][0]
        if v == w:
            return self.pairs[e][1]
        raise InstanceError(f"vertex {v} is not an endpoint of edge {e}")

    def with_budget(self, k: int) -> "ConflictInstance":
        return ConflictInstance(self.graph, k, self.pairs)

    def without_edges(self, drop: Iterable[int]) -> "ConflictInstance":
        drop = set(drop)
        keep = [e for e in range(self.m) if e not in drop]
        g = Multigraph(self.n, tuple(self.graph.edges[e] for e in keep))
        return ConflictInstance(g, self.k, tuple(self.pairs[e] for e in keep))


@dataclass(frozen=True)
class Violations:
    """Witnesses of invalidity. Empty (and falsy) iff the checked object is valid."""

    edges: tuple[int, ...] = ()
    vertices: tuple[int, ...] = field(default=())

    def __bool__(self) -> bool:
        return bool(self.edges or self.vertices)

    @property
    def ok(self) -> bool:
        return not self


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    mu: int
    max_degree: int
    avg_degree: float

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "mu": self.mu,
                "max_degree": self.max_degree, "avg_degree": self.avg_degree}


def build_instance(n: int, edges: Sequence[tuple[int, int]], k: int,
                   pairs: Sequence[tuple[int, int]]) -> ConflictInstance:
    """Validate raw lists and build a ConflictInstance; edge ids follow input order."""
    if len(edges) != len(pairs):
        raise InstanceError(
            f"length mismatch: {len(edges)} edges but {len(pairs)} pairs "
            f"(first unmatched index {min(len(edges), len(pairs))})")
    return ConflictInstance(Multigraph(n, tuple(edges)), k, tuple(pairs))


def graph_stats(g: Multigraph) -> GraphStats:
    degs = g.degrees
    return GraphStats(
        n=g.n,
        m=g.m,
        mu=g.multiplicity(),
        max_degree=max(degs, default=0),
        avg_degree=2 * g.m / g.n if g.n else 0.0,
    )


def _check_colouring(inst: ConflictInstance, c: Sequence[int]) -> None:
    if len(c) != inst.n:
        raise InstanceError(f"colouring has {len(c)} entries for {inst.n} vertices")
    for v, x in enumerate(c):
        if not 1 <= x <= inst.k:
            raise InstanceError(f"vertex {v}: colour {x} outside [1, {inst.k}]")


def _check_orientation(inst: ConflictInstance, head: Sequence[int]) -> None:
    if len(head) != inst.m:
        raise InstanceError(f"orientation has {len(head)} entries for {inst.m} edges")
    for e, h in enumerate(head):
        if h not in inst.graph.edges[e]:
            raise InstanceError(f"edge {e}: head {h} is not an endpoint")


def validate_colouring(inst: ConflictInstance, c: Sequence[int]) -> Violations:
    """Edges whose forbidden pair is realised by ``c``."""
    _check_colouring(inst, c)
    bad = tuple(e for e, ((u, v), (a, b)) in enumerate(zip(inst.graph.edges, inst.pairs))
                if c[u] == a and c[v] == b)
    return Violations(edges=bad)


def out_colours(inst: ConflictInstance, head: Sequence[int]) -> list[dict[int, int]]:
    """Per vertex, local colour -> first out-edge carrying it."""
    out: list[dict[int, int]] = [{} for _ in range(inst.n)]
    for e, ((u, v), (a, b)) in enumerate(zip(inst.graph.edges, inst.pairs)):
        if head[e] == v:
            out[u].setdefault(a, e)
        else:
            out[v].setdefault(b, e)
    return out


def validate_orientation(inst: ConflictInstance, head: Sequence[int]) -> Violations:
    """Vertices whose out-edges carry every colour of ``[k]``.

    Each failing vertex is witnessed by one out-edge per colour.
    """
    _check_orientation(inst, head)
    bad_vertices = []
    witness: list[int] = []
    for v, cols in enumerate(out_colours(inst, head)):
        if len(cols) == inst.k:
            bad_vertices.append(v)
            witness.extend(cols[i] for i in range(1, inst.k + 1))
    return Violations(edges=tuple(witness), vertices=tuple(bad_vertices))


def colouring_from_orientation(inst: ConflictInstance, head: Sequence[int]) -> Colouring:
    """Give each vertex the lowest colour absent from its out-edges."""
    if validate_orientation(inst, head):
        raise InstanceError("orientation is not a conflict orientation")
    colours = []
    for cols in out_colours(inst, head):
        x = 1
        while x in cols:
            x += 1
        colours.append(x)
    return tuple(colours)


def orientation_from_colouring(inst: ConflictInstance, c: Sequence[int]) -> Orientation:
    """Point each edge at the endpoint whose local colour it uses.

    Edges matching neither endpoint go to the lower-id endpoint.
    """
    if validate_colouring(inst, c):
        raise InstanceError("colouring is not a conflict colouring")
    head = []
    for (u, v), (a, b) in zip(inst.graph.edges, inst.pairs):
        if c[v] == b:
            head.append(v)
        elif c[u] == a:
            head.append(u)
        else:
            head.append(min(u, v))
    return tuple(head)
