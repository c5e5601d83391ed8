"""Translations into conflict instances.

* conflict lists ``K(u, v)`` on a simple graph -> one parallel edge per pair
* adaptable list colouring (lists ``L``, edge labels) -> conflict instance
* separation list colouring (lists meeting in at most one colour) -> conflict instance

List colours are decoded positionally: instance colour ``i`` at ``v`` is the
``i``-th smallest element of ``L(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from conflictcol.model import ConflictInstance, InstanceError, Multigraph


@dataclass(frozen=True)
class ConflictListAssignment:
    n: int
    k: int
    # (u, v) -> ordered pairs (colour at u, colour at v)
    conflicts: Mapping[tuple[int, int], Sequence[tuple[int, int]]]
    mu: int | None = None

    def __post_init__(self):
        seen = set()
        for (u, v), pairs in self.conflicts.items():
            key = (min(u, v), max(u, v))
            if u == v:
                raise InstanceError(f"conflict list on loop ({u}, {v})")
            if key in seen:
                raise InstanceError(f"pair {key} listed twice; the underlying graph must be simple")
            seen.add(key)
            if len(set(pairs)) != len(pairs):
                raise InstanceError(f"duplicate conflict in K({u}, {v})")
            if self.mu is not None and len(pairs) > self.mu:
                raise InstanceError(f"K({u}, {v}) has {len(pairs)} conflicts, more than mu={self.mu}")
            for a, b in pairs:
                if not (1 <= a <= self.k and 1 <= b <= self.k):
                    raise InstanceError(f"conflict ({a}, {b}) on ({u}, {v}) outside [1, {self.k}]")


def conflict_lists_to_instance(lists: ConflictListAssignment) -> ConflictInstance:
    edges, pairs = [], []
    for (u, v), conflicts in sorted(lists.conflicts.items()):
        for pair in conflicts:
            edges.append((u, v))
            pairs.append(pair)
    return ConflictInstance(Multigraph(lists.n, tuple(edges)), lists.k, tuple(pairs))


def _normalise_lists(graph: Multigraph, lists: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    if len(lists) != graph.n:
        raise InstanceError(f"{len(lists)} lists for {graph.n} vertices")
    out = tuple(tuple(sorted(x)) for x in lists)
    sizes = {len(x) for x in out}
    if len(sizes) > 1:
        raise InstanceError(f"lists must share one size, got sizes {sorted(sizes)}")
    for v, x in enumerate(out):
        if len(set(x)) != len(x):
            raise InstanceError(f"vertex {v}: repeated colour in list")
        if not x:
            raise InstanceError(f"vertex {v}: empty list")
        if any(c < 1 for c in x):
            raise InstanceError(f"vertex {v}: list colours must be positive integers")
    return out


@dataclass(frozen=True)
class AdaptableInstance:
    graph: Multigraph
    lists: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", _normalise_lists(self.graph, self.lists))
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.graph.m:
            raise InstanceError(f"{len(labels)} labels for {self.graph.m} edges")
        for e, x in enumerate(labels):
            if x < 1:
                raise InstanceError(f"edge {e}: label must be a positive integer")

    @property
    def k(self) -> int:
        return len(self.lists[0]) if self.lists else 0


@dataclass(frozen=True)
class SeparationInstance:
    """Lists are not required to be separated here; see ``check_separation``."""

    graph: Multigraph
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", _normalise_lists(self.graph, self.lists))

    @property
    def k(self) -> int:
        return len(self.lists[0]) if self.lists else 0


@dataclass(frozen=True)
class ListDecoding:
    """Positional translation between instance colours and list colours."""

    lists: tuple[tuple[int, ...], ...]

    def decode(self, colouring: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.lists[v][i - 1] for v, i in enumerate(colouring))

    def encode(self, list_colouring: Sequence[int]) -> tuple[int, ...]:
        out = []
        for v, x in enumerate(list_colouring):
            try:
                out.append(self.lists[v].index(x) + 1)
            except ValueError:
                raise InstanceError(f"vertex {v}: colour {x} not in its list") from None
        return tuple(out)


def _reduce(graph: Multigraph, lists, shared_colour) -> tuple[ConflictInstance, ListDecoding]:
    index = [{c: i + 1 for i, c in enumerate(x)} for x in lists]
    edges, pairs = [], []
    for e, (u, v) in enumerate(graph.edges):
        x = shared_colour(e, u, v)
        if x is None:
            continue
        edges.append((u, v))
        pairs.append((index[u][x], index[v][x]))
    k = len(lists[0]) if lists else 1
    return ConflictInstance(Multigraph(graph.n, tuple(edges)), k, tuple(pairs)), ListDecoding(lists)


def adaptable_to_conflict(inst: AdaptableInstance) -> tuple[ConflictInstance, ListDecoding]:
    """An edge constrains its endpoints only when its label lies in both lists.

    Edges whose label misses a list are dropped.
    """
    sets = [set(x) for x in inst.lists]

    def shared(e, u, v):
        x = inst.labels[e]
        return x if x in sets[u] and x in sets[v] else None

    return _reduce(inst.graph, inst.lists, shared)


def separation_to_conflict(inst: SeparationInstance) -> tuple[ConflictInstance, ListDecoding]:
    sets = [set(x) for x in inst.lists]

    def shared(e, u, v):
        common = sets[u] & sets[v]
        if len(common) > 1:
            raise InstanceError(f"edge {e} ({u}, {v}): lists share {len(common)} colours")
        return next(iter(common)) if common else None

    return _reduce(inst.graph, inst.lists, shared)


def check_adapted(inst: AdaptableInstance, colouring: Sequence[int]) -> bool:
    """True iff no edge has both endpoints coloured with its label."""
    if len(colouring) != inst.graph.n:
        raise InstanceError(f"colouring has {len(colouring)} entries for {inst.graph.n} vertices")
    for v, x in enumerate(colouring):
        if x not in inst.lists[v]:
            raise InstanceError(f"vertex {v}: colour {x} not in its list")
    return all(not (colouring[u] == colouring[v] == inst.labels[e])
               for e, (u, v) in enumerate(inst.graph.edges))


def check_separation(inst: SeparationInstance) -> bool:
    sets = [set(x) for x in inst.lists]
    return all(len(sets[u] & sets[v]) <= 1 for u, v in inst.graph.edges)


def check_proper_list_colouring(graph: Multigraph, lists, colouring: Sequence[int]) -> bool:
    if any(x not in lists[v] for v, x in enumerate(colouring)):
        return False
    return all(colouring[u] != colouring[v] for u, v in graph.edges)
