"""Strict partial orders over items and their linear extensions.

A preference structure is a DAG whose edge (a, b) reads "a is preferred to b".
Total orders are permutations; a linear extension of a partial order is a
permutation that keeps every preferred item ahead of the items it beats.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

ItemId = str

# Refuse exact enumeration above this many items unless the caller widens it;
# the number of extensions grows factorially and enumeration is a test oracle.
ENUMERATION_CAP = 10


class PreferenceError(Exception):
    """Base class for preference-structure errors."""


class ValidationError(PreferenceError):
    """Malformed input: overlapping triage lists, bad ids, illegal values."""


class DomainError(PreferenceError):
    """An item is missing from (or outside) the relevant domain."""


class CycleError(PreferenceError):
    """An edge set contradicts itself. Carries one offending cycle."""

    def __init__(self, message: str, cycle: list[ItemId]):
        super().__init__(message)
        self.cycle = cycle


def _check_item(item: ItemId) -> ItemId:
    if not isinstance(item, str) or not item:
        raise ValidationError(f"item ids must be non-empty strings, got {item!r}")
    return item


@dataclass(frozen=True)
class TriageLists:
    """The three coarse buckets a user sorts movies into: like / ok / dislike."""

    like: frozenset[ItemId] = frozenset()
    ok: frozenset[ItemId] = frozenset()
    dislike: frozenset[ItemId] = frozenset()

    def __post_init__(self):
        for name in ("like", "ok", "dislike"):
            bucket = frozenset(_check_item(i) for i in getattr(self, name))
            object.__setattr__(self, name, bucket)
        dup = (self.like & self.ok) | (self.ok & self.dislike) | (self.like & self.dislike)
        if dup:
            raise ValidationError(
                f"triage lists must be disjoint; {sorted(dup)[0]!r} appears in more than one"
            )

    def items(self) -> frozenset[ItemId]:
        return self.like | self.ok | self.dislike

    def bucket_of(self, item: ItemId) -> str | None:
        for name in ("like", "ok", "dislike"):
            if item in getattr(self, name):
                return name
        return None


class PartialPreference:
    """An immutable strict partial order: a domain plus asserted preference edges.

    Only asserted edges are stored; reachability (the transitive closure) is
    computed lazily and memoized, which keeps ingestion of the dense layered
    structures produced by triage and ratings linear in the edges asserted.
    """

    __slots__ = ("domain", "edges", "_succ", "_constrained")

    def __init__(self, domain: Iterable[ItemId] = (), edges: Iterable[tuple[ItemId, ItemId]] = ()):
        edge_set = frozenset((_check_item(a), _check_item(b)) for a, b in edges)
        for a, b in edge_set:
            if a == b:
                raise CycleError(f"self-edge on {a!r}", [a, a])
        dom = frozenset(_check_item(i) for i in domain)
        dom |= {a for a, _ in edge_set} | {b for _, b in edge_set}
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "edges", edge_set)
        object.__setattr__(self, "_succ", None)
        object.__setattr__(self, "_constrained", None)
        cycle = _find_cycle(self._adjacency())
        if cycle is not None:
            raise CycleError(f"preference edges form a cycle: {' > '.join(cycle)}", cycle)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("PartialPreference is immutable")

    def _adjacency(self) -> dict[ItemId, set[ItemId]]:
        adj: dict[ItemId, set[ItemId]] = {i: set() for i in self.domain}
        for a, b in self.edges:
            adj[a].add(b)
        return adj

    @property
    def successors(self) -> Mapping[ItemId, frozenset[ItemId]]:
        """Item -> every item it is (transitively) preferred to."""
        if self._succ is None:
            adj = self._adjacency()
            succ: dict[ItemId, frozenset[ItemId]] = {}
            for item in _topological(adj, reverse=True):
                acc: set[ItemId] = set()
                for child in adj[item]:
                    acc.add(child)
                    acc |= succ[child]
                succ[item] = frozenset(acc)
            object.__setattr__(self, "_succ", succ)
        return self._succ

    def is_preferred(self, a: ItemId, b: ItemId) -> bool:
        """True iff a is (transitively) preferred to b. Irreflexive."""
        for item in (a, b):
            if item not in self.domain:
                raise DomainError(f"{item!r} is not in the preference domain")
        return b in self.successors[a]

    def incomparable(self, a: ItemId, b: ItemId) -> bool:
        return a != b and not self.is_preferred(a, b) and not self.is_preferred(b, a)

    def constrained_items(self) -> frozenset[ItemId]:
        """Items that participate in at least one asserted edge."""
        if self._constrained is None:
            touched = frozenset(a for a, _ in self.edges) | frozenset(b for _, b in self.edges)
            object.__setattr__(self, "_constrained", touched)
        return self._constrained

    def with_edges(self, new_edges: Iterable[tuple[ItemId, ItemId]]) -> "PartialPreference":
        """New structure with extra edges; endpoints extend the domain."""
        return PartialPreference(self.domain, set(self.edges) | set(tuple(e) for e in new_edges))

    def restrict(self, items: Iterable[ItemId]) -> "PartialPreference":
        """Induced sub-order on ``items``: the reachability relation among them."""
        kept = frozenset(items) & self.domain
        succ = self.successors
        edges = {(a, b) for a in kept for b in succ[a] & kept}
        return PartialPreference(kept, edges)

    def project(self, universe: Iterable[ItemId]) -> "PartialPreference":
        """Reinterpret over ``universe``: constraints outside it are dropped,
        items of the universe this structure never constrained are free."""
        universe = frozenset(universe)
        inside = self.restrict(universe)
        return PartialPreference(universe, inside.edges)

    def __eq__(self, other):
        if not isinstance(other, PartialPreference):
            return NotImplemented
        return self.domain == other.domain and self.edges == other.edges

    def __hash__(self):
        return hash((self.domain, self.edges))

    def __repr__(self):
        return f"PartialPreference({len(self.domain)} items, {len(self.edges)} edges)"


@dataclass(frozen=True)
class TotalOrder:
    """A permutation of its domain, best item first."""

    sequence: tuple[ItemId, ...]

    def __post_init__(self):
        seq = tuple(_check_item(i) for i in self.sequence)
        if len(set(seq)) != len(seq):
            raise ValidationError("total order contains duplicate items")
        object.__setattr__(self, "sequence", seq)

    @property
    def domain(self) -> frozenset[ItemId]:
        return frozenset(self.sequence)

    def positions(self) -> dict[ItemId, int]:
        return {item: i for i, item in enumerate(self.sequence)}

    def restrict(self, items: Iterable[ItemId]) -> "TotalOrder":
        keep = frozenset(items)
        return TotalOrder(tuple(i for i in self.sequence if i in keep))

    def extends(self, p: PartialPreference) -> bool:
        """True iff every asserted edge of p is respected by this order."""
        pos = self.positions()
        if not p.domain <= self.domain:
            return False
        return all(pos[a] < pos[b] for a, b in p.edges)

    def __iter__(self) -> Iterator[ItemId]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)


def _order_unchecked(sequence: tuple[ItemId, ...]) -> TotalOrder:
    # fast constructor for sequences already known to be permutations
    order = object.__new__(TotalOrder)
    object.__setattr__(order, "sequence", sequence)
    return order


def order_from_triage(triage: TriageLists) -> PartialPreference:
    """Three-layer order: every liked item beats every ok item beats every
    disliked item (and liked beats disliked). Items inside one bucket stay
    incomparable."""
    edges: set[tuple[ItemId, ItemId]] = set()
    for upper, lower in ((triage.like, triage.ok), (triage.ok, triage.dislike), (triage.like, triage.dislike)):
        edges |= {(a, b) for a in upper for b in lower}
    return PartialPreference(triage.items(), edges)


def add_edges(p: PartialPreference, new_edges: Iterable[tuple[ItemId, ItemId]]) -> PartialPreference:
    """Add preference edges, extending the domain as needed.

    Raises CycleError (naming one offending cycle) if the additions contradict
    the existing structure.
    """
    return p.with_edges(new_edges)


def initial_extension(p: PartialPreference) -> TotalOrder:
    """Deterministic linear extension: topological order, ties broken by
    ascending item id."""
    adj = p._adjacency()
    indeg = {i: 0 for i in p.domain}
    for a, b in p.edges:
        indeg[b] += 1
    ready = [i for i, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    out: list[ItemId] = []
    while ready:
        item = heapq.heappop(ready)
        out.append(item)
        for child in adj[item]:
            indeg[child] -= 1
            if indeg[child] == 0:
                heapq.heappush(ready, child)
    return TotalOrder(tuple(out))


def enumerate_extensions(p: PartialPreference, cap: int = ENUMERATION_CAP) -> list[TotalOrder]:
    """Every linear extension of p, exactly once, in lexicographic order.

    This is an exact oracle for small structures; domains larger than ``cap``
    items are refused.
    """
    if len(p.domain) > cap:
        raise ValidationError(
            f"refusing to enumerate extensions of {len(p.domain)} items (cap {cap}); "
            "enumeration is exponential and meant for small instances"
        )
    adj = p._adjacency()
    indeg = {i: 0 for i in p.domain}
    for a, b in p.edges:
        indeg[b] += 1
    prefix: list[ItemId] = []
    taken: set[ItemId] = set()
    out: list[TotalOrder] = []

    def walk():
        if len(prefix) == len(p.domain):
            out.append(TotalOrder(tuple(prefix)))
            return
        for item in sorted(i for i, d in indeg.items() if d == 0 and i not in taken):
            taken.add(item)
            prefix.append(item)
            for child in adj[item]:
                indeg[child] -= 1
            walk()
            for child in adj[item]:
                indeg[child] += 1
            prefix.pop()
            taken.discard(item)

    walk()
    return out


def _topological(adj: Mapping[ItemId, set[ItemId]], reverse: bool = False) -> list[ItemId]:
    indeg = {i: 0 for i in adj}
    for a in adj:
        for b in adj[a]:
            indeg[b] += 1
    stack = [i for i, d in indeg.items() if d == 0]
    out: list[ItemId] = []
    while stack:
        item = stack.pop()
        out.append(item)
        for child in adj[item]:
            indeg[child] -= 1
            if indeg[child] == 0:
                stack.append(child)
    if len(out) != len(adj):
        raise CycleError("graph is not acyclic", _find_cycle(adj) or [])
    return out[::-1] if reverse else out


def _find_cycle(adj: Mapping[ItemId, set[ItemId]]) -> list[ItemId] | None:
    """Return one cycle as [`v0`, ..., `v0`], or None if the graph is a DAG."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {i: WHITE for i in adj}
    parent: dict[ItemId, ItemId | None] = {}

    for root in adj:
        if color[root] != WHITE:
            continue
        stack: list[tuple[ItemId, Iterator[ItemId]]] = [(root, iter(sorted(adj[root])))]
        color[root] = GREY
        parent[root] = None
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if color[child] == GREY:
                    back = [node]
                    cur = node
                    while cur != child:
                        cur = parent[cur]  # type: ignore[assignment]
                        back.append(cur)
                    back.reverse()  # child .. node
                    back.append(child)  # close the loop
                    return back
                if color[child] == WHITE:
                    color[child] = GREY
                    parent[child] = node
                    stack.append((child, iter(sorted(adj[child]))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return None
