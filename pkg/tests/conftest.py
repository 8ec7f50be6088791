"""Shared fixtures: small named posets and independent brute-force oracles.

The oracles deliberately avoid the library's own machinery: extensions come
from filtering raw permutations, distances from counting pairs in loops, and
reachability from a plain BFS. Expected values in the tests are frozen from
these, never from the code under test.
"""

from __future__ import annotations

import itertools
from collections import deque

import pytest

from diva.orders import PartialPreference


def brute_extensions(domain, edges) -> list[tuple[str, ...]]:
    """All linear extensions by filtering every permutation (oracle)."""
    domain = sorted(domain)
    edges = set(edges)
    out = []
    for perm in itertools.permutations(domain):
        pos = {item: i for i, item in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in edges):
            out.append(perm)
    return out


def brute_kendall(seq1, seq2) -> float:
    """Normalized count of oppositely ranked pairs (oracle)."""
    items = sorted(seq1)
    assert sorted(seq2) == items
    n = len(items)
    if n < 2:
        return 0.0
    p1 = {item: i for i, item in enumerate(seq1)}
    p2 = {item: i for i, item in enumerate(seq2)}
    discordant = 0
    for a, b in itertools.combinations(items, 2):
        if (p1[a] - p1[b]) * (p2[a] - p2[b]) < 0:
            discordant += 1
    return discordant / (n * (n - 1) / 2)


def brute_reachable(edges, start) -> set[str]:
    """BFS descendants of start under the raw edge set (oracle)."""
    adj: dict[str, set[str]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
    seen: set[str] = set()
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for child in adj.get(node, ()):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def brute_preference_ranking(active, cb, universe, top_k=100):
    """Triple-loop reference for exhaustive-mode ranking completion (oracle).

    Scores every (active extension, case) pair directly with the permutation
    filter and pair-counting oracles above; mirrors the library's comparison
    universe convention (union of constrained items, truncated per side).
    """
    import numpy as np

    from diva.orders import initial_extension

    universe = frozenset(universe)
    act_proj = active.project(universe)
    act_exts = brute_extensions(act_proj.domain, act_proj.edges)
    act_constrained = act_proj.constrained_items()
    best_user, best_dist, best_ext = None, None, None
    for user in sorted(cb.cases):
        case = cb.cases[user]
        hint = initial_extension(case)
        c_top = [x for x in hint if x in case.constrained_items()][:top_k]
        comparison = sorted(act_constrained | (frozenset(c_top) & universe))
        proj = case.project(comparison)
        case_exts = brute_extensions(proj.domain, proj.edges)
        per_ext = []
        for ext in act_exts:
            if len(comparison) < 2:
                per_ext.append(0.0)
                continue
            seq = tuple(x for x in ext if x in set(comparison))
            per_ext.append(float(np.mean([brute_kendall(seq, ce) for ce in case_exts])))
        mean_d = float(np.mean(per_ext))
        if best_dist is None or mean_d < best_dist:
            best_user, best_dist = user, mean_d
            best_ext = act_exts[int(np.argmin(per_ext))]
    return best_ext, best_user, best_dist


def poset(domain, edges=()) -> PartialPreference:
    return PartialPreference(domain, edges)


FIXTURE_POSETS: dict[str, PartialPreference] = {
    "chain3": poset("abc", {("a", "b"), ("b", "c")}),
    "antichain2": poset(["a", "b"]),
    "antichain3": poset(["a", "b", "c"]),
    "antichain4": poset(["a", "b", "c", "d"]),
    "v3": poset(["a", "b", "c"], {("a", "b")}),
    "diamond4": poset("abcd", {("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")}),
    "two_plus_two": poset("abcd", {("a", "b"), ("c", "d")}),
    "n4": poset(["w", "x", "y", "z"], {("w", "y"), ("x", "y"), ("x", "z")}),
    "layers222": poset(
        "pqrstu",
        {(a, b) for a in "pq" for b in "rs"} | {(a, b) for a in "rs" for b in "tu"}
        | {(a, b) for a in "pq" for b in "tu"},
    ),
    "fence5": poset("abcde", {("b", "a"), ("b", "c"), ("d", "c"), ("d", "e")}),
}


@pytest.fixture
def fixture_posets() -> dict[str, PartialPreference]:
    return dict(FIXTURE_POSETS)
