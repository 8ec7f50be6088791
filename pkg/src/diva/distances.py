"""Conflict-probability distances between preference orders.

For two total orders over the same n items the distance is the fraction of
item pairs the orders rank oppositely (normalized Kendall distance, in [0,1]).
For two partial orders it is the average of that distance over pairs of linear
extensions, estimated by sampling or computed exactly by enumeration.
"""

from __future__ import annotations

import numpy as np

from .orders import (
    DomainError,
    PartialPreference,
    TotalOrder,
    enumerate_extensions,
)
from .sampling import SamplerConfig, make_rng, sample_extensions


def total_order_distance(t1: TotalOrder, t2: TotalOrder) -> float:
    """Fraction of unordered item pairs ranked oppositely by t1 and t2."""
    if t1.domain != t2.domain:
        raise DomainError("orders must range over the same items")
    n = len(t1)
    if n < 2:
        return 0.0
    items = sorted(t1.domain)
    d = pairwise_order_distances([t1], [t2], items)
    return float(d[0, 0])


def rank_matrix(orders: list[TotalOrder], items: list[str]) -> np.ndarray:
    """(len(orders), len(items)) array of item ranks within each order."""
    out = np.empty((len(orders), len(items)), dtype=np.int64)
    for k, order in enumerate(orders):
        pos = order.positions()
        for j, item in enumerate(items):
            out[k, j] = pos[item]
    return out


def _sign_profiles(ranks: np.ndarray) -> np.ndarray:
    # per order, flattened sign matrix of rank differences over item pairs
    diff = ranks[:, :, None] - ranks[:, None, :]
    return np.sign(diff).astype(np.int8).reshape(ranks.shape[0], -1)


def pairwise_order_distances(orders_a: list[TotalOrder], orders_b: list[TotalOrder],
                             items: list[str]) -> np.ndarray:
    """Distance matrix between two families of total orders over ``items``."""
    if len(items) < 2:
        return np.zeros((len(orders_a), len(orders_b)))
    return pairwise_rank_distances(rank_matrix(orders_a, items), rank_matrix(orders_b, items))


def pairwise_rank_distances(ranks_a: np.ndarray, ranks_b: np.ndarray) -> np.ndarray:
    """Distance matrix from (count, n) rank arrays over a shared item axis.

    Ranks only need to be order-consistent, not contiguous. Uses the identity
    (concordant - discordant) = <S_a, S_b>/2 on sign profiles, so the whole
    grid is one matrix product.
    """
    n = ranks_a.shape[1]
    total_pairs = n * (n - 1) / 2.0
    if n < 2:
        return np.zeros((ranks_a.shape[0], ranks_b.shape[0]))
    # float32 accumulation is exact here: every addend is +-1 and |sums| <= n^2 < 2^24
    sa = _sign_profiles(ranks_a).astype(np.float32)
    sb = _sign_profiles(ranks_b).astype(np.float32)
    gram = (sa @ sb.T).astype(np.float64) / 2.0  # concordant minus discordant
    discordant = (total_pairs - gram) / 2.0
    return discordant / total_pairs


def partial_distance(p1: PartialPreference, p2: PartialPreference, cfg: SamplerConfig,
                     universe: frozenset[str] | set[str]) -> float:
    """Estimated mean conflict probability between two partial orders.

    Both structures are reinterpreted over ``universe``; cfg.num_extensions
    extensions are drawn for each side and the num_extensions^2 pair distances
    are averaged. With cfg.exhaustive the exact average is returned instead.
    """
    universe = frozenset(universe)
    if len(universe) < 2:
        return 0.0
    if cfg.exhaustive:
        return exact_partial_distance(p1, p2, universe)
    q1 = p1.project(universe)
    q2 = p2.project(universe)
    rng1, rng2 = make_rng(cfg.seed).spawn(2)
    ext1 = sample_extensions(q1, cfg.num_extensions, cfg.num_iterations, rng1,
                             position_weighting=cfg.position_weighting)
    ext2 = sample_extensions(q2, cfg.num_extensions, cfg.num_iterations, rng2,
                             position_weighting=cfg.position_weighting)
    items = sorted(universe)
    return float(pairwise_order_distances(ext1, ext2, items).mean())


def exact_partial_distance(p1: PartialPreference, p2: PartialPreference,
                           universe: frozenset[str] | set[str], cap: int = 10) -> float:
    """Exact mean conflict probability, averaging over the full cross product
    of linear extensions. Only for small instances (test oracle)."""
    universe = frozenset(universe)
    if len(universe) < 2:
        return 0.0
    ext1 = enumerate_extensions(p1.project(universe), cap=cap)
    ext2 = enumerate_extensions(p2.project(universe), cap=cap)
    items = sorted(universe)
    return float(pairwise_order_distances(ext1, ext2, items).mean())
