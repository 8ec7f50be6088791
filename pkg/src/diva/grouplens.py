"""Correlation-weighted collaborative filtering baseline.

Similarity between two users is the Pearson correlation of their ratings over
the items both rated; predictions are the active user's mean plus a
correlation-weighted sum of the neighbors' mean-centered votes. The measure
deliberately keeps its classic weaknesses (no overlap-size sensitivity, no
minimum-overlap threshold by default) because it is the comparison yardstick,
not the product.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from .casebase import CaseBase
from .orders import ItemId, ValidationError

RatingVector = Mapping[ItemId, float]


def pearson(a: RatingVector, u: RatingVector) -> float | None:
    """Pearson correlation over the items rated by both; None when undefined
    (fewer than 2 common items, or zero variance on the intersection)."""
    common = sorted(set(a) & set(u))
    if len(common) < 2:
        return None
    xs = [a[i] for i in common]
    ys = [u[i] for i in common]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        return None
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _mean(v: RatingVector) -> float:
    return sum(v.values()) / len(v)


class NeighborModel:
    """Precomputed correlations and means of one active user against a case base.

    Splitting this out keeps repeated predictions cheap; the functional
    predict() below is the single-item convenience wrapper.
    """

    def __init__(self, active: RatingVector, cb: CaseBase, min_overlap: int | None = None):
        if not active:
            raise ValidationError("active user has no ratings")
        self.active = dict(active)
        self.active_mean = _mean(active)
        self.correlations: dict[str, float] = {}
        self.neighbor_means: dict[str, float] = {}
        for user in cb.users():
            ratings = cb.raw_ratings[user]
            if min_overlap is not None and len(set(active) & set(ratings)) < min_overlap:
                continue
            r = pearson(active, ratings)
            if r is None:
                continue  # undefined correlations are skipped, not zero-filled
            self.correlations[user] = r
            self.neighbor_means[user] = _mean(ratings)
        self._ratings = cb.raw_ratings

    def predict(self, item: ItemId) -> float:
        """Predicted rating for ``item``, clamped to [0, 1].

        Falls back to the active user's mean when no correlated neighbor rated
        the item. A negative correlation contributes the mirror image of that
        neighbor's vote.
        """
        num = 0.0
        den = 0.0
        for user, r in self.correlations.items():
            vote = self._ratings[user].get(item)
            if vote is None:
                continue
            num += r * (vote - self.neighbor_means[user])
            den += abs(r)
        if den == 0.0:
            return min(1.0, max(0.0, self.active_mean))
        return min(1.0, max(0.0, self.active_mean + num / den))


def predict(active: RatingVector, item: ItemId, cb: CaseBase,
            min_overlap: int | None = None) -> float:
    """One-shot correlation-weighted prediction of ``item`` for ``active``."""
    return NeighborModel(active, cb, min_overlap=min_overlap).predict(item)


def baseline_recommend(active: RatingVector, cb: CaseBase, candidates: Iterable[ItemId],
                       n: int, min_overlap: int | None = None) -> list[ItemId]:
    """Candidates sorted by predicted rating (descending, ties by item id),
    truncated to n. Candidates the active user happens to have rated are
    still predicted from neighbors only."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    model = NeighborModel(active, cb, min_overlap=min_overlap)
    scored = sorted(((item, model.predict(item)) for item in set(candidates)),
                    key=lambda pair: (-pair[1], pair[0]))
    return [item for item, _ in scored[:n]]
