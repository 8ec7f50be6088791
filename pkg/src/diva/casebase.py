"""Ratings ingestion, the movie catalog, and case-based ranking completion.

The case base stores one partial preference structure per historical user
(derived from their numeric ratings) plus the raw ratings themselves, which
the correlation baseline needs. Ranking completion finds the stored user whose
structure conflicts least with the active user's and returns the sampled
linear extension of the active structure that agrees best with that user.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .distances import pairwise_rank_distances, rank_matrix
from .orders import (
    DomainError,
    ItemId,
    PartialPreference,
    TotalOrder,
    ValidationError,
    enumerate_extensions,
    initial_extension,
)
from .sampling import SamplerConfig, make_rng, sample_extensions, sample_states

RATING_LEVELS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
DEFAULT_TOP_K = 100

RATINGS_HEADER = ["user_id", "item_id", "rating"]
MOVIES_HEADER = ["id", "title", "director", "actors", "genres", "star_rating",
                 "mpaa", "country", "runtime_minutes", "year"]


class CaseBaseError(Exception):
    pass


class EmptyCaseBaseError(CaseBaseError):
    """No stored users to rank against; fall back to catalog star-rating order."""


class ElicitationError(CaseBaseError):
    """The active structure has no preferences yet; triage some movies first."""


def snap_rating(value: float) -> float:
    """Map a float to the legal rating grid, or raise if it is off-grid."""
    for level in RATING_LEVELS:
        if abs(value - level) < 1e-9:
            return level
    raise ValidationError(f"rating {value!r} is not one of the six legal levels")


@dataclass(frozen=True)
class RatingRecord:
    user: str
    item: ItemId
    rating: float

    def __post_init__(self):
        if not self.user:
            raise ValidationError("user id must be non-empty")
        if not self.item:
            raise ValidationError("item id must be non-empty")
        object.__setattr__(self, "rating", snap_rating(self.rating))


@dataclass(frozen=True)
class MovieRecord:
    id: ItemId
    title: str
    director: str
    actors: tuple[str, ...]
    genres: tuple[str, ...]
    star_rating: float
    mpaa: str
    country: str
    runtime_minutes: int
    year: int

    def __post_init__(self):
        if not self.id:
            raise ValidationError("movie id must be non-empty")
        if not 0.0 <= self.star_rating <= 5.0:
            raise ValidationError(f"star rating {self.star_rating} outside 0.0-5.0")
        if not 1880 <= self.year <= 2100:
            raise ValidationError(f"implausible year {self.year}")
        if self.runtime_minutes <= 0:
            raise ValidationError("runtime must be positive")
        object.__setattr__(self, "actors", tuple(self.actors))
        object.__setattr__(self, "genres", tuple(self.genres))


@dataclass
class IngestReport:
    """What ingestion kept and why it dropped the rest."""

    rejected: list[tuple[int, str]] = field(default_factory=list)
    dropped_users: list[str] = field(default_factory=list)
    kept_users: int = 0
    kept_ratings: int = 0

    def reject(self, line: int, reason: str) -> None:
        self.rejected.append((line, reason))


class CaseBase:
    """Immutable collection of per-user preference structures and raw ratings."""

    def __init__(self, raw_ratings: Mapping[str, Mapping[ItemId, float]]):
        self.raw_ratings: dict[str, dict[ItemId, float]] = {
            user: dict(ratings) for user, ratings in raw_ratings.items()
        }
        self.cases: dict[str, PartialPreference] = {
            user: ratings_to_partial(ratings) for user, ratings in self.raw_ratings.items()
        }
        self._hints: dict[str, TotalOrder] = {}

    def ranking_hint(self, user: str) -> TotalOrder:
        """Deterministic full ranking of a stored user's items (cached)."""
        if user not in self._hints:
            self._hints[user] = initial_extension(self.cases[user])
        return self._hints[user]

    def users(self) -> list[str]:
        return sorted(self.cases)

    def items(self) -> frozenset[ItemId]:
        out: set[ItemId] = set()
        for ratings in self.raw_ratings.values():
            out.update(ratings)
        return frozenset(out)

    def without(self, users: Iterable[str]) -> "CaseBase":
        drop = set(users)
        return CaseBase({u: r for u, r in self.raw_ratings.items() if u not in drop})

    def __len__(self) -> int:
        return len(self.cases)

    def __contains__(self, user: str) -> bool:
        return user in self.cases

    def __eq__(self, other):
        if not isinstance(other, CaseBase):
            return NotImplemented
        return self.raw_ratings == other.raw_ratings


@dataclass(frozen=True)
class RankingResult:
    """A completed ranking plus the stored user that guided it."""

    order: TotalOrder
    matched_user: str
    distance: float


def ratings_to_partial(ratings: Mapping[ItemId, float]) -> PartialPreference:
    """Numeric ratings to a partial order: higher rating means preferred,
    equal ratings stay incomparable."""
    by_level: dict[float, list[ItemId]] = {}
    for item, value in ratings.items():
        by_level.setdefault(snap_rating(value), []).append(item)
    levels = sorted(by_level, reverse=True)
    edges: set[tuple[ItemId, ItemId]] = set()
    for i, hi in enumerate(levels):
        for lo in levels[i + 1:]:
            edges |= {(a, b) for a in by_level[hi] for b in by_level[lo]}
    return PartialPreference(ratings.keys(), edges)


def ingest_ratings(records: Iterable[RatingRecord | tuple[int, RatingRecord]],
                   min_ratings: int = 20) -> tuple[CaseBase, IngestReport]:
    """Build a case base from rating records.

    Accepts plain records or (line_number, record) pairs; bad records are
    rejected individually (reported with their line), and users with fewer
    than ``min_ratings`` retained ratings are dropped.
    """
    report = IngestReport()
    per_user: dict[str, dict[ItemId, float]] = {}
    for line, record in _with_lines(records):
        if isinstance(record, Exception):
            report.reject(line, str(record))
            continue
        user_map = per_user.setdefault(record.user, {})
        if record.item in user_map:
            report.reject(line, f"duplicate rating for ({record.user}, {record.item})")
            continue
        user_map[record.item] = record.rating
    kept = {}
    for user in sorted(per_user):
        if len(per_user[user]) >= min_ratings:
            kept[user] = per_user[user]
        else:
            report.dropped_users.append(user)
    report.kept_users = len(kept)
    report.kept_ratings = sum(len(r) for r in kept.values())
    return CaseBase(kept), report


def _with_lines(records) -> Iterator[tuple[int, RatingRecord | Exception]]:
    for i, entry in enumerate(records, start=1):
        if isinstance(entry, tuple) and len(entry) == 2 and isinstance(entry[0], int):
            yield entry  # pre-numbered (CSV reader path)
        else:
            yield i, entry


def read_ratings_csv(path: str | Path) -> Iterator[tuple[int, RatingRecord | Exception]]:
    """Yield (line_number, record-or-error) rows; raises only on a bad header."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != RATINGS_HEADER:
            raise ValidationError(f"ratings file must start with header {','.join(RATINGS_HEADER)}")
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                if len(row) != 3:
                    raise ValidationError(f"expected 3 fields, got {len(row)}")
                yield line, RatingRecord(row[0], row[1], float(row[2]))
            except (ValidationError, ValueError) as err:
                yield line, ValidationError(str(err))


def write_ratings_csv(path: str | Path, records: Iterable[RatingRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(RATINGS_HEADER)
        for rec in records:
            writer.writerow([rec.user, rec.item, f"{rec.rating:.1f}"])


def read_movies_csv(path: str | Path) -> list[MovieRecord]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != MOVIES_HEADER:
            raise ValidationError(f"movies file must start with header {','.join(MOVIES_HEADER)}")
        movies = []
        for row in reader:
            if not row:
                continue
            movies.append(MovieRecord(
                id=row[0], title=row[1], director=row[2],
                actors=tuple(a for a in row[3].split("|") if a),
                genres=tuple(g for g in row[4].split("|") if g),
                star_rating=float(row[5]), mpaa=row[6], country=row[7],
                runtime_minutes=int(row[8]), year=int(row[9]),
            ))
    return movies


def write_movies_csv(path: str | Path, movies: Iterable[MovieRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(MOVIES_HEADER)
        for m in movies:
            writer.writerow([m.id, m.title, m.director, "|".join(m.actors), "|".join(m.genres),
                             f"{m.star_rating:.1f}", m.mpaa, m.country, m.runtime_minutes, m.year])


def restrict_top_k(p: PartialPreference, k: int, ranking_hint: TotalOrder) -> PartialPreference:
    """Induced sub-order of p on the first min(k, |domain|) domain items of the hint."""
    if not p.domain <= ranking_hint.domain:
        missing = sorted(p.domain - ranking_hint.domain)[0]
        raise DomainError(f"ranking hint does not cover {missing!r}")
    kept = [item for item in ranking_hint if item in p.domain][:max(k, 0)]
    return p.restrict(kept)


def _truncated_items(items: frozenset[ItemId], hint: TotalOrder, k: int) -> frozenset[ItemId]:
    if len(items) <= k:
        return items
    return frozenset([x for x in hint if x in items][:k])


@dataclass(frozen=True)
class _CaseScore:
    user: str
    distance: float
    per_extension: np.ndarray  # mean distance of each active extension to this case


def _scan_cases(active: PartialPreference, cb: CaseBase, cfg: SamplerConfig,
                universe: frozenset[ItemId], top_k: int) -> tuple[list[TotalOrder], list[_CaseScore]]:
    """Shared retrieval loop: sampled active extensions plus per-case distances.

    Distances are measured on the comparison universe of each case: the union
    of the two users' constrained items, each side truncated to its top ``k``
    (the case side ranked by its deterministic initial extension, the active
    side by the sampled extension itself), then clipped to the ranking
    universe so both orders cover it.
    """
    universe = frozenset(universe)
    if not active.domain <= universe:
        missing = sorted(active.domain - universe)[0]
        raise DomainError(f"ranking universe does not cover {missing!r}")
    if not cb.cases:
        raise EmptyCaseBaseError("case base is empty; fall back to the catalog star-rating order")
    if not active.edges:
        raise ElicitationError(
            "active user has no elicited preferences; collect at least a few items per triage list first"
        )

    active_u = active.project(universe)
    rng = make_rng(cfg.seed)
    users = sorted(cb.cases)
    rng_active, *rng_cases = rng.spawn(1 + len(users))
    if cfg.exhaustive:
        active_exts = enumerate_extensions(active_u)
    else:
        active_exts = sample_extensions(active_u, cfg.num_extensions, cfg.num_iterations,
                                        rng_active, position_weighting=cfg.position_weighting)
    active_constrained = active_u.constrained_items()
    items_u = sorted(universe)
    col_of = {item: j for j, item in enumerate(items_u)}
    active_ranks = rank_matrix(active_exts, items_u)

    scores: list[_CaseScore] = []
    for user, case_rng in zip(users, rng_cases):
        case = cb.cases[user]
        case_side = _truncated_items(case.constrained_items(), cb.ranking_hint(user), top_k) & universe
        if len(active_constrained) <= top_k:
            # every active extension shares one comparison universe
            shared = sorted(active_constrained | case_side)
            case_ranks = _sampled_case_ranks(case, shared, cfg, case_rng)
            if case_ranks is None:
                per_ext = np.zeros(len(active_exts))
            else:
                cols = [col_of[c] for c in shared]
                per_ext = pairwise_rank_distances(active_ranks[:, cols], case_ranks).mean(axis=1)
        else:
            rows = []
            for k, ext in enumerate(active_exts):
                act_side = _truncated_items(active_constrained, ext, top_k)
                comparison = sorted(act_side | case_side)
                case_ranks = _sampled_case_ranks(case, comparison, cfg, case_rng)
                if case_ranks is None:
                    rows.append(0.0)
                    continue
                cols = [col_of[c] for c in comparison]
                rows.append(float(pairwise_rank_distances(active_ranks[k:k + 1, cols],
                                                          case_ranks).mean()))
            per_ext = np.array(rows)
        scores.append(_CaseScore(user, float(per_ext.mean()), per_ext))
    return active_exts, scores


def _sampled_case_ranks(case: PartialPreference, comparison: Sequence[ItemId],
                        cfg: SamplerConfig, rng: np.random.Generator) -> np.ndarray | None:
    """Ranks (one row per sampled extension, columns following ``comparison``)
    of the case structure reinterpreted over the comparison universe.

    Equivalent to projecting the case onto the comparison items and sampling
    with the standard initial extension, but built directly from the memoized
    closure so no intermediate structures are allocated.
    """
    n = len(comparison)
    if n < 2:
        return None
    if cfg.exhaustive:
        exts = enumerate_extensions(case.project(comparison))
        return rank_matrix(exts, list(comparison))
    succ = case.successors
    inside = [item for item in comparison if item in case.domain]
    children = {a: succ[a] & frozenset(comparison) for a in inside}
    start = _kahn_order(comparison, children)
    index_in_start = {item: k for k, item in enumerate(start)}
    pref = np.zeros((n, n), dtype=bool)
    for a in inside:
        row = index_in_start[a]
        for b in children[a]:
            pref[row, index_in_start[b]] = True
    states = sample_states(pref, cfg.num_extensions, cfg.num_iterations, rng,
                           cfg.position_weighting)
    # states hold positions of start-indexed items; convert to ranks per comparison column
    ranks_by_start = np.empty_like(states)
    cols = np.arange(n)
    for s in range(states.shape[0]):
        ranks_by_start[s, states[s]] = cols
    order = [index_in_start[item] for item in comparison]
    return ranks_by_start[:, order]


def _kahn_order(items: Sequence[ItemId], children: Mapping[ItemId, frozenset[ItemId]]) -> list[ItemId]:
    """Topological order of ``items`` under closure edges, ties by ascending id;
    matches initial_extension of the projected structure."""
    import heapq

    indeg = {i: 0 for i in items}
    for a, kids in children.items():
        for b in kids:
            indeg[b] += 1
    ready = [i for i, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    out: list[ItemId] = []
    while ready:
        item = heapq.heappop(ready)
        out.append(item)
        for child in children.get(item, ()):
            indeg[child] -= 1
            if indeg[child] == 0:
                heapq.heappush(ready, child)
    return out


def preference_ranking(active: PartialPreference, cb: CaseBase, cfg: SamplerConfig,
                       universe: Iterable[ItemId], top_k: int = DEFAULT_TOP_K) -> RankingResult:
    """Complete the active user's partial order into a full ranking of the universe.

    Samples extensions of the active structure, finds the stored user whose
    structure conflicts least with them on average, and returns the sampled
    extension closest to that user. The result is always a linear extension of
    the active structure, so every directly elicited preference survives.
    Ties (between stored users, or between extensions) break toward the
    smaller user id and the earlier sample.
    """
    active_exts, scores = _scan_cases(active, cb, cfg, frozenset(universe), top_k)
    best = min(scores, key=lambda s: (s.distance, s.user))
    idx = int(np.argmin(best.per_extension))
    return RankingResult(order=active_exts[idx], matched_user=best.user, distance=best.distance)


def nearest_cases(active: PartialPreference, cb: CaseBase, cfg: SamplerConfig, m: int,
                  universe: Iterable[ItemId], top_k: int = DEFAULT_TOP_K) -> list[tuple[str, float]]:
    """The m stored users closest to the active structure, ascending distance,
    ties broken by user id."""
    if m < 1:
        raise ValidationError("m must be >= 1")
    _, scores = _scan_cases(active, cb, cfg, frozenset(universe), top_k)
    ranked = sorted(scores, key=lambda s: (s.distance, s.user))
    return [(s.user, s.distance) for s in ranked[:m]]
