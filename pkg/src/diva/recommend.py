"""Short-term search constraints, recommendation lists, and feedback merging.

Constraints are an initial filter over the catalog; when a search is too
narrow to fill the requested list the same predicates are re-evaluated as a
disjunction instead of a conjunction. Session feedback lives next to, never
inside, the persisted long-term preferences: near-miss/not-even-close tags
only add edges for the current search, while seen-liked/seen-disliked moves
update the stored triage lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .casebase import MovieRecord
from .orders import ItemId, PartialPreference, TotalOrder, TriageLists, ValidationError

LONG_TERM_VERDICTS = ("seen_liked", "seen_disliked", "sure_would_dislike")
SHORT_TERM_TAGS = ("near_miss", "not_even_close")


def _fold(value: str) -> str:
    return value.strip().casefold()


@dataclass(frozen=True)
class ConstraintSet:
    """Per-attribute predicates; absent fields do not constrain.

    ``disjunctive`` flips evaluation from "all predicates" to "any predicate";
    it is set by relax() rather than by hand.
    """

    actors: frozenset[str] | None = None
    directors: frozenset[str] | None = None
    genres: frozenset[str] | None = None
    min_star_rating: float | None = None
    countries: frozenset[str] | None = None
    year_range: tuple[int, int] | None = None
    mpaa: frozenset[str] | None = None
    max_runtime_minutes: int | None = None
    disjunctive: bool = False

    def __post_init__(self):
        for name in ("actors", "directors", "genres", "countries", "mpaa"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, frozenset(_fold(v) for v in value))
        if self.year_range is not None:
            lo, hi = self.year_range
            if lo > hi:
                raise ValidationError(f"year range {lo}-{hi} is not well-ordered")
            object.__setattr__(self, "year_range", (int(lo), int(hi)))

    def predicates(self) -> list:
        """The present predicates, each as movie -> bool."""
        out = []
        if self.actors is not None:
            out.append(lambda m: bool(self.actors & {_fold(a) for a in m.actors}))
        if self.directors is not None:
            out.append(lambda m: _fold(m.director) in self.directors)
        if self.genres is not None:
            out.append(lambda m: bool(self.genres & {_fold(g) for g in m.genres}))
        if self.min_star_rating is not None:
            out.append(lambda m: m.star_rating >= self.min_star_rating)
        if self.countries is not None:
            out.append(lambda m: _fold(m.country) in self.countries)
        if self.year_range is not None:
            out.append(lambda m: self.year_range[0] <= m.year <= self.year_range[1])
        if self.mpaa is not None:
            out.append(lambda m: _fold(m.mpaa) in self.mpaa)
        if self.max_runtime_minutes is not None:
            out.append(lambda m: m.runtime_minutes <= self.max_runtime_minutes)
        return out

    def is_empty(self) -> bool:
        return not self.predicates()

    def matches(self, movie: MovieRecord) -> bool:
        preds = self.predicates()
        if not preds:
            return True
        if self.disjunctive:
            return any(p(movie) for p in preds)
        return all(p(movie) for p in preds)


def filter_movies(catalog: Iterable[MovieRecord], c: ConstraintSet) -> list[MovieRecord]:
    """Movies satisfying the constraint set, catalog order preserved."""
    return [m for m in catalog if c.matches(m)]


def relax(c: ConstraintSet) -> ConstraintSet:
    """Re-read the same predicates as a disjunction. No-op on an empty set;
    idempotent."""
    if c.is_empty() or c.disjunctive:
        return c
    return replace(c, disjunctive=True)


@dataclass(frozen=True)
class Feedback:
    """Per-item feedback from one recommendation list.

    verdicts carry long-term moves (seen_liked / seen_disliked /
    sure_would_dislike); tags carry session-only hints (near_miss /
    not_even_close). A seen verdict excludes a tag for the same item.
    """

    verdicts: Mapping[ItemId, str] = field(default_factory=dict)
    tags: Mapping[ItemId, str] = field(default_factory=dict)

    def __post_init__(self):
        for item, verdict in self.verdicts.items():
            if verdict not in LONG_TERM_VERDICTS:
                raise ValidationError(f"unknown long-term verdict {verdict!r} for {item!r}")
        for item, tag in self.tags.items():
            if tag not in SHORT_TERM_TAGS:
                raise ValidationError(f"unknown short-term tag {tag!r} for {item!r}")
            if self.verdicts.get(item, "").startswith("seen"):
                raise ValidationError(f"{item!r} was seen; short-term tags apply to unseen items")
        object.__setattr__(self, "verdicts", dict(self.verdicts))
        object.__setattr__(self, "tags", dict(self.tags))

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[ItemId, str | None, str | None]]) -> "Feedback":
        """Build from (item, verdict, tag) rows, rejecting conflicting duplicates."""
        verdicts: dict[ItemId, str] = {}
        tags: dict[ItemId, str] = {}
        for item, verdict, tag in rows:
            if verdict:
                if verdicts.get(item, verdict) != verdict:
                    raise ValidationError(f"conflicting verdicts for {item!r}")
                verdicts[item] = verdict
            if tag:
                if tags.get(item, tag) != tag:
                    raise ValidationError(f"conflicting tags for {item!r}")
                tags[item] = tag
        return cls(verdicts, tags)


@dataclass
class SessionState:
    """Short-term state of one search session; discarded when the search ends."""

    constraints: ConstraintSet = field(default_factory=ConstraintSet)
    near_miss: set[ItemId] = field(default_factory=set)
    not_even_close: set[ItemId] = field(default_factory=set)
    shown: set[ItemId] = field(default_factory=set)

    def apply_tags(self, fb: Feedback) -> None:
        """Record short-term tags; a new tag replaces the old one for an item."""
        for item, tag in fb.tags.items():
            self.near_miss.discard(item)
            self.not_even_close.discard(item)
            (self.near_miss if tag == "near_miss" else self.not_even_close).add(item)


@dataclass(frozen=True)
class Recommendations:
    """A recommendation batch plus how it was obtained."""

    movies: list[MovieRecord]
    relaxed: bool = False
    no_matches: bool = False


def recommend(ranking: TotalOrder, eligible: Iterable[MovieRecord], session: SessionState,
              n: int) -> Recommendations:
    """The first n unshown movies in ranking order that satisfy the session
    constraints; if the conjunction leaves fewer than n, the relaxed
    (disjunctive) constraints are tried before truncation. Returned movies are
    marked as shown for the session.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    pos = ranking.positions()
    ranked = sorted((m for m in eligible if m.id in pos), key=lambda m: pos[m.id])

    def pick(c: ConstraintSet) -> list[MovieRecord]:
        return [m for m in ranked if m.id not in session.shown and c.matches(m)]

    pool = pick(session.constraints)
    relaxed = False
    if len(pool) < n and not session.constraints.is_empty():
        relaxed_c = relax(session.constraints)
        if relaxed_c is not session.constraints:
            pool = pick(relaxed_c)
            relaxed = True
    batch = pool[:n]
    session.shown.update(m.id for m in batch)
    return Recommendations(batch, relaxed=relaxed, no_matches=not batch)


def apply_longterm_feedback(triage: TriageLists, fb: Feedback) -> TriageLists:
    """Fold long-term verdicts into the triage lists.

    seen_liked lands in like; seen_disliked and sure_would_dislike land in
    dislike; an item leaves whatever list it occupied before.
    """
    like, ok, dislike = set(triage.like), set(triage.ok), set(triage.dislike)
    for item, verdict in fb.verdicts.items():
        for bucket in (like, ok, dislike):
            bucket.discard(item)
        (like if verdict == "seen_liked" else dislike).add(item)
    return TriageLists(frozenset(like), frozenset(ok), frozenset(dislike))


def session_edges(session: SessionState) -> set[tuple[ItemId, ItemId]]:
    """Every near-miss item preferred to every not-even-close item."""
    if session.near_miss & session.not_even_close:
        raise ValidationError("near-miss and not-even-close tags overlap")
    return {(a, b) for a in session.near_miss for b in session.not_even_close}


def merged_session_preference(ldo: PartialPreference, session: SessionState
                              ) -> tuple[PartialPreference, list[tuple[ItemId, ItemId]]]:
    """Long-term structure plus session edges; any session edge that would
    contradict it is dropped and reported. Returns (merged, dropped_edges)."""
    merged = ldo
    dropped: list[tuple[ItemId, ItemId]] = []
    for edge in sorted(session_edges(session)):
        a, b = edge
        if a in merged.domain and b in merged.domain and merged.is_preferred(b, a):
            dropped.append(edge)
            continue
        merged = merged.with_edges([edge])
    return merged, dropped
