"""Offline evaluation: observed/held-out splits, precision/recall, and the
extensions-by-iterations experiment grid, plus a synthetic case-base generator
for desk-scale benchmarks.

A test user's ratings are triaged by level (like >= 0.8, ok 0.4-0.6, dislike
<= 0.2). The observed side keeps the full ok and dislike lists plus three
liked movies; the remaining liked movies are the held-out set the recommender
is asked to recover. Recommended lists are drawn from the user's rated movies
minus the three observed likes, so every candidate's ground truth is known
and the rated ok/dislike movies act as distractors.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .casebase import CaseBase, RATING_LEVELS
from .grouplens import NeighborModel
from .orders import ItemId, TriageLists, ValidationError, order_from_triage
from .sampling import SamplerConfig
from .casebase import preference_ranking

LIKE_THRESHOLD = 0.8
DISLIKE_THRESHOLD = 0.2
OBSERVED_LIKES = 3

# worst -> best share of each rating level when quantizing synthetic scores
LEVEL_PROPORTIONS = (0.15, 0.15, 0.20, 0.20, 0.15, 0.15)
TRUTH_QUANTILE = 0.30

METHODS = ("diva", "grouplens", "random")


class EvaluationError(Exception):
    pass


class SplitError(EvaluationError):
    """User does not have enough triaged items to be a test user."""


def triage_from_ratings(ratings: Mapping[ItemId, float]) -> TriageLists:
    """Bucket rated items by level: like >= 0.8, ok in 0.4-0.6, dislike <= 0.2."""
    like, ok, dislike = set(), set(), set()
    for item, value in ratings.items():
        if value >= LIKE_THRESHOLD:
            like.add(item)
        elif value <= DISLIKE_THRESHOLD:
            dislike.add(item)
        else:
            ok.add(item)
    return TriageLists(frozenset(like), frozenset(ok), frozenset(dislike))


@dataclass(frozen=True)
class EvalSplit:
    observed: TriageLists
    held_out_liked: frozenset[ItemId]
    rated_count: int


def split_user(ratings: Mapping[ItemId, float], rng: np.random.Generator) -> EvalSplit:
    """Observed side = full ok + full dislike lists + 3 random liked movies;
    held-out side = the rest of the like list."""
    triage = triage_from_ratings(ratings)
    if len(triage.like) < OBSERVED_LIKES + 1 or not triage.ok or not triage.dislike:
        raise SplitError(
            f"need >= {OBSERVED_LIKES + 1} liked, >= 1 ok and >= 1 disliked items; "
            f"got {len(triage.like)}/{len(triage.ok)}/{len(triage.dislike)}"
        )
    liked = sorted(triage.like)
    chosen = {liked[i] for i in rng.choice(len(liked), size=OBSERVED_LIKES, replace=False)}
    observed = TriageLists(frozenset(chosen), triage.ok, triage.dislike)
    return EvalSplit(observed, frozenset(triage.like - chosen), len(ratings))


def recommendation_length(rated_count: int) -> int:
    """One sixth of the movies the user rated, but at least one."""
    return max(1, rated_count // 6)


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float | None
    list_length: int


def precision_recall(recommended: Sequence[ItemId], liked: Iterable[ItemId]) -> Metrics:
    """Fraction of the list the user liked, and fraction of liked items found.
    Recall is None when the liked set is empty."""
    recommended = list(recommended)
    if not recommended:
        raise ValidationError("recommended list must be non-empty")
    liked = set(liked)
    hits = sum(1 for item in recommended if item in liked)
    recall = hits / len(liked) if liked else None
    return Metrics(hits / len(recommended), recall, len(recommended))


def _allocate_level_counts(count: int) -> list[int]:
    # largest-remainder allocation of `count` ratings over the six levels
    exact = [p * count for p in LEVEL_PROPORTIONS]
    base = [int(x) for x in exact]
    short = count - sum(base)
    order = sorted(range(len(base)), key=lambda i: (-(exact[i] - base[i]), i))
    for i in order[:short]:
        base[i] += 1
    return base


def synth_casebase(population: int, catalog_size: int, taste_dims: int, noise: float,
                   rng: np.random.Generator) -> tuple[CaseBase, dict[str, frozenset[ItemId]]]:
    """Latent-taste synthetic data: users and movies get unit-Gaussian latent
    vectors; a rating is their dot product plus Gaussian noise, rank-quantized
    per user into the six levels with a fixed level profile.

    Each user rates at least 20 movies (mean around 70). Also returns each
    user's ground-truth likes: the top quantile of their rated movies by
    noiseless score.
    """
    if population < 1 or catalog_size < 1:
        raise ValidationError("population and catalog_size must be >= 1")
    tastes = rng.normal(size=(population, taste_dims))
    features = rng.normal(size=(catalog_size, taste_dims))
    items = [f"m{i:04d}" for i in range(catalog_size)]
    ratings: dict[str, dict[ItemId, float]] = {}
    truth: dict[str, frozenset[ItemId]] = {}
    for k in range(population):
        user = f"u{k:04d}"
        count = int(min(catalog_size, 20 + rng.poisson(50)))
        rated = np.sort(rng.choice(catalog_size, size=count, replace=False))
        clean = features[rated] @ tastes[k]
        noisy = clean + noise * rng.normal(size=count)
        by_noisy = np.argsort(noisy, kind="stable")  # worst first
        levels = np.empty(count)
        start = 0
        for level, share in zip(RATING_LEVELS, _allocate_level_counts(count)):
            levels[by_noisy[start:start + share]] = level
            start += share
        ratings[user] = {items[j]: float(lv) for j, lv in zip(rated, levels)}
        top = max(1, int(round(count * TRUTH_QUANTILE)))
        best = np.argsort(-clean, kind="stable")[:top]
        truth[user] = frozenset(items[rated[j]] for j in best)
    return CaseBase(ratings), truth


@dataclass(frozen=True)
class ExperimentGrid:
    extensions_axis: tuple[int, ...] = (10, 30, 50)
    iterations_axis: tuple[int, ...] = (50, 100, 150)
    runs_per_cell: int = 100
    test_user_count: int = 10
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "extensions_axis", tuple(self.extensions_axis))
        object.__setattr__(self, "iterations_axis", tuple(self.iterations_axis))
        if not self.extensions_axis or not self.iterations_axis:
            raise ValidationError("grid axes must be non-empty")
        if min(self.extensions_axis) < 1 or min(self.iterations_axis) < 1:
            raise ValidationError("grid counts must be >= 1")
        if self.runs_per_cell < 1 or self.test_user_count < 1:
            raise ValidationError("grid counts must be >= 1")


@dataclass(frozen=True)
class EvalRow:
    extensions: int
    iterations: int
    run: int
    user: str
    precision: float
    recall: float | None
    method: str


@dataclass
class GridResult:
    grid: ExperimentGrid
    test_users: list[str]
    rows: list[EvalRow] = field(default_factory=list)

    def mean_precision(self, method: str, extensions: int | None = None,
                       iterations: int | None = None) -> float:
        vals = [r.precision for r in self.rows if r.method == method
                and (extensions is None or r.extensions == extensions)
                and (iterations is None or r.iterations == iterations)]
        return float(np.mean(vals))

    def mean_recall(self, method: str, extensions: int | None = None,
                    iterations: int | None = None) -> float:
        vals = [r.recall for r in self.rows if r.method == method and r.recall is not None
                and (extensions is None or r.extensions == extensions)
                and (iterations is None or r.iterations == iterations)]
        return float(np.mean(vals))

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["extensions", "iterations", "run", "user",
                             "precision", "recall", "method"])
            for r in self.rows:
                writer.writerow([r.extensions, r.iterations, r.run, r.user,
                                 f"{r.precision:.6f}",
                                 "" if r.recall is None else f"{r.recall:.6f}", r.method])

    def summary(self) -> str:
        """Per-method table: extension columns, iteration triples in each cell."""
        exts = self.grid.extensions_axis
        iters = self.grid.iterations_axis
        lines = []
        for method in METHODS:
            if not any(r.method == method for r in self.rows):
                continue
            lines.append(f"method: {method}")
            lines.append("  extensions   " + "".join(f"{e:>24}" for e in exts))
            lines.append("  iterations   " + "".join(f"{','.join(map(str, iters)):>24}" for _ in exts))
            for name, fn in (("precision", self.mean_precision), ("recall", self.mean_recall)):
                cells = []
                for e in exts:
                    cells.append(",".join(f"{100 * fn(method, e, i):.0f}%" for i in iters))
                lines.append(f"  {name:<13}" + "".join(f"{c:>24}" for c in cells))
            lines.append("")
        return "\n".join(lines)


def _eligible_users(cb: CaseBase) -> list[str]:
    out = []
    for user in cb.users():
        triage = triage_from_ratings(cb.raw_ratings[user])
        if len(triage.like) >= OBSERVED_LIKES + 1 and triage.ok and triage.dislike:
            out.append(user)
    return out


def run_grid(cb: CaseBase, grid: ExperimentGrid, top_k: int = 100,
             methods: tuple[str, ...] = METHODS,
             test_users: Sequence[str] | None = None, progress=None) -> GridResult:
    """Run the full experiment grid against a case base.

    Test users (picked at random unless given explicitly) are removed from the
    case base before any ranking; their ids must never be scanned. Splits are
    re-randomized per run but shared across grid cells so methods and cells
    see identical data. Output is deterministic for a fixed grid seed.
    """
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValidationError(f"unknown methods {unknown}")
    eligible = _eligible_users(cb)
    if test_users is not None:
        missing = sorted(set(test_users) - set(eligible))
        if missing:
            raise EvaluationError(f"requested test users not eligible: {missing}")
        test_users = sorted(test_users)
    else:
        if len(eligible) < grid.test_user_count:
            raise EvaluationError(
                f"need {grid.test_user_count} eligible test users, only {len(eligible)} qualify"
            )
        root = np.random.default_rng(np.random.SeedSequence(grid.seed))
        picked = root.choice(len(eligible), size=grid.test_user_count, replace=False)
        test_users = sorted(eligible[i] for i in picked)
    rest = cb.without(test_users)
    for user in test_users:
        if user in rest:
            raise EvaluationError(f"leakage: test user {user} still in the case base")

    result = GridResult(grid, test_users)

    # Pre-pass: per (run, user) split plus the two extension-free baselines.
    prepared: dict[tuple[int, str], tuple[EvalSplit, list[ItemId], int, list[ItemId], list[ItemId]]] = {}
    for run in range(grid.runs_per_cell):
        for ui, user in enumerate(test_users):
            rng = np.random.default_rng(np.random.SeedSequence((grid.seed, 1, run, ui)))
            ratings = cb.raw_ratings[user]
            split = split_user(ratings, rng)
            candidates = sorted(set(ratings) - split.observed.like)
            n = recommendation_length(split.rated_count)
            observed_vec = {i: ratings[i] for i in split.observed.items()}
            model = NeighborModel(observed_vec, rest)
            gl_rec = sorted(((c, model.predict(c)) for c in candidates),
                            key=lambda p: (-p[1], p[0]))
            gl_list = [c for c, _ in gl_rec[:n]]
            rand_list = [candidates[i] for i in rng.permutation(len(candidates))[:n]]
            prepared[(run, user)] = (split, candidates, n, gl_list, rand_list)

    for ci, (ext, iters) in enumerate((e, i) for e in grid.extensions_axis
                                      for i in grid.iterations_axis):
        for run in range(grid.runs_per_cell):
            for ui, user in enumerate(test_users):
                split, candidates, n, gl_list, rand_list = prepared[(run, user)]
                lists = {"grouplens": gl_list, "random": rand_list}
                if "diva" in methods:
                    rng = np.random.default_rng(np.random.SeedSequence((grid.seed, 2, ci, run, ui)))
                    active = order_from_triage(split.observed)
                    cfg = SamplerConfig(num_extensions=ext, num_iterations=iters,
                                        seed=int(rng.integers(2 ** 62)))
                    ranking = preference_ranking(active, rest, cfg,
                                                 frozenset(cb.raw_ratings[user]), top_k=top_k)
                    cand_set = set(candidates)
                    lists["diva"] = [i for i in ranking.order if i in cand_set][:n]
                for method in methods:
                    m = precision_recall(lists[method], split.held_out_liked)
                    result.rows.append(EvalRow(ext, iters, run, user,
                                               m.precision, m.recall, method))
            if progress is not None:
                progress(ci, run)
    return result
