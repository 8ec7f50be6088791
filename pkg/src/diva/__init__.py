"""diva: a movie-recommendation workbench built on partial-order preferences.

User taste is held as a strict partial order over movies rather than numeric
ratings. Recommendation completes the active user's partial order into a full
ranking by borrowing structure from the most similar stored user, where
similarity is the probability that two randomly chosen movies are ranked in
conflict, estimated over sampled linear extensions.
"""

from .orders import (
    CycleError,
    DomainError,
    ItemId,
    PartialPreference,
    PreferenceError,
    TotalOrder,
    TriageLists,
    ValidationError,
    add_edges,
    enumerate_extensions,
    initial_extension,
    order_from_triage,
)
from .sampling import SamplerConfig, make_rng, sample_extension, sample_extensions
from .distances import (
    exact_partial_distance,
    pairwise_order_distances,
    partial_distance,
    total_order_distance,
)
from .casebase import (
    CaseBase,
    EmptyCaseBaseError,
    IngestReport,
    MovieRecord,
    RankingResult,
    RatingRecord,
    ingest_ratings,
    nearest_cases,
    preference_ranking,
    ratings_to_partial,
    restrict_top_k,
)
from .recommend import (
    ConstraintSet,
    Feedback,
    Recommendations,
    SessionState,
    apply_longterm_feedback,
    filter_movies,
    merged_session_preference,
    recommend,
    relax,
    session_edges,
)
from .grouplens import baseline_recommend, pearson, predict
from .evaluation import (
    EvalSplit,
    ExperimentGrid,
    Metrics,
    precision_recall,
    recommendation_length,
    run_grid,
    split_user,
    synth_casebase,
    triage_from_ratings,
)

__all__ = [
    "CaseBase",
    "ConstraintSet",
    "CycleError",
    "DomainError",
    "EmptyCaseBaseError",
    "EvalSplit",
    "ExperimentGrid",
    "Feedback",
    "IngestReport",
    "ItemId",
    "Metrics",
    "MovieRecord",
    "PartialPreference",
    "PreferenceError",
    "RankingResult",
    "RatingRecord",
    "Recommendations",
    "SamplerConfig",
    "SessionState",
    "TotalOrder",
    "TriageLists",
    "ValidationError",
    "add_edges",
    "apply_longterm_feedback",
    "baseline_recommend",
    "enumerate_extensions",
    "exact_partial_distance",
    "filter_movies",
    "ingest_ratings",
    "initial_extension",
    "make_rng",
    "merged_session_preference",
    "nearest_cases",
    "order_from_triage",
    "pairwise_order_distances",
    "partial_distance",
    "pearson",
    "precision_recall",
    "predict",
    "preference_ranking",
    "ratings_to_partial",
    "recommend",
    "recommendation_length",
    "relax",
    "restrict_top_k",
    "run_grid",
    "sample_extension",
    "sample_extensions",
    "session_edges",
    "split_user",
    "synth_casebase",
    "total_order_distance",
    "triage_from_ratings",
]
