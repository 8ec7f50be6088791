"""How the case base turns a thin sketch of taste into a full ranking.

The active user has expressed only a few pairwise preferences. Each stored
user's structure is scored by average conflict probability against sampled
completions of the active structure; the closest user acts as an attractor
that picks which completion to return.

Run:  python3 demos/case_completion.py
"""

import numpy as np

from diva import (
    CaseBase,
    PartialPreference,
    SamplerConfig,
    nearest_cases,
    preference_ranking,
)

movies = [f"m{i}" for i in range(8)]

# Three stored users with clear personalities over the same eight movies:
# one whose taste rises with the index, one whose taste falls, one indifferent.
cb = CaseBase({
    "likes_late": {m: round(0.2 * min(i, 5), 1) for i, m in enumerate(movies)},
    "likes_early": {m: round(0.2 * min(7 - i, 5), 1) for i, m in enumerate(movies)},
    "indifferent": {m: 0.4 for m in movies},
})

# The active user has said almost nothing: m7 beats m0, m6 beats m1.
active = PartialPreference(movies, {("m7", "m0"), ("m6", "m1")})
print("active user asserts:", sorted(active.edges))

cfg = SamplerConfig(num_extensions=30, num_iterations=80, seed=1)
print("\ndistance to each stored user (lower = more similar):")
for user, dist in nearest_cases(active, cb, cfg, m=3, universe=movies):
    print(f"  {user:<12} {dist:.3f}")

# The sketch (high index beats low index) resembles "likes_late", so that
# user guides the completion.
result = preference_ranking(active, cb, cfg, universe=movies)
print(f"\nclosest user: {result.matched_user} (distance {result.distance:.3f})")
print("completed ranking:", " > ".join(result.order))
assert result.order.extends(active), "every elicited pair survives completion"

# A user who contradicts the sketch pulls the completion the other way; force
# the ranking to lean on "likes_early" to see the difference.
solo = CaseBase({"likes_early": cb.raw_ratings["likes_early"]})
flipped = preference_ranking(active, solo, cfg, universe=movies)
print("\nforced to lean on 'likes_early' instead:", " > ".join(flipped.order))
print("elicited pairs still hold:", flipped.order.extends(active))
