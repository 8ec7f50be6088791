"""One full elicitation loop, in process: triage, constrained search, feedback,
continue. This is the same flow the HTTP service drives, without the server.

Run:  python3 demos/elicitation_session.py
"""

import numpy as np

from diva import (
    ConstraintSet,
    Feedback,
    SamplerConfig,
    SessionState,
    TriageLists,
    apply_longterm_feedback,
    merged_session_preference,
    order_from_triage,
    preference_ranking,
    recommend,
)
from diva.evaluation import synth_casebase
from diva.synthmovies import synth_catalog

rng = np.random.default_rng(np.random.SeedSequence(8))
casebase, _ = synth_casebase(40, 60, 3, 0.5, rng)
catalog = synth_catalog(60, np.random.default_rng(3))
by_id = {m.id: m for m in catalog}

# Registration: the user triages fifteen movies.
ids = sorted(by_id)
triage = TriageLists(frozenset(ids[:5]), frozenset(ids[5:10]), frozenset(ids[10:15]))
longterm = order_from_triage(triage)
print(f"triaged {len(triage.items())} movies -> {len(longterm.edges)} pairwise preferences")

# Search: tonight it has to be a crime film, nothing too long.
session = SessionState(constraints=ConstraintSet(genres=frozenset({"crime"}),
                                                 max_runtime_minutes=150))
cfg = SamplerConfig(num_extensions=20, num_iterations=80, seed=17)
ranking = preference_ranking(longterm, casebase, cfg, universe=sorted(by_id)).order
batch = recommend(ranking, catalog, session, n=4)
print(f"\nsearch (crime, <=150 min){' [relaxed]' if batch.relaxed else ''}:")
for m in batch.movies:
    print(f"  {m.title:<28} {'/'.join(m.genres):<18} {m.runtime_minutes} min")

# Feedback: one movie was seen and liked (long-term), one looks close to the
# mark, one is way off (short-term only).
shown = [m.id for m in batch.movies]
fb = Feedback(verdicts={shown[0]: "seen_liked"},
              tags={shown[1]: "near_miss", shown[2]: "not_even_close"})
triage = apply_longterm_feedback(triage, fb)
session.apply_tags(fb)
print(f"\nafter feedback the like list holds {len(triage.like)} movies")

# Continue: session tags add temporary edges on top of the stored taste, the
# ranking is rebuilt, and nothing already shown comes back.
merged, dropped = merged_session_preference(order_from_triage(triage), session)
print(f"session adds {len(merged.edges) - len(order_from_triage(triage).edges)} temporary edges"
      f" ({len(dropped)} dropped as conflicting)")
ranking = preference_ranking(merged, casebase, cfg, universe=sorted(by_id)).order
more = recommend(ranking, catalog, session, n=4)
print("\ncontinue search:")
for m in more.movies:
    print(f"  {m.title:<28} {'/'.join(m.genres):<18} {m.runtime_minutes} min")
assert not set(shown) & {m.id for m in more.movies}, "shown movies never repeat"

# Ending the search discards the session; the stored taste keeps only the
# long-term verdicts.
print("\nsession ends: tags forgotten, like list still has", len(triage.like), "movies")
