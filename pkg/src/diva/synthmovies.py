"""Deterministic synthetic movie catalog to pair with the synthetic ratings.

Titles and attributes are drawn from small fixed pools; ids follow the same
m0000-style scheme as the synthetic case base so the two line up.
"""

from __future__ import annotations

import numpy as np

from .casebase import MovieRecord

_ADJECTIVES = ("Crimson", "Silent", "Broken", "Golden", "Midnight", "Electric",
               "Forgotten", "Savage", "Paper", "Winter", "Restless", "Neon")
_NOUNS = ("Harbor", "Letters", "Mirror", "Parade", "Thief", "Orchard", "Engine",
          "Daughter", "Frontier", "Lullaby", "Detour", "Cathedral")
_GENRES = ("comedy", "crime", "drama", "adventure", "romance", "thriller",
           "western", "documentary", "horror", "musical", "mystery", "war")
_COUNTRIES = ("usa", "france", "italy", "japan", "uk", "germany", "canada", "spain")
_MPAA = ("G", "PG", "PG-13", "R")
_FIRST = ("Ada", "Boris", "Clara", "Dmitri", "Elena", "Farid", "Greta", "Hugo",
          "Iris", "Jonas", "Kira", "Lionel", "Mabel", "Nestor", "Odile", "Pavel")
_LAST = ("Moreau", "Tanaka", "Okafor", "Lindqvist", "Castellanos", "Brennan",
         "Horvath", "Deluca", "Abramov", "Whitfield", "Osei", "Marchetti")


def _person(rng: np.random.Generator) -> str:
    return f"{_FIRST[rng.integers(len(_FIRST))]} {_LAST[rng.integers(len(_LAST))]}"


def synth_catalog(catalog_size: int, rng: np.random.Generator) -> list[MovieRecord]:
    """``catalog_size`` synthetic movies with plausible attribute values."""
    movies = []
    for i in range(catalog_size):
        adjective = _ADJECTIVES[rng.integers(len(_ADJECTIVES))]
        noun = _NOUNS[rng.integers(len(_NOUNS))]
        article = "The " if rng.random() < 0.5 else ""
        genre_count = 1 + int(rng.random() < 0.4)
        genres = tuple(_GENRES[k] for k in rng.choice(len(_GENRES), size=genre_count, replace=False))
        movies.append(MovieRecord(
            id=f"m{i:04d}",
            title=f"{article}{adjective} {noun} {i:04d}",
            director=_person(rng),
            actors=tuple(_person(rng) for _ in range(3)),
            genres=genres,
            star_rating=float(rng.integers(2, 11)) / 2.0,
            mpaa=_MPAA[rng.integers(len(_MPAA))],
            country=_COUNTRIES[rng.integers(len(_COUNTRIES))],
            runtime_minutes=int(rng.integers(75, 181)),
            year=int(rng.integers(1930, 1999)),
        ))
    return movies
