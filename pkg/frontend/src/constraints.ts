import type { ConstraintBody } from "./types.js";

/** Raw values of the eight-field constraint form (empty string = unset). */
export interface ConstraintFormValues {
  actors: string;
  directors: string;
  genres: string;
  minStarRating: string;
  countries: string;
  yearFrom: string;
  yearTo: string;
  mpaa: string;
  maxRuntimeMinutes: string;
}

export const EMPTY_FORM: ConstraintFormValues = {
  actors: "",
  directors: "",
  genres: "",
  minStarRating: "",
  countries: "",
  yearFrom: "",
  yearTo: "",
  mpaa: "",
  maxRuntimeMinutes: "",
};

function tokens(value: string): string[] | undefined {
  const parts = value.split(",").map((t) => t.trim()).filter((t) => t.length > 0);
  return parts.length ? parts : undefined;
}

function numeric(value: string, label: string): number | undefined {
  if (!value.trim()) return undefined;
  const parsed = Number(value);
  if (Number.isNaN(parsed)) throw new Error(`${label} must be a number`);
  return parsed;
}

/** Validate and convert form values into the API's constraint body.
 *
 * Throws before any request leaves the client when the form is malformed
 * (non-numeric fields, reversed year range, or a half-open year range).
 */
export function buildConstraints(values: ConstraintFormValues): ConstraintBody {
  const body: ConstraintBody = {};
  const actors = tokens(values.actors);
  if (actors) body.actors = actors;
  const directors = tokens(values.directors);
  if (directors) body.directors = directors;
  const genres = tokens(values.genres);
  if (genres) body.genres = genres;
  const countries = tokens(values.countries);
  if (countries) body.countries = countries;
  const mpaa = tokens(values.mpaa);
  if (mpaa) body.mpaa = mpaa;

  const minStar = numeric(values.minStarRating, "minimum star rating");
  if (minStar !== undefined) body.min_star_rating = minStar;
  const maxRuntime = numeric(values.maxRuntimeMinutes, "maximum running time");
  if (maxRuntime !== undefined) body.max_runtime_minutes = maxRuntime;

  const from = numeric(values.yearFrom, "release year");
  const to = numeric(values.yearTo, "release year");
  if ((from === undefined) !== (to === undefined)) {
    throw new Error("give both ends of the release-year range");
  }
  if (from !== undefined && to !== undefined) {
    if (from > to) throw new Error(`release-year range ${from}-${to} is reversed`);
    body.year_range = [from, to];
  }
  return body;
}
