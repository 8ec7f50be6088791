export interface Movie {
  id: string;
  title: string;
  director: string;
  actors: string[];
  genres: string[];
  star_rating: number;
  mpaa: string;
  country: string;
  runtime_minutes: number;
  year: number;
}

export interface TriageBuckets {
  like: string[];
  ok: string[];
  dislike: string[];
}

export type Bucket = keyof TriageBuckets;

export interface ConstraintBody {
  actors?: string[];
  directors?: string[];
  genres?: string[];
  min_star_rating?: number;
  countries?: string[];
  year_range?: [number, number];
  mpaa?: string[];
  max_runtime_minutes?: number;
}

export type LongTermVerdict = "seen_liked" | "seen_disliked" | "sure_would_dislike";
export type ShortTermTag = "near_miss" | "not_even_close";

export interface FeedbackItem {
  item: string;
  verdict?: LongTermVerdict;
  tag?: ShortTermTag;
}

export interface SearchResponse {
  session_id: string;
  movies: Movie[];
  relaxed: boolean;
  no_matches: boolean;
  degraded: boolean;
  matched_user: string | null;
  warning: string | null;
}

export interface RegisterResponse {
  login: string;
  warning: string | null;
}

export interface MoviesResponse {
  movies: Movie[];
  total: number;
}

export interface ErrorBody {
  code: string;
  message: string;
  detail: string;
}
