import { clear, el, option } from "../dom.js";
import { FeedbackForm } from "../feedbackForm.js";
import type { LongTermVerdict, Movie, SearchResponse, ShortTermTag } from "../types.js";

const TAG_CHOICES: [string, string][] = [
  ["", "—"],
  ["near_miss", "near miss"],
  ["not_even_close", "not even close"],
];
const VERDICT_CHOICES: [string, string][] = [
  ["", "—"],
  ["seen_liked", "seen it: liked"],
  ["seen_disliked", "seen it: disliked"],
  ["sure_would_dislike", "sure I'd dislike it"],
];

export interface ResultsHandlers {
  onContinue(form: FeedbackForm): void;
  onNewSearch(form: FeedbackForm): void;
}

/** Recommendation list with the two per-row feedback columns.
 *
 * Column one is the short-term tag (for movies not seen), column two the
 * long-term verdict; choosing a "seen" verdict clears and disables the tag.
 * Clicking a title unfolds the movie's full attribute panel.
 */
export function renderResults(
  root: HTMLElement,
  response: SearchResponse,
  handlers: ResultsHandlers,
): FeedbackForm {
  clear(root);
  const form = new FeedbackForm(response.movies.map((m) => m.id));

  const notices = el("div", { class: "notices" });
  if (response.warning) notices.append(el("p", { class: "warning" }, [response.warning]));
  if (response.degraded) {
    notices.append(el("p", { class: "warning" }, [
      "no stored users yet; showing the catalog by critic rating",
    ]));
  }
  if (response.relaxed) {
    notices.append(el("p", { class: "notice relaxed" }, [
      "few movies met every constraint, so the constraints were relaxed (any instead of all)",
    ]));
  }
  if (response.no_matches) {
    notices.append(el("p", { class: "empty-state" }, [
      "nothing matches this search, even relaxed; try a new search",
    ]));
  }

  function detailPanel(movie: Movie): HTMLElement {
    return el("dl", { class: "movie-detail" }, [
      el("dt", {}, ["director"]), el("dd", {}, [movie.director]),
      el("dt", {}, ["actors"]), el("dd", {}, [movie.actors.join(", ")]),
      el("dt", {}, ["genres"]), el("dd", {}, [movie.genres.join(", ")]),
      el("dt", {}, ["star rating"]), el("dd", {}, [String(movie.star_rating)]),
      el("dt", {}, ["MPAA"]), el("dd", {}, [movie.mpaa]),
      el("dt", {}, ["country"]), el("dd", {}, [movie.country]),
      el("dt", {}, ["running time"]), el("dd", {}, [`${movie.runtime_minutes} min`]),
      el("dt", {}, ["year"]), el("dd", {}, [String(movie.year)]),
    ]);
  }

  function row(movie: Movie): HTMLElement {
    const detail = el("div", { class: "detail-slot" });
    let open = false;
    const title = el("a", {
      href: "#",
      class: "movie-title",
      onclick: (event: Event) => {
        event.preventDefault();
        open = !open;
        clear(detail);
        if (open) detail.append(detailPanel(movie));
      },
    }, [movie.title]);

    const tagSelect = el("select", { class: "short-term", "data-movie": movie.id });
    for (const [value, label] of TAG_CHOICES) tagSelect.append(option(value, label));
    const verdictSelect = el("select", { class: "long-term", "data-movie": movie.id });
    for (const [value, label] of VERDICT_CHOICES) verdictSelect.append(option(value, label));

    tagSelect.addEventListener("change", () => {
      form.setTag(movie.id, (tagSelect.value || null) as ShortTermTag | null);
    });
    verdictSelect.addEventListener("change", () => {
      form.setVerdict(movie.id, (verdictSelect.value || null) as LongTermVerdict | null);
      tagSelect.disabled = form.tagDisabled(movie.id);
      if (tagSelect.disabled) tagSelect.value = "";
    });

    return el("li", { class: "result-row", "data-movie": movie.id }, [
      tagSelect, verdictSelect, title, detail,
    ]);
  }

  const list = el("ul", { class: "results" }, response.movies.map(row));
  root.append(
    el("h2", {}, ["Recommendations"]),
    notices,
    list,
    el("button", {
      type: "button",
      class: "continue-search",
      onclick: () => handlers.onContinue(form),
    }, ["Continue Search"]),
    el("button", {
      type: "button",
      class: "new-search",
      onclick: () => handlers.onNewSearch(form),
    }, ["New Search"]),
  );
  return form;
}
