import { clear, el } from "../dom.js";
import { buildConstraints, ConstraintFormValues } from "../constraints.js";
import type { ConstraintBody } from "../types.js";

export interface SearchHandlers {
  onSearch(constraints: ConstraintBody, n: number): void;
}

/** The constraint form: all eight attribute fields plus the list length.
 *
 * Multi-valued fields take comma-separated tokens; empty fields do not
 * constrain. Validation runs client-side so malformed requests never leave.
 */
export function renderSearchForm(root: HTMLElement, handlers: SearchHandlers): {
  values(): ConstraintFormValues;
  reset(): void;
} {
  clear(root);
  const fields: Record<keyof ConstraintFormValues, HTMLInputElement> = {
    actors: el("input", { name: "actors", placeholder: "actors / actresses (comma-separated)" }),
    directors: el("input", { name: "directors", placeholder: "directors" }),
    genres: el("input", { name: "genres", placeholder: "genres" }),
    minStarRating: el("input", { name: "min_star_rating", placeholder: "min star rating" }),
    countries: el("input", { name: "countries", placeholder: "countries of production" }),
    yearFrom: el("input", { name: "year_from", placeholder: "released from" }),
    yearTo: el("input", { name: "year_to", placeholder: "released to" }),
    mpaa: el("input", { name: "mpaa", placeholder: "MPAA ratings" }),
    maxRuntimeMinutes: el("input", { name: "max_runtime_minutes", placeholder: "max running time (min)" }),
  };
  const nInput = el("input", { name: "n", value: "10" });
  const formError = el("p", { class: "field-error", role: "alert" });

  function values(): ConstraintFormValues {
    return {
      actors: fields.actors.value,
      directors: fields.directors.value,
      genres: fields.genres.value,
      minStarRating: fields.minStarRating.value,
      countries: fields.countries.value,
      yearFrom: fields.yearFrom.value,
      yearTo: fields.yearTo.value,
      mpaa: fields.mpaa.value,
      maxRuntimeMinutes: fields.maxRuntimeMinutes.value,
    };
  }

  function reset(): void {
    for (const input of Object.values(fields)) input.value = "";
    nInput.value = "10";
    formError.textContent = "";
  }

  const form = el("form", {
    class: "search",
    onsubmit: (event: Event) => {
      event.preventDefault();
      formError.textContent = "";
      try {
        const body = buildConstraints(values());
        const n = Number(nInput.value) || 10;
        handlers.onSearch(body, n);
      } catch (err) {
        formError.textContent = err instanceof Error ? err.message : String(err);
      }
    },
  });

  form.append(
    el("h2", {}, ["Search"]),
    el("p", {}, ["Constrain tonight's search; leave fields empty to let your taste decide."]),
    ...Object.values(fields),
    el("label", {}, ["list length ", nInput]),
    formError,
    el("button", { type: "submit" }, ["Request recommendations"]),
  );
  root.append(form);
  return { values, reset };
}
