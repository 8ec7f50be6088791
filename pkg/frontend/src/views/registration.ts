import { ApiClient, ApiError } from "../api.js";
import { clear, el } from "../dom.js";
import { TriageSelection } from "../triage.js";
import type { Bucket, Movie } from "../types.js";

const BUCKET_LABELS: [Bucket | null, string][] = [
  ["like", "Like"],
  ["ok", "OK"],
  ["dislike", "Dislike"],
  [null, "—"],
];

export interface RegistrationHandlers {
  onRegistered(login: string, password: string): void;
}

/** Registration: pick a login, triage movies into three buckets, submit.
 *
 * The catalog is browsed by title prefix (search-as-you-type); each row
 * carries one button per bucket and a movie never sits in two buckets.
 */
export function renderRegistration(
  root: HTMLElement,
  api: ApiClient,
  handlers: RegistrationHandlers,
): { selection: TriageSelection; refresh(prefix: string): Promise<void> } {
  const selection = new TriageSelection();
  clear(root);

  const loginInput = el("input", { name: "login", placeholder: "login" });
  const passwordInput = el("input", { name: "password", type: "password", placeholder: "password" });
  const fieldError = el("p", { class: "field-error", role: "alert" });
  const counters = el("p", { class: "triage-counters" });
  const warning = el("p", { class: "triage-warning" });
  const listBox = el("div", { class: "catalog" });
  const searchBox = el("input", {
    name: "title_prefix",
    placeholder: "type a title…",
    oninput: () => void refresh(searchBox.value),
  });

  function updateCounters(): void {
    counters.textContent = `like ${selection.count("like")} · ok ${selection.count("ok")} · dislike ${selection.count("dislike")}`;
    const sparse = selection.sparseBuckets();
    warning.textContent = sparse.length
      ? `tip: about 5 movies per list gives reliable recommendations (short: ${sparse.join(", ")})`
      : "";
  }

  function movieRow(movie: Movie): HTMLElement {
    const current = selection.bucketOf(movie.id);
    const buttons = BUCKET_LABELS.map(([bucket, label]) =>
      el(
        "button",
        {
          type: "button",
          class: `bucket${current === bucket ? " active" : ""}`,
          "data-movie": movie.id,
          "data-bucket": bucket ?? "none",
          onclick: () => {
            selection.assign(movie.id, bucket);
            updateCounters();
            void refresh(searchBox.value);
          },
        },
        [label],
      ),
    );
    return el("div", { class: "catalog-row", "data-movie": movie.id }, [
      el("span", { class: "title" }, [`${movie.title} (${movie.year})`]),
      ...buttons,
    ]);
  }

  async function refresh(prefix: string): Promise<void> {
    const { movies } = await api.movies(prefix);
    clear(listBox);
    for (const movie of movies) listBox.append(movieRow(movie));
  }

  const form = el("form", {
    class: "registration",
    onsubmit: (event: Event) => {
      event.preventDefault();
      void submit();
    },
  });

  async function submit(): Promise<void> {
    fieldError.textContent = "";
    try {
      const response = await api.register(loginInput.value, passwordInput.value, selection.toBuckets());
      warning.textContent = response.warning ?? "";
      handlers.onRegistered(response.login, passwordInput.value);
    } catch (err) {
      if (err instanceof ApiError && err.code === "duplicate_login") {
        fieldError.textContent = "that login is taken; pick another";
      } else if (err instanceof ApiError) {
        fieldError.textContent = err.message;
      } else {
        throw err;
      }
    }
  }

  form.append(
    el("h2", {}, ["Register"]),
    loginInput,
    passwordInput,
    fieldError,
    el("p", {}, ["Mark some movies you particularly liked, some about average, some you disliked."]),
    searchBox,
    listBox,
    counters,
    warning,
    el("button", { type: "submit" }, ["Create account"]),
  );
  root.append(form);
  updateCounters();
  return { selection, refresh };
}
