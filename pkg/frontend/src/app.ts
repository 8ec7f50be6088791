import { ApiClient, ApiError } from "./api.js";
import { clear, el } from "./dom.js";
import { FeedbackForm } from "./feedbackForm.js";
import type { ConstraintBody, SearchResponse } from "./types.js";
import { renderRegistration } from "./views/registration.js";
import { renderResults } from "./views/results.js";
import { renderSearchForm } from "./views/search.js";

/** Single-page glue: registration/login, then the search/feedback loop.
 *
 * All durable state lives on the server; the client keeps only the bearer
 * token (in sessionStorage, so a reload reconstructs the view by asking the
 * server again) and the id of the open search session.
 */
export class App {
  private session: string | null = null;
  private searchRoot!: HTMLElement;
  private resultsRoot!: HTMLElement;
  private form: { reset(): void } | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly storage: Storage | null = null,
  ) {}

  boot(): void {
    const saved = this.storage?.getItem("token") ?? null;
    if (saved) {
      this.api.setToken(saved);
      this.showWorkbench();
    } else {
      this.showAuth();
    }
  }

  private showAuth(): void {
    clear(this.root);
    const loginInput = el("input", { name: "login", placeholder: "login" });
    const passwordInput = el("input", { name: "password", type: "password", placeholder: "password" });
    const error = el("p", { class: "field-error", role: "alert" });
    const loginForm = el("form", {
      class: "login",
      onsubmit: (event: Event) => {
        event.preventDefault();
        void this.login(loginInput.value, passwordInput.value, error);
      },
    }, [el("h2", {}, ["Sign in"]), loginInput, passwordInput, error,
        el("button", { type: "submit" }, ["Sign in"])]);

    const registerRoot = el("div", { class: "register-root" });
    this.root.append(loginForm, registerRoot);
    const registration = renderRegistration(registerRoot, this.api, {
      onRegistered: (login, password) => void this.login(login, password, error),
    });
    void registration.refresh("");
  }

  private async login(login: string, password: string, errorNode: HTMLElement): Promise<void> {
    try {
      const token = await this.api.login(login, password);
      this.storage?.setItem("token", token);
      this.showWorkbench();
    } catch (err) {
      errorNode.textContent = err instanceof ApiError ? err.message : String(err);
    }
  }

  private showWorkbench(): void {
    clear(this.root);
    this.searchRoot = el("div", { class: "search-root" });
    this.resultsRoot = el("div", { class: "results-root" });
    this.root.append(this.searchRoot, this.resultsRoot);
    this.form = renderSearchForm(this.searchRoot, {
      onSearch: (constraints, n) => void this.runSearch(constraints, n),
    });
  }

  private async runSearch(constraints: ConstraintBody, n: number): Promise<void> {
    const response = await this.api.search(constraints, n);
    this.session = response.session_id;
    this.renderBatch(response);
  }

  private renderBatch(response: SearchResponse): void {
    renderResults(this.resultsRoot, response, {
      onContinue: (form) => void this.continueSearch(form),
      onNewSearch: (form) => void this.newSearch(form),
    });
  }

  private async sendFeedback(form: FeedbackForm): Promise<void> {
    if (this.session && !form.isEmpty()) {
      await this.api.feedback(this.session, form.toItems());
    }
  }

  private async continueSearch(form: FeedbackForm): Promise<void> {
    if (!this.session) return;
    await this.sendFeedback(form);
    const response = await this.api.continueSearch(this.session);
    this.renderBatch(response);
  }

  private async newSearch(form: FeedbackForm): Promise<void> {
    if (this.session) {
      await this.sendFeedback(form);
      await this.api.closeSearch(this.session);
      this.session = null;
    }
    clear(this.resultsRoot);
    this.form?.reset();
  }
}

export function mountApp(root: HTMLElement, baseUrl = ""): App {
  const api = new ApiClient(baseUrl);
  const storage = typeof sessionStorage === "undefined" ? null : sessionStorage;
  const app = new App(root, api, storage);
  app.boot();
  return app;
}
