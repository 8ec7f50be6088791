import type { FeedbackItem, LongTermVerdict, ShortTermTag } from "./types.js";

interface Row {
  verdict: LongTermVerdict | null;
  tag: ShortTermTag | null;
}

/** Per-row feedback for one recommendation list.
 *
 * Short-term tags describe movies the user has not seen, so choosing a
 * "seen" verdict clears and disables the row's tag.
 */
export class FeedbackForm {
  private rows = new Map<string, Row>();

  constructor(movieIds: string[]) {
    for (const id of movieIds) this.rows.set(id, { verdict: null, tag: null });
  }

  private row(movieId: string): Row {
    const row = this.rows.get(movieId);
    if (!row) throw new Error(`movie ${movieId} is not in the current list`);
    return row;
  }

  setVerdict(movieId: string, verdict: LongTermVerdict | null): void {
    const row = this.row(movieId);
    row.verdict = verdict;
    if (verdict !== null && verdict.startsWith("seen")) row.tag = null;
  }

  setTag(movieId: string, tag: ShortTermTag | null): void {
    const row = this.row(movieId);
    if (tag !== null && this.tagDisabled(movieId)) {
      throw new Error("short-term tags apply only to unseen movies");
    }
    row.tag = tag;
  }

  tagDisabled(movieId: string): boolean {
    const verdict = this.row(movieId).verdict;
    return verdict !== null && verdict.startsWith("seen");
  }

  verdictOf(movieId: string): LongTermVerdict | null {
    return this.row(movieId).verdict;
  }

  tagOf(movieId: string): ShortTermTag | null {
    return this.row(movieId).tag;
  }

  /** Rows with any feedback, in list order, ready for the API. */
  toItems(): FeedbackItem[] {
    const items: FeedbackItem[] = [];
    for (const [movieId, row] of this.rows) {
      if (row.verdict === null && row.tag === null) continue;
      const item: FeedbackItem = { item: movieId };
      if (row.verdict !== null) item.verdict = row.verdict;
      if (row.tag !== null) item.tag = row.tag;
      items.push(item);
    }
    return items;
  }

  isEmpty(): boolean {
    return this.toItems().length === 0;
  }
}
