import type { Bucket, TriageBuckets } from "./types.js";

const BUCKETS: Bucket[] = ["like", "ok", "dislike"];

/** Client-side triage selection: a movie lives in at most one bucket. */
export class TriageSelection {
  private buckets: Record<Bucket, Set<string>> = {
    like: new Set(),
    ok: new Set(),
    dislike: new Set(),
  };

  bucketOf(movieId: string): Bucket | null {
    for (const bucket of BUCKETS) {
      if (this.buckets[bucket].has(movieId)) return bucket;
    }
    return null;
  }

  /** Put a movie in a bucket, removing it from any other; null clears it. */
  assign(movieId: string, bucket: Bucket | null): void {
    for (const name of BUCKETS) this.buckets[name].delete(movieId);
    if (bucket !== null) this.buckets[bucket].add(movieId);
  }

  count(bucket: Bucket): number {
    return this.buckets[bucket].size;
  }

  /** Buckets with fewer selections than the recommended minimum of five. */
  sparseBuckets(minimum = 5): Bucket[] {
    return BUCKETS.filter((b) => this.buckets[b].size < minimum);
  }

  toBuckets(): TriageBuckets {
    return {
      like: [...this.buckets.like].sort(),
      ok: [...this.buckets.ok].sort(),
      dislike: [...this.buckets.dislike].sort(),
    };
  }

  static fromBuckets(data: TriageBuckets): TriageSelection {
    const selection = new TriageSelection();
    for (const bucket of BUCKETS) {
      for (const id of data[bucket]) selection.assign(id, bucket);
    }
    return selection;
  }
}
