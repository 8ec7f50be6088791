"""Command-line front door: ingest data, generate synthetic data, run the
evaluation grid, and serve the HTTP API."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .casebase import (
    ingest_ratings,
    read_movies_csv,
    read_ratings_csv,
    write_movies_csv,
    write_ratings_csv,
    RatingRecord,
)
from .evaluation import ExperimentGrid, run_grid, synth_casebase
from .sampling import SamplerConfig
from .store import Store, resolve_data_dir
from .synthmovies import synth_catalog


def _axis(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


@click.group()
def main():
    """Movie advisor built on partial-order preferences."""


@main.command()
@click.option("--ratings", "ratings_path", required=True, type=click.Path(exists=True))
@click.option("--movies", "movies_path", required=True, type=click.Path(exists=True))
@click.option("--min-ratings", default=20, show_default=True)
@click.option("--data-dir", default=None, help="defaults to $DIVA_DATA_DIR or ./diva-data")
def ingest(ratings_path, movies_path, min_ratings, data_dir):
    """Load ratings and movies CSVs into the data directory."""
    catalog = read_movies_csv(movies_path)
    cb, report = ingest_ratings(read_ratings_csv(ratings_path), min_ratings=min_ratings)
    directory = resolve_data_dir(data_dir)
    existing = Store.load(directory) if (directory / "accounts.jsonl").exists() else Store()
    store = Store(existing.accounts, catalog, cb, existing.seed)
    store.save(directory)
    for line, reason in report.rejected:
        click.echo(f"rejected line {line}: {reason}", err=True)
    click.echo(f"kept {report.kept_users} users / {report.kept_ratings} ratings "
               f"(dropped {len(report.dropped_users)} users under {min_ratings} ratings)")
    click.echo(f"catalog: {len(catalog)} movies -> {directory}")


@main.command()
@click.option("--users", default=200, show_default=True)
@click.option("--movies", default=300, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--dims", default=3, show_default=True)
@click.option("--noise", default=0.6, show_default=True)
@click.option("--out-dir", default=".", show_default=True, type=click.Path())
def synth(users, movies, seed, dims, noise, out_dir):
    """Write synthetic ratings.csv / movies.csv (plus ground-truth likes)."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    cb, truth = synth_casebase(users, movies, dims, noise, rng)
    catalog = synth_catalog(movies, np.random.default_rng(np.random.SeedSequence((seed, 1))))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = [RatingRecord(u, i, r) for u in sorted(cb.raw_ratings)
               for i, r in sorted(cb.raw_ratings[u].items())]
    write_ratings_csv(out / "ratings.csv", records)
    write_movies_csv(out / "movies.csv", catalog)
    with open(out / "truth.json", "w", encoding="utf-8") as handle:
        json.dump({u: sorted(t) for u, t in sorted(truth.items())}, handle, indent=1, sort_keys=True)
    click.echo(f"wrote {len(records)} ratings for {users} users over {movies} movies -> {out}")


def _load_casebase(data_dir):
    directory = resolve_data_dir(data_dir)
    store = Store.load(directory)
    if not len(store.casebase):
        click.echo(f"no case base found in {directory}; run `diva ingest` or `diva synth` first",
                   err=True)
        sys.exit(1)
    return store.casebase


@main.command("eval")
@click.option("--extensions", default="10,30,50", show_default=True)
@click.option("--iterations", default="50,100,150", show_default=True)
@click.option("--test-users", default=10, show_default=True)
@click.option("--runs", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="table.csv", show_default=True, type=click.Path())
@click.option("--data-dir", default=None)
def eval_cmd(extensions, iterations, test_users, runs, seed, out, data_dir):
    """Run the extensions-by-iterations grid and write per-run rows as CSV."""
    cb = _load_casebase(data_dir)
    grid = ExperimentGrid(_axis(extensions), _axis(iterations), runs, test_users, seed)
    cells = len(grid.extensions_axis) * len(grid.iterations_axis)

    def progress(ci, run):
        click.echo(f"\rcell {ci + 1}/{cells} run {run + 1}/{runs}", nl=False, err=True)

    result = run_grid(cb, grid, progress=progress)
    click.echo("", err=True)
    result.to_csv(out)
    click.echo(result.summary())
    click.echo(f"rows -> {out}")


@main.command("baseline-eval")
@click.option("--test-users", default=10, show_default=True)
@click.option("--runs", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="baseline.csv", show_default=True, type=click.Path())
@click.option("--data-dir", default=None)
def baseline_eval(test_users, runs, seed, out, data_dir):
    """Correlation-baseline-only run (no extension sampling)."""
    cb = _load_casebase(data_dir)
    grid = ExperimentGrid((1,), (1,), runs, test_users, seed)
    result = run_grid(cb, grid, methods=("grouplens", "random"))
    result.to_csv(out)
    click.echo(f"grouplens precision {100 * result.mean_precision('grouplens'):.1f}% "
               f"recall {100 * result.mean_recall('grouplens'):.1f}% "
               f"(random {100 * result.mean_precision('random'):.1f}%)")
    click.echo(f"rows -> {out}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default=None)
@click.option("--extensions", default=30, show_default=True)
@click.option("--iterations", default=100, show_default=True)
def serve(port, host, data_dir, extensions, iterations):
    """Serve the JSON API (and persist account changes to the data directory)."""
    import uvicorn

    from .service import create_app

    directory = resolve_data_dir(data_dir)
    store = Store.load(directory)
    app = create_app(store, data_dir=directory,
                     sampler=SamplerConfig(num_extensions=extensions, num_iterations=iterations))
    click.echo(f"serving {len(store.catalog)} movies, {len(store.casebase)} case users "
               f"from {directory} on {host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
