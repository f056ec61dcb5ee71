"""Benchmark CLI: `bench gas` and `bench auth`."""

from __future__ import annotations

from pathlib import Path

import click

from . import gas as gas_mod
from . import latency as lat_mod
from .latency import LatencyModel, SchemeKind


@click.group()
def cli():
    """Gas and authentication-latency benchmarks."""


@cli.command("gas")
@click.option("--quantities", default="1,10,100,1000", show_default=True,
              help="comma-separated token counts per operation")
@click.option("--repetitions", default=100, show_default=True, type=int,
              help="identical runs per quantity (the model is deterministic)")
@click.option("--out", "out_path", default="gas.csv", show_default=True, type=click.Path())
def gas_cmd(quantities, repetitions, out_path):
    """Meter mint and transfer gas for both token standards."""
    counts = [int(q) for q in quantities.split(",") if q.strip()]
    rows = gas_mod.run_gas_benchmark(counts, repetitions=repetitions)
    try:
        gas_mod.write_gas_csv(rows, Path(out_path))
    except OSError as exc:
        raise click.ClickException(f"cannot write {out_path}: {exc}")
    click.echo(gas_mod.summarize(rows))
    click.echo(f"wrote {len(rows)} rows to {out_path}")


@cli.command("auth")
@click.option("--scheme", default="all", show_default=True,
              help="one of wpa2, block-broadcast, n-wpa2, sfwt-query, or all")
@click.option("--trials", default=100, show_default=True, type=int)
@click.option("--block-interval", default=10, show_default=True, type=int,
              help="block production interval in simulated seconds")
@click.option("--seed", default=42, show_default=True, type=int)
@click.option("--out", "out_path", default="auth.csv", show_default=True, type=click.Path())
def auth_cmd(scheme, trials, block_interval, seed, out_path):
    """Measure authentication latency per scheme on simulated time."""
    if scheme == "all":
        schemes = list(SchemeKind)
    else:
        try:
            schemes = [SchemeKind(scheme)]
        except ValueError:
            raise click.ClickException(f"unknown scheme {scheme!r}")
    model = LatencyModel(rng_seed=seed)
    stats = [
        lat_mod.run_auth_benchmark(s, trials=trials, block_interval_sec=block_interval, model=model)
        for s in schemes
    ]
    rows = [row for s in stats for row in lat_mod.trial_rows(s)]
    try:
        lat_mod.write_auth_csv(rows, Path(out_path))
    except OSError as exc:
        raise click.ClickException(f"cannot write {out_path}: {exc}")
    click.echo(lat_mod.summarize(stats))
    click.echo(f"wrote {len(rows)} rows to {out_path}")


def main():
    cli()


if __name__ == "__main__":
    main()
