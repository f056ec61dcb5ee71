import pytest

from sfwt.bench.gas import read_gas_csv, run_gas_benchmark, summarize as gas_summary, write_gas_csv
from sfwt.bench.latency import (
    LatencyModel,
    SchemeKind,
    block_broadcast_expected_ms,
    read_auth_csv,
    run_auth_benchmark,
    summarize as auth_summary,
    trial_rows,
    write_auth_csv,
)


def by_series(rows):
    return {(r.series, r.quantity): r.gas_used for r in rows}


def test_gas_rows_cover_all_series_and_quantities():
    rows = run_gas_benchmark([1, 10], repetitions=3)
    table = by_series(rows)
    assert set(table) == {
        (series, q)
        for series in ("erc1155-mint", "erc1155-transfer", "erc721-mint", "erc721-transfer")
        for q in (1, 10)
    }


def test_gas_repetitions_are_deterministic():
    a = run_gas_benchmark([1, 100], repetitions=5)
    b = run_gas_benchmark([1, 100], repetitions=5)
    assert a == b


def test_multi_token_gas_flat_nft_gas_linear():
    rows = run_gas_benchmark([1, 10, 100], repetitions=2)
    table = by_series(rows)
    assert len({table[("erc1155-mint", q)] for q in (1, 10, 100)}) == 1
    assert len({table[("erc1155-transfer", q)] for q in (1, 10, 100)}) == 1
    mint = [table[("erc721-mint", q)] for q in (1, 10, 100)]
    assert mint[0] < mint[1] < mint[2]


def test_gas_csv_round_trip(tmp_path):
    rows = run_gas_benchmark([1, 10], repetitions=2)
    path = tmp_path / "gas.csv"
    write_gas_csv(rows, path)
    assert read_gas_csv(path) == rows
    assert path.read_text().splitlines()[0] == "standard,quantity,gas"
    assert "erc1155-mint" in gas_summary(rows)


def test_auth_seeded_runs_reproduce():
    model = LatencyModel(rng_seed=42)
    a = run_auth_benchmark(SchemeKind.SFWT_QUERY, 50, 10, model)
    b = run_auth_benchmark(SchemeKind.SFWT_QUERY, 50, 10, model)
    assert a.samples == b.samples
    c = run_auth_benchmark(SchemeKind.SFWT_QUERY, 50, 10, LatencyModel(rng_seed=43))
    assert c.samples != a.samples


def test_auth_all_samples_positive():
    model = LatencyModel(rng_seed=1)
    for scheme in SchemeKind:
        stats = run_auth_benchmark(scheme, 100, 10, model)
        assert stats.min_ms > 0
        assert stats.trials == 100


def test_block_broadcast_tracks_closed_form():
    model = LatencyModel(rng_seed=5)
    for interval in (1, 10):
        stats = run_auth_benchmark(SchemeKind.BLOCK_BROADCAST, 400, interval, model)
        expected = block_broadcast_expected_ms(model, interval)
        assert abs(stats.mean_ms - expected) / expected < 0.10


def test_scheme_mean_ordering_holds_across_seeds():
    for seed in (1, 7, 99, 1234):
        model = LatencyModel(rng_seed=seed)
        means = {
            scheme: run_auth_benchmark(scheme, 100, 10, model).mean_ms for scheme in SchemeKind
        }
        assert means[SchemeKind.SFWT_QUERY] < means[SchemeKind.N_WPA2] < means[SchemeKind.BLOCK_BROADCAST]
        stddevs = {
            scheme: run_auth_benchmark(scheme, 100, 10, model).stddev_ms for scheme in SchemeKind
        }
        assert stddevs[SchemeKind.BLOCK_BROADCAST] == max(stddevs.values())
        assert stddevs[SchemeKind.SFWT_QUERY] <= 2 * stddevs[SchemeKind.WPA2]


def test_auth_csv_round_trip_and_determinism(tmp_path):
    model = LatencyModel(rng_seed=42)
    stats = run_auth_benchmark(SchemeKind.WPA2, 20, 10, model)
    rows = trial_rows(stats)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_auth_csv(rows, first)
    write_auth_csv(rows, second)
    assert first.read_bytes() == second.read_bytes()
    parsed = read_auth_csv(first)
    assert [r.scheme for r in parsed] == [SchemeKind.WPA2] * 20
    assert parsed[0].latency_ms == pytest.approx(rows[0].latency_ms, abs=1e-6)
    assert auth_summary([stats]).splitlines()[1].startswith("wpa2")


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        run_auth_benchmark(SchemeKind.WPA2, 0, 10, LatencyModel())


def test_cli_unwritable_output_exits_nonzero(tmp_path):
    from click.testing import CliRunner

    from sfwt.bench.cli import cli

    result = CliRunner().invoke(
        cli, ["auth", "--trials", "2", "--out", str(tmp_path / "no" / "dir" / "x.csv")]
    )
    assert result.exit_code != 0
    assert "cannot write" in result.output + result.stderr


def test_cli_gas_and_auth_end_to_end(tmp_path):
    from click.testing import CliRunner

    from sfwt.bench.cli import cli

    gas_out = tmp_path / "gas.csv"
    result = CliRunner().invoke(cli, ["gas", "--quantities", "1,10", "--repetitions", "2",
                                      "--out", str(gas_out)])
    assert result.exit_code == 0, result.output
    assert gas_out.exists() and "erc721-mint" in result.output
    auth_out = tmp_path / "auth.csv"
    result = CliRunner().invoke(cli, ["auth", "--scheme", "sfwt-query", "--trials", "5",
                                      "--out", str(auth_out)])
    assert result.exit_code == 0, result.output
    assert auth_out.read_text().splitlines()[0] == "scheme,trial,latency_ms"
