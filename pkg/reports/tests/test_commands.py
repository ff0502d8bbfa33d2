import os
import re
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from core.choices import Frequency
from marketdata.loaders import load_csv
from marketdata.transforms import align, to_returns
from reports.base import ExitCode
from risk.correlation import pearson_correlation
from risk.models import SurfaceRun
from synthetic.config import load_generator_config
from synthetic.generators import generate

ROW = re.compile(r"^\| \d+\.\d\d% \(")


@pytest.fixture
def synthetic_config(tmp_path):
    def write(n=3000, seed=21, rho=0.42, extra=""):
        path = tmp_path / f"gaussian-{n}-{seed}.toml"
        path.write_text(f"[generator]\nseed = {seed}\nn = {n}\nrho = {rho}\n{extra}", encoding="utf-8")
        return path
    return write


def run(command, **options):
    out, err = StringIO(), StringIO()
    call_command(command, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def test_daily_text_table_shape(synthetic_config):
    output, _ = run('table', synthetic=synthetic_config(), grid='standard-daily')
    rows = [line for line in output.splitlines() if ROW.match(line)]
    assert len(rows) == 6
    assert all(len(row.strip().strip("|").split("|")) == 7 for row in rows)
    assert "(25%, 75%)" in output
    assert "99.62% (1 year)" in output
    assert "Pearson correlation" in output


def test_weekly_text_table_shape(synthetic_config):
    output, _ = run('table', synthetic=synthetic_config(), grid='standard-weekly')
    rows = [line for line in output.splitlines() if ROW.match(line)]
    assert len(rows) == 4
    assert "98.08% (1 year)" in output


def test_csv_table(synthetic_config):
    output, _ = run('table', synthetic=synthetic_config(), format='csv')
    lines = output.splitlines()
    assert lines[0] == "probability,waiting_period,w1,w2,position,rho,in_range"
    assert len(lines) == 37
    assert lines[1].startswith("0.8,5,0.25,0.75,long,")


def test_position_filter(synthetic_config):
    output, _ = run('table', synthetic=synthetic_config(), format='csv', position='short')
    assert len(output.splitlines()) == 19
    assert ",long," not in output


def test_insufficient_sample_exits_with_data_error(synthetic_config):
    with pytest.raises(CommandError) as excinfo:
        run('table', synthetic=synthetic_config(n=200))
    assert excinfo.value.returncode == ExitCode.DATA
    assert "insufficient-sample" in str(excinfo.value)
    assert "p=99.62%" in str(excinfo.value)


def test_missing_price_file(tmp_path):
    with pytest.raises(CommandError) as excinfo:
        run('table', asset1=tmp_path / "a.csv", asset2=tmp_path / "b.csv")
    assert excinfo.value.returncode == ExitCode.DATA
    assert str(excinfo.value).startswith("file-not-found")


def test_two_sources_is_a_usage_error(synthetic_config, tmp_path):
    with pytest.raises(CommandError) as excinfo:
        run('table', synthetic=synthetic_config(), asset1=tmp_path / "a.csv", asset2=tmp_path / "b.csv")
    assert excinfo.value.returncode == ExitCode.USAGE


def test_paper_grid_names_select_the_presets(synthetic_config):
    daily, _ = run('table', synthetic=synthetic_config(), grid='paper-daily', format='csv')
    weekly, _ = run('table', synthetic=synthetic_config(), grid='paper-weekly', format='csv')
    assert len(daily.splitlines()) == 37
    assert len(weekly.splitlines()) == 25


def test_invalid_price_values_are_data_errors(synthetic_config):
    """Returns of -100% or worse cannot be compounded into weekly closes."""
    with pytest.raises(CommandError) as excinfo:
        run('table', synthetic=synthetic_config(extra="sigma1 = 2.0\n"), frequency='weekly')
    assert excinfo.value.returncode == ExitCode.DATA
    assert str(excinfo.value).startswith("invalid-config")


def test_bad_generator_file_is_a_data_error(synthetic_config):
    with pytest.raises(CommandError) as excinfo:
        run('table', synthetic=synthetic_config(extra="volatility = 1\n"))
    assert excinfo.value.returncode == ExitCode.DATA


def test_weights_not_summing_to_one_are_a_usage_error(synthetic_config):
    with pytest.raises(CommandError) as excinfo:
        run('table', synthetic=synthetic_config(), weights=[(0.7, 0.7)])
    assert excinfo.value.returncode == ExitCode.USAGE


def test_price_file_with_invalid_utf8_is_a_data_error(tmp_path):
    good, bad = tmp_path / "a.csv", tmp_path / "b.csv"
    good.write_text("date,close\n2024-01-02,100\n2024-01-03,101\n", encoding="utf-8")
    bad.write_bytes(b"date,close\n2024-01-02,100\n2024-01-03,1\xff1\n")
    with pytest.raises(CommandError) as excinfo:
        run('table', asset1=good, asset2=bad)
    assert excinfo.value.returncode == ExitCode.DATA
    assert str(excinfo.value).startswith("malformed-row: line 3")


def test_unknown_format_is_a_usage_error(synthetic_config):
    with pytest.raises(CommandError) as excinfo:
        call_command('table', '--format=svg', synthetic=synthetic_config(), stdout=StringIO())
    assert excinfo.value.returncode == ExitCode.USAGE


@pytest.mark.django_db
def test_table_save_persists_run(synthetic_config):
    _, err = run('table', synthetic=synthetic_config(), save=True, seed=77)
    run_record = SurfaceRun.objects.get()
    assert run_record.seed == 77
    assert run_record.points.count() == 36
    assert str(run_record.id) in err


@pytest.mark.django_db
def test_table_save_rejects_seed_beyond_signed_range(synthetic_config):
    with pytest.raises(CommandError) as excinfo:
        run('table', synthetic=synthetic_config(), save=True, seed=2 ** 63)
    assert excinfo.value.returncode == ExitCode.USAGE
    assert "2**63" in str(excinfo.value)
    assert not SurfaceRun.objects.exists()


def test_unsaved_table_accepts_any_unsigned_seed(synthetic_config):
    output, _ = run('table', synthetic=synthetic_config(), seed=2 ** 64 - 1, format='csv')
    assert len(output.splitlines()) == 37


def test_table_is_byte_identical_across_runs(synthetic_config, tmp_path):
    cfg = synthetic_config()
    for output_format in ("csv", "text"):
        first, second = tmp_path / f"first.{output_format}", tmp_path / f"second.{output_format}"
        run('table', synthetic=cfg, format=output_format, out=first)
        run('table', synthetic=cfg, format=output_format, out=second)
        assert first.read_bytes() == second.read_bytes()


def test_figure_is_byte_identical_across_runs(synthetic_config):
    cfg = synthetic_config()
    first, _ = run('figure', synthetic=cfg)
    second, _ = run('figure', synthetic=cfg)
    assert first == second


def test_figure_draws_long_and_short_lines(synthetic_config):
    output, _ = run('figure', synthetic=synthetic_config())
    assert output.startswith("<svg")
    assert output.count("<polyline") == 2
    assert "weights (50%, 50%)" in output
    assert "1 year" in output


def test_figure_points_match_table_values(synthetic_config):
    cfg = synthetic_config()
    figure_csv, _ = run('figure', synthetic=cfg, format='csv')
    table_csv, _ = run('table', synthetic=cfg, format='csv', weights=[(0.5, 0.5)])
    assert figure_csv == table_csv
    assert len(figure_csv.splitlines()) == 13


def test_figure_rejects_several_weight_pairs(synthetic_config):
    with pytest.raises(CommandError) as excinfo:
        run('figure', synthetic=synthetic_config(), weights=[(0.5, 0.5), (0.25, 0.75)])
    assert excinfo.value.returncode == ExitCode.USAGE


def test_figure_on_empty_grid_fails(synthetic_config, tmp_path):
    grid = tmp_path / "long-only.csv"
    grid.write_text("probability,w1,w2,position\n0.95,0.5,0.5,long\n", encoding="utf-8")
    with pytest.raises(CommandError) as excinfo:
        run('figure', synthetic=synthetic_config(), grid=str(grid), position='short')
    assert excinfo.value.returncode != ExitCode.OK


def test_seed_override_changes_output(synthetic_config):
    cfg = synthetic_config()
    base, _ = run('table', synthetic=cfg, format='csv')
    reseeded, _ = run('table', synthetic=cfg, format='csv', seed=22)
    assert base != reseeded


def test_synthesize_writes_loadable_prices(synthetic_config, tmp_path):
    cfg = synthetic_config(n=600)
    out_dir = tmp_path / "prices"
    run('synthesize', synthetic=str(cfg), out_dir=str(out_dir))

    prices = align(load_csv(out_dir / "asset1.csv"), load_csv(out_dir / "asset2.csv"))
    generated = generate(load_generator_config(cfg))
    for series, original in zip(prices, generated):
        assert len(series) == 601
        assert to_returns(series).values == pytest.approx(original.values, abs=1e-12)


def test_table_on_price_files(synthetic_config, tmp_path):
    out_dir = tmp_path / "prices"
    run('synthesize', synthetic=str(synthetic_config()), out_dir=str(out_dir))
    output, _ = run('table', asset1=out_dir / "asset1.csv", asset2=out_dir / "asset2.csv", format='csv')
    assert len(output.splitlines()) == 37


def test_facts_covers_both_frequencies(synthetic_config):
    output, _ = run('facts', synthetic=synthetic_config())
    assert "[daily] Pearson" in output
    assert "[weekly] Pearson" in output
    assert "Weekly minus daily Pearson" in output


def test_facts_skips_weekly_surface_when_grid_has_no_weekly_levels(synthetic_config, tmp_path):
    grid = tmp_path / "daily-only.csv"
    grid.write_text("probability,w1,w2,position\nweek,0.5,0.5,long\nweek,0.5,0.5,short\n", encoding="utf-8")
    output, err = run('facts', synthetic=synthetic_config(), grid=str(grid))
    assert "[daily]" in output
    assert "[weekly]" not in output
    assert "Weekly surface skipped" in err


def test_selftest_with_tiny_sample_breaches(tmp_path):
    report = tmp_path / "selftest.txt"
    with pytest.raises(CommandError) as excinfo:
        run('selftest', seed=[1], n=1000, out=report)
    assert excinfo.value.returncode == ExitCode.TOLERANCE
    assert "tolerance breached at seed 1" in str(excinfo.value)
    text = report.read_text()
    assert "BREACH" in text
    assert text.endswith(")\n")
    assert "Result: FAIL" in text


def test_selftest_report_is_reproducible(tmp_path):
    reports = []
    for name in ("first.txt", "second.txt"):
        with pytest.raises(CommandError):
            run('selftest', seed=[4], n=1000, out=tmp_path / name)
        reports.append((tmp_path / name).read_bytes())
    assert reports[0] == reports[1]


@pytest.mark.slow
def test_selftest_passes_on_default_seeds():
    output, err = run('selftest')
    assert output.splitlines()[-1] == "Result: PASS"
    assert output.count(" ok") == 3 * 36
    assert "holds at every grid point" in err


@pytest.mark.skipif(
    not (os.environ.get("TAILCORR_SPX_CSV") and os.environ.get("TAILCORR_FTSE_CSV")),
    reason="set TAILCORR_SPX_CSV and TAILCORR_FTSE_CSV to daily closes for 1995-2003",
)
def test_reproduces_published_daily_surface():
    spx, ftse = os.environ["TAILCORR_SPX_CSV"], os.environ["TAILCORR_FTSE_CSV"]
    output, _ = run('table', asset1=spx, asset2=ftse, grid='standard-daily', format='csv')
    rows = [line.split(",") for line in output.splitlines()[1:]]
    (half_long_year,) = [row for row in rows if row[1] == "260" and row[2] == "0.5" and row[4] == "long"]
    assert float(half_long_year[5]) == pytest.approx(0.516, abs=0.03)

    r1, r2 = (to_returns(series) for series in align(load_csv(spx), load_csv(ftse)))
    assert r1.frequency == Frequency.DAILY
    assert pearson_correlation(r1, r2) == pytest.approx(0.42, abs=0.01)
