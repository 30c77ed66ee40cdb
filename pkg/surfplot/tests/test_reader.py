import pathlib

import pytest

from surfplot.reader import SchemaError, UsageError, filter_rows, read_rows

DATA = pathlib.Path(__file__).parent / "data"


def test_reads_golden_file():
    rows = read_rows(DATA / "golden_crossing.csv")
    assert len(rows) == 18
    assert {r.d for r in rows} == {3, 5}
    first = rows[0]
    assert first.decoder == "synthetic"
    assert first.trials == 1_000_000
    assert first.p_l == first.failures / first.trials


def test_upper_bound_rows_flagged():
    rows = read_rows(DATA / "golden_noisy.csv")
    bounds = [r for r in rows if r.is_upper_bound]
    assert len(bounds) == 1
    assert bounds[0].p_l_bound == 1 / 1000


def test_schema_error_names_offending_column(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("decoder,d,eta,p,trials,failures,p_l,ci_lo,ci_high,seed,wall_time_s\n")
    with pytest.raises(SchemaError, match="ci_lo"):
        read_rows(bad)


def test_schema_error_on_missing_column(tmp_path):
    bad = tmp_path / "short.csv"
    bad.write_text("decoder,d,eta\n")
    with pytest.raises(SchemaError, match="expected 'p'"):
        read_rows(bad)


def test_filter_selects_and_rejects():
    rows = read_rows(DATA / "golden_crossing.csv")
    assert len(filter_rows(rows, decoder="synthetic", eta=0.5)) == 18
    with pytest.raises(UsageError):
        filter_rows(rows, decoder="mwpm")
    with pytest.raises(UsageError):
        filter_rows(rows, eta=100.0)
