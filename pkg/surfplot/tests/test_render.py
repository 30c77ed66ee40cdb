import pathlib

import pytest

from surfplot.cli import main
from surfplot.render import PlotSpec, render_curves

DATA = pathlib.Path(__file__).parent / "data"


def test_render_reports_curves_and_points(tmp_path):
    out = tmp_path / "fig.png"
    report = render_curves(PlotSpec(
        inputs=(DATA / "golden_crossing.csv",), out=str(out),
        decoder="synthetic", eta=0.5,
    ))
    assert out.exists() and out.stat().st_size > 0
    assert report.curves == 2
    assert report.points_per_curve == {3: 9, 5: 9}
    assert report.upper_bound_points == 0
    assert report.crossing == 0.1


def test_render_marks_upper_bounds(tmp_path):
    report = render_curves(PlotSpec(
        inputs=(DATA / "golden_noisy.csv",), out=str(tmp_path / "fig.png"),
    ))
    assert report.upper_bound_points == 1
    assert report.points_per_curve == {3: 10, 5: 9}


def test_render_is_deterministic(tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    for out in (a, b):
        render_curves(PlotSpec(
            inputs=(DATA / "golden_crossing.csv",), out=str(out), logy=True,
        ))
    assert a.read_bytes() == b.read_bytes()


def test_render_zoom_and_logy(tmp_path):
    out = tmp_path / "zoom.png"
    report = render_curves(PlotSpec(
        inputs=(DATA / "golden_crossing.csv",), out=str(out),
        logy=True, zoom=(0.08, 0.12),
    ))
    assert report.crossing == pytest.approx(0.1)
    assert out.exists()


def test_cli_end_to_end(tmp_path, capsys):
    out = tmp_path / "cli.png"
    code = main([
        "--in", str(DATA / "golden_crossing.csv"),
        "--decoder", "synthetic", "--eta", "0.5",
        "--out", str(out), "--logy",
    ])
    assert code == 0
    assert out.exists()
    assert "crossing at p = 0.1000" in capsys.readouterr().out


def test_cli_empty_filter_is_usage_error(tmp_path, capsys):
    code = main([
        "--in", str(DATA / "golden_crossing.csv"),
        "--decoder", "nothing", "--out", str(tmp_path / "x.png"),
    ])
    assert code == 2


def test_cli_schema_error_is_runtime_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    code = main(["--in", str(bad), "--out", str(tmp_path / "x.png")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_cli_zoom_validation(tmp_path):
    code = main([
        "--in", str(DATA / "golden_crossing.csv"),
        "--out", str(tmp_path / "x.png"), "--zoom", "0.2", "0.1",
    ])
    assert code == 2
