"""Tests for the artifact writers: CSV formats, summary text, SVG output."""

from daylux.config import SimConfig
from daylux.loop import StepRecord, run_simulation
from daylux.metrics import band_report
from daylux.report import (
    TRAJECTORY_HEADER,
    format_real,
    summary_text,
    write_panel_csvs,
    write_run_artifacts,
    write_trajectory_csv,
)


def sample_records(n=40):
    recs, _ = run_simulation(SimConfig(steps=n, daylight_source="constant:30"))
    return recs


def test_format_real():
    assert format_real(0.0) == "0"
    assert format_real(-0.0) == "0"  # no negative zero in artifacts
    assert format_real(0.1) == "0.1"
    assert format_real(1e-9) == "1e-09"
    assert format_real(7.689350249903828e-06) == "7.68935025e-06"


def test_trajectory_csv_layout(tmp_path):
    rec = StepRecord(
        k=0, e_desired=100, e_daylight=40, e_electric=0, e_measured=40,
        eps=60, deps=60, u=128, u_im=128,
        loss_inverse=7.689350249903828e-06, loss_controller=0.0,
    )
    path = tmp_path / "t.csv"
    write_trajectory_csv([rec], path)
    lines = path.read_text().splitlines()
    assert lines[0] == TRAJECTORY_HEADER
    assert lines[1] == "0,100,40,0,40,60,60,128,128,7.68935025e-06,0"


def test_panel_csv_headers(tmp_path):
    paths = write_panel_csvs(sample_records(5), tmp_path)
    heads = {p.rsplit("/", 1)[-1]: open(p).readline().strip() for p in map(str, paths)}
    assert heads["panel_illuminance.csv"] == "k,E_desired,E_daylight,E_electric,E_measured"
    assert heads["panel_error.csv"] == "k,eps,deps"
    assert heads["panel_command.csv"] == "k,U,U_IM"


def test_summary_text_structure():
    recs = sample_records(300)
    rep = band_report(recs, 200)
    text = summary_text(recs, rep)
    assert text.startswith("steps: 300 total, 100 steady (warmup 200)")
    assert "eps in wide band [-11, 9]:" in text
    assert "eps in narrow band [-5, 5]:" in text
    assert "E_measured in perception band [93, 107]:" in text
    assert "frac_in_wide=" in text  # machine block rides below the prose
    assert "extreme_shell_frac=" in text


def test_write_run_artifacts_creates_everything(tmp_path):
    out = tmp_path / "nested" / "run"
    arts = write_run_artifacts(sample_records(20), 5, out)
    assert sorted(arts) == ["panels", "report", "summary", "svgs", "trajectory"]
    for p in [arts["trajectory"], arts["summary"], *arts["panels"], *arts["svgs"]]:
        assert str(p).startswith(str(out))
        with open(p, "rb") as fh:
            assert fh.read(1)  # exists and non-empty
    assert arts["report"].n_steady == 15


def test_artifacts_are_byte_identical_across_runs(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    write_run_artifacts(sample_records(60), 10, a)
    write_run_artifacts(sample_records(60), 10, b)
    for name in (
        "trajectory.csv", "summary.txt",
        "panel_illuminance.csv", "panel_error.csv", "panel_command.csv",
        "panel_illuminance.svg", "panel_error.svg", "panel_command.svg",
    ):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_svg_files_are_wellformed_charts(tmp_path):
    arts = write_run_artifacts(sample_records(30), 0, tmp_path)
    for p in arts["svgs"]:
        body = open(p).read()
        assert body.startswith("<svg ") or body.startswith("<?xml")
        assert "<polyline" in body and body.rstrip().endswith("</svg>")
