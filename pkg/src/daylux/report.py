"""Run artifacts: trajectory CSV, per-panel plot data, and the summary file.

Every writer here is a pure function of the record stream, with pinned
numeric formatting (integers bare, reals at 9 significant digits), so a
repeated run reproduces each artifact byte for byte.
"""

from __future__ import annotations

import os

from .metrics import (
    NARROW_BAND,
    PERCEPTION_BAND,
    WIDE_BAND,
    BandReport,
    band_report,
    extreme_rarity,
)
from .svgplot import polyline_chart

TRAJECTORY_HEADER = (
    "k,E_desired,E_daylight,E_electric,E_measured,eps,deps,U,U_IM,"
    "loss_inverse,loss_controller"
)


def format_real(x: float) -> str:
    s = f"{x:.9g}"
    return "0" if s == "-0" else s


def write_trajectory_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(TRAJECTORY_HEADER + "\n")
        for r in records:
            fh.write(
                f"{r.k},{r.e_desired},{r.e_daylight},{r.e_electric},{r.e_measured},"
                f"{r.eps},{r.deps},{r.u},{r.u_im},"
                f"{format_real(r.loss_inverse)},{format_real(r.loss_controller)}\n"
            )


def write_panel_csvs(records, out_dir) -> list[str]:
    """One plot-data file per panel: illuminances, error, command."""
    paths = []
    p = os.path.join(out_dir, "panel_illuminance.csv")
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,E_desired,E_daylight,E_electric,E_measured\n")
        for r in records:
            fh.write(f"{r.k},{r.e_desired},{r.e_daylight},{r.e_electric},{r.e_measured}\n")
    paths.append(p)
    p = os.path.join(out_dir, "panel_error.csv")
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,eps,deps\n")
        for r in records:
            fh.write(f"{r.k},{r.eps},{r.deps}\n")
    paths.append(p)
    p = os.path.join(out_dir, "panel_command.csv")
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,U,U_IM\n")
        for r in records:
            fh.write(f"{r.k},{r.u},{r.u_im}\n")
    paths.append(p)
    return paths


def write_panel_svgs(records, out_dir) -> list[str]:
    paths = []
    p = os.path.join(out_dir, "panel_illuminance.svg")
    polyline_chart(
        p,
        "Illuminance (8-bit units)",
        [
            ("E_desired", [r.e_desired for r in records]),
            ("E_measured", [r.e_measured for r in records]),
            ("E_electric", [r.e_electric for r in records]),
            ("E_daylight", [r.e_daylight for r in records]),
        ],
        y_label="lx_d8bv",
    )
    paths.append(p)
    p = os.path.join(out_dir, "panel_error.svg")
    polyline_chart(
        p,
        "Control error",
        [("eps", [r.eps for r in records])],
        y_label="lx_d8bv",
    )
    paths.append(p)
    p = os.path.join(out_dir, "panel_command.svg")
    polyline_chart(
        p,
        "Command",
        [
            ("U", [r.u for r in records]),
            ("U_IM", [r.u_im for r in records]),
        ],
        y_label="V_d8bv",
    )
    paths.append(p)
    return paths


def summary_text(records, report: BandReport) -> str:
    """Human-readable digest followed by the machine-readable block."""
    total = len(records)
    shell = extreme_rarity(records, report.warmup_steps)
    lines = [
        f"steps: {total} total, {report.n_steady} steady (warmup {report.warmup_steps})",
    ]
    if report.valid:
        lines += [
            f"eps range: [{report.eps_min}, {report.eps_max}]",
            f"eps in wide band [{WIDE_BAND[0]}, {WIDE_BAND[1]}]: "
            f"{100.0 * report.frac_in_wide:.1f}%",
            f"eps in narrow band [{NARROW_BAND[0]}, {NARROW_BAND[1]}]: "
            f"{100.0 * report.frac_in_narrow:.1f}%",
            f"eps in wide-band shell (outside narrow): {100.0 * shell:.1f}%",
            f"E_measured in perception band [{PERCEPTION_BAND[0]}, {PERCEPTION_BAND[1]}]: "
            f"{100.0 * report.frac_meas_in_perception:.1f}%",
            f"rms eps: {format_real(report.rms_eps)}",
        ]
    else:
        lines.append("no steady-state steps after warmup; band statistics not meaningful")
    lines.append("")
    lines.append(report.as_kv_block())
    lines.append(f"extreme_shell_frac={shell:.9g}")
    return "\n".join(lines) + "\n"


def write_run_artifacts(records, warmup_steps: int, out_dir) -> dict[str, object]:
    """Write every artifact of a run into out_dir; returns paths and report."""
    os.makedirs(out_dir, exist_ok=True)
    traj = os.path.join(out_dir, "trajectory.csv")
    write_trajectory_csv(records, traj)
    panels = write_panel_csvs(records, out_dir)
    svgs = write_panel_svgs(records, out_dir)
    report = band_report(records, warmup_steps)
    summary = os.path.join(out_dir, "summary.txt")
    with open(summary, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(summary_text(records, report))
    return {
        "trajectory": traj,
        "panels": panels,
        "svgs": svgs,
        "summary": summary,
        "report": report,
    }
