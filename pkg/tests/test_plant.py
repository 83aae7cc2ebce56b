"""Tests for the LUT plant, daylight generators, and their CSV formats."""

import pytest

from daylux.plant import (
    DaylightTrajectory,
    ProcessLut,
    TableFormatError,
    gen_daylight,
    load_daylight_csv,
    load_lut_csv,
    lut_eval,
    lut_inverse,
    plant_measure,
    save_daylight_csv,
    save_lut_csv,
    synth_default_lut,
)


def test_default_lut_shape():
    lut = synth_default_lut()
    assert len(lut.knots) == 32
    assert lut.knots[0] == (0, 0)
    assert lut.knots[-1] == (255, 180)
    es = lut.e_values()
    assert all(a <= b for a, b in zip(es, es[1:]))


def test_default_lut_frozen_points():
    lut = synth_default_lut()
    assert lut_eval(lut, 162) == 100
    assert lut_inverse(lut, 40) == 80
    assert lut_inverse(lut, 80) == 136
    assert lut_inverse(lut, 100) == 162
    assert lut_inverse(lut, 140) == 210


def test_lut_eval_interpolates_and_rounds():
    lut = ProcessLut(((0, 0), (10, 20)))
    assert lut_eval(lut, 5) == 10
    lut = ProcessLut(((0, 0), (3, 1)))
    assert lut_eval(lut, 1) == 0  # 0.333 rounds down
    assert lut_eval(lut, 2) == 1  # 0.667 rounds up


def test_lut_eval_constant_extension():
    lut = ProcessLut(((10, 50), (20, 60)))
    assert lut_eval(lut, 0) == 50
    assert lut_eval(lut, 10) == 50
    assert lut_eval(lut, 20) == 60
    assert lut_eval(lut, 255) == 60


def test_lut_eval_monotone_everywhere():
    lut = synth_default_lut()
    values = [lut_eval(lut, u) for u in range(256)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_lut_inverse_ties_pick_smallest_u():
    flat = ProcessLut(((0, 100), (255, 100)))
    assert lut_inverse(flat, 100) == 0
    assert lut_inverse(flat, 0) == 0


def test_lut_inverse_round_trip_property():
    lut = synth_default_lut()
    for e in range(0, 181, 5):
        u = lut_inverse(lut, e)
        assert abs(lut_eval(lut, u) - e) <= 1  # rounding grid only


def test_process_lut_validation():
    with pytest.raises(ValueError):
        ProcessLut(((0, 0),))
    with pytest.raises(ValueError):
        ProcessLut(((5, 0), (5, 10)))  # u not strictly increasing
    with pytest.raises(ValueError):
        ProcessLut(((0, 10), (10, 5)))  # e decreasing
    with pytest.raises(ValueError):
        ProcessLut(((0, 0), (300, 10)))


def test_synth_lut_validation():
    with pytest.raises(ValueError):
        synth_default_lut(e_max=100)
    with pytest.raises(ValueError):
        synth_default_lut(gamma_shape=0.0)
    with pytest.raises(ValueError):
        synth_default_lut(knot_count=4)


def test_plant_measure_adds_and_saturates():
    lut = synth_default_lut()
    assert plant_measure(lut, 162, 30) == 130
    assert plant_measure(lut, 255, 255) == 255
    assert plant_measure(lut, 0, 0) == 0


def test_gen_constant():
    traj = gen_daylight("constant", 4, level=30)
    assert traj.samples == (30, 30, 30, 30)
    assert traj.provenance == "constant"


def test_gen_step():
    traj = gen_daylight("step", 4, level0=0, level1=100, k_switch=2)
    assert traj.samples == (0, 0, 100, 100)


def test_gen_ramp():
    traj = gen_daylight("ramp", 5, level0=0, level1=100)
    assert traj.samples == (0, 25, 50, 75, 100)
    assert gen_daylight("ramp", 1, level0=7, level1=200).samples == (7,)


def test_gen_fast_frozen_prefix():
    traj = gen_daylight("fast", 12, seed=2)
    assert traj.samples == (40, 40, 40, 40, 40, 40, 41, 41, 41, 41, 41, 41)
    assert traj.provenance == "fast(seed=2)"


def test_gen_fast_deterministic_and_seed_sensitive():
    a = gen_daylight("fast", 500, seed=9)
    b = gen_daylight("fast", 500, seed=9)
    c = gen_daylight("fast", 500, seed=10)
    assert a.samples == b.samples
    assert a.samples != c.samples


def test_gen_fast_stays_in_amplitude_window():
    traj = gen_daylight("fast", 5000, seed=1, base=40, amplitude=60)
    lo, hi = max(0, 40 - 60), min(255, 40 + 60)
    assert all(lo <= s <= hi for s in traj.samples)
    assert traj.samples[0] == 40


def test_gen_fast_actually_jumps():
    traj = gen_daylight("fast", 2000, seed=3)
    diffs = [abs(b - a) for a, b in zip(traj.samples, traj.samples[1:])]
    assert max(diffs) > 5  # at 5% jump probability, 2000 steps must jump


def test_gen_daylight_validation():
    with pytest.raises(ValueError):
        gen_daylight("constant", 0, level=30)
    with pytest.raises(ValueError):
        gen_daylight("sinus", 10)
    with pytest.raises(ValueError):
        gen_daylight("constant", 10, level=300)
    with pytest.raises(ValueError):
        gen_daylight("constant", 10, level=30, extra=1)
    with pytest.raises(ValueError):
        gen_daylight("fast", 10, step_prob=1.5)
    with pytest.raises(ValueError):
        gen_daylight("fast", 10, amplitude=0)
    with pytest.raises(ValueError):
        gen_daylight("step", 10, k_switch=-1)


def test_daylight_trajectory_validates_samples():
    with pytest.raises(ValueError):
        DaylightTrajectory((0, 500), "constant")
    assert len(DaylightTrajectory((), "empty")) == 0


def test_lut_csv_round_trip(tmp_path):
    lut = synth_default_lut()
    path = tmp_path / "lut.csv"
    save_lut_csv(lut, path)
    assert path.read_text().startswith("u,e\n0,0\n")
    assert load_lut_csv(path).knots == lut.knots


def test_lut_csv_errors_name_the_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("u,e\n5,10\n3,20\n")
    with pytest.raises(TableFormatError) as err:
        load_lut_csv(path)
    assert "line 3" in str(err.value) and "bad.csv" in str(err.value)

    path.write_text("u,volts\n0,0\n")
    with pytest.raises(TableFormatError) as err:
        load_lut_csv(path)
    assert "header" in str(err.value)

    path.write_text("u,e\n0,abc\n")
    with pytest.raises(TableFormatError) as err:
        load_lut_csv(path)
    assert "integer" in str(err.value)


def test_lut_csv_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "lut.csv"
    path.write_text("# measured 2026-08-01\nu,e\n\n0,0\n# mid\n255,180\n")
    assert load_lut_csv(path).knots == ((0, 0), (255, 180))


def test_daylight_csv_round_trip(tmp_path):
    traj = gen_daylight("fast", 50, seed=4)
    path = tmp_path / "day.csv"
    save_daylight_csv(traj, path)
    back = load_daylight_csv(path)
    assert back.samples == traj.samples


def test_daylight_csv_requires_consecutive_k(tmp_path):
    path = tmp_path / "day.csv"
    path.write_text("k,e\n0,10\n2,20\n")
    with pytest.raises(TableFormatError) as err:
        load_daylight_csv(path)
    assert "expected 1 at line 3" in str(err.value)


def test_daylight_csv_header_only_is_empty(tmp_path):
    path = tmp_path / "day.csv"
    path.write_text("k,e\n")
    assert load_daylight_csv(path).samples == ()


def test_daylight_csv_rejects_empty_file(tmp_path):
    path = tmp_path / "day.csv"
    path.write_text("")
    with pytest.raises(TableFormatError):
        load_daylight_csv(path)
