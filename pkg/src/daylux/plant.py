"""Look-up-table plant, daylight disturbance trajectories, and their CSV I/O.

The lamps-plus-ballast chain is modelled as a static monotone table mapping
the 8-bit command U to electric illuminance; the room adds daylight on top
and the sensor saturates at 255.  A table of measured points (taken with the
lamps as the only light source) is exactly this object, which is why the
plant is a table and not a differential equation.

Daylight is an arbitrary per-step sequence.  Generators cover the cases the
simulator needs out of the box: constant, a single step, a linear ramp, and
a seeded "fast changes" walk (piecewise ramps with occasional jumps).  Any
other profile can be supplied as a CSV file.
"""

from __future__ import annotations

import bisect
import csv
from dataclasses import dataclass, field

from .rng import SplitMix64
from .signals import D8BV_MAX, check_d8bv, clamp8_sum, round_half_away

DEFAULT_LUT_E_MAX = 180
DEFAULT_LUT_SHAPE = 1.3
DEFAULT_LUT_KNOTS = 32

FAST_BASE = 40
FAST_AMPLITUDE = 60
FAST_STEP_PROB = 0.05
FAST_MAX_JUMP = 50

DAYLIGHT_KINDS = ("constant", "step", "ramp", "fast", "csv")


class TableFormatError(ValueError):
    """A CSV file failed validation; the message names the offending line."""


@dataclass(frozen=True)
class ProcessLut:
    """Monotone command-to-illuminance table, immutable once built.

    Between knots the table interpolates linearly and rounds half away from
    zero; outside the knot range it extends with the endpoint value.
    """

    knots: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.knots) < 2:
            raise ValueError(f"a LUT needs at least 2 knots, got {len(self.knots)}")
        prev_u = -1
        prev_e = -1
        for u, e in self.knots:
            check_d8bv(u, "LUT knot u")
            check_d8bv(e, "LUT knot e")
            if u <= prev_u:
                raise ValueError(f"LUT knot u values must be strictly increasing (u={u})")
            if e < prev_e:
                raise ValueError(f"LUT knot e values must be non-decreasing (e={e} after {prev_e})")
            prev_u, prev_e = u, e

    def u_values(self) -> list[int]:
        return [u for u, _ in self.knots]

    def e_values(self) -> list[int]:
        return [e for _, e in self.knots]


def lut_eval(lut: ProcessLut, u: int) -> int:
    """Electric illuminance for command u (piecewise-linear, rounded)."""
    check_d8bv(u, "u")
    us = lut.u_values()
    es = lut.e_values()
    if u <= us[0]:
        return es[0]
    if u >= us[-1]:
        return es[-1]
    hi = bisect.bisect_left(us, u)
    if us[hi] == u:
        return es[hi]
    lo = hi - 1
    frac = (u - us[lo]) / (us[hi] - us[lo])
    return round_half_away(es[lo] + frac * (es[hi] - es[lo]))


def lut_inverse(lut: ProcessLut, e_target: int) -> int:
    """Brute-force inverse: the smallest u whose output is nearest e_target.

    Deliberately exhaustive over all 256 commands; this is the oracle other
    components (and the `lut inspect` command) are judged against.
    """
    check_d8bv(e_target, "e_target")
    best_u = 0
    best_err = abs(lut_eval(lut, 0) - e_target)
    for u in range(1, D8BV_MAX + 1):
        err = abs(lut_eval(lut, u) - e_target)
        if err < best_err:
            best_u, best_err = u, err
    return best_u


def synth_default_lut(
    e_max: int = DEFAULT_LUT_E_MAX,
    gamma_shape: float = DEFAULT_LUT_SHAPE,
    knot_count: int = DEFAULT_LUT_KNOTS,
) -> ProcessLut:
    """Power-law stand-in table: e(u) = round(e_max * (u/255)**gamma_shape).

    Knots sit on an even u grid covering [0, 255], so e(0)=0 and e(255)=e_max.
    e_max must leave headroom above the usual 100 setpoint.
    """
    if not 120 <= e_max <= 255:
        raise ValueError(f"e_max must be in [120, 255], got {e_max}")
    if not gamma_shape > 0:
        raise ValueError(f"gamma_shape must be positive, got {gamma_shape}")
    if knot_count < 8:
        raise ValueError(f"knot_count must be >= 8, got {knot_count}")
    knots = []
    for i in range(knot_count):
        u = round_half_away(i * D8BV_MAX / (knot_count - 1))
        e = round_half_away(e_max * (u / D8BV_MAX) ** gamma_shape)
        knots.append((u, e))
    return ProcessLut(tuple(knots))


@dataclass(frozen=True)
class DaylightTrajectory:
    """Per-step daylight illuminance plus a tag saying where it came from."""

    samples: tuple[int, ...]
    provenance: str = "constant"

    def __post_init__(self) -> None:
        for k, s in enumerate(self.samples):
            check_d8bv(s, f"daylight sample at k={k}")

    def __len__(self) -> int:
        return len(self.samples)


def gen_daylight(kind: str, length: int, seed: int = 0, **params) -> DaylightTrajectory:
    """Build a daylight trajectory of `length` samples.

    Kinds and their parameters:
      constant: level
      step:     level0, level1, k_switch
      ramp:     level0, level1
      fast:     base, amplitude, step_prob, max_jump  (seeded)
    """
    if length < 1:
        raise ValueError(f"trajectory length must be >= 1, got {length}")
    if kind == "constant":
        level = check_d8bv(int(params.pop("level", 30)), "level")
        _reject_extras(kind, params)
        return DaylightTrajectory((level,) * length, "constant")
    if kind == "step":
        c0 = check_d8bv(int(params.pop("level0", 0)), "level0")
        c1 = check_d8bv(int(params.pop("level1", 100)), "level1")
        k_switch = int(params.pop("k_switch", length // 2))
        _reject_extras(kind, params)
        if k_switch < 0:
            raise ValueError(f"k_switch must be >= 0, got {k_switch}")
        samples = tuple(c0 if k < k_switch else c1 for k in range(length))
        return DaylightTrajectory(samples, "step")
    if kind == "ramp":
        c0 = check_d8bv(int(params.pop("level0", 0)), "level0")
        c1 = check_d8bv(int(params.pop("level1", 100)), "level1")
        _reject_extras(kind, params)
        if length == 1:
            return DaylightTrajectory((c0,), "ramp")
        samples = tuple(
            round_half_away(c0 + (c1 - c0) * k / (length - 1)) for k in range(length)
        )
        return DaylightTrajectory(samples, "ramp")
    if kind == "fast":
        return _gen_fast_changes(length, seed, **params)
    raise ValueError(f"unknown daylight kind {kind!r} (expected one of {DAYLIGHT_KINDS})")


def _gen_fast_changes(
    length: int,
    seed: int,
    base: int = FAST_BASE,
    amplitude: int = FAST_AMPLITUDE,
    step_prob: float = FAST_STEP_PROB,
    max_jump: int = FAST_MAX_JUMP,
) -> DaylightTrajectory:
    """Seeded walk of piecewise ramps with occasional jumps.

    sample[0] = base.  Each later step draws r in [0,1): with r < step_prob
    the level jumps by uniform(-max_jump, +max_jump) and a fresh drift slope
    is drawn from uniform(-s, +s) with s = amplitude*step_prob/6 (0.5 per
    step at the defaults); otherwise the level advances by the current
    slope.  Levels are confined to [max(0, base-amplitude),
    min(255, base+amplitude)].  Draw budget: one u64 on drift steps, three
    on jump steps, plus one for the initial slope.
    """
    base = check_d8bv(int(base), "base")
    amplitude = int(amplitude)
    max_jump = int(max_jump)
    if not 1 <= amplitude <= D8BV_MAX:
        raise ValueError(f"amplitude must be in [1, 255], got {amplitude}")
    if not 0.0 <= step_prob <= 1.0:
        raise ValueError(f"step_prob must be in [0, 1], got {step_prob}")
    if not 1 <= max_jump <= D8BV_MAX:
        raise ValueError(f"max_jump must be in [1, 255], got {max_jump}")
    lo = max(0, base - amplitude)
    hi = min(D8BV_MAX, base + amplitude)
    rng = SplitMix64(seed)
    slope_span = amplitude * step_prob / 6.0
    slope = rng.uniform(-slope_span, slope_span)
    level = float(base)
    samples = [base]
    for _ in range(1, length):
        if rng.random() < step_prob:
            level += rng.uniform(-max_jump, max_jump)
            slope = rng.uniform(-slope_span, slope_span)
        else:
            level += slope
        if level < lo:
            level = float(lo)
        elif level > hi:
            level = float(hi)
        samples.append(round_half_away(level))
    return DaylightTrajectory(tuple(samples), f"fast(seed={seed})")


def plant_measure(lut: ProcessLut, u_prev: int, daylight_k: int) -> int:
    """Sensor reading: electric light for the pending command plus daylight."""
    return clamp8_sum(lut_eval(lut, u_prev), daylight_k)


def load_lut_csv(path) -> ProcessLut:
    """Read a `u,e` table; validation failures name the 1-based line."""
    rows = _read_csv_rows(path, header=("u", "e"))
    knots = []
    prev_u = -1
    for lineno, cells in rows:
        u = _int_cell(path, lineno, cells, 0, "u")
        e = _int_cell(path, lineno, cells, 1, "e")
        if not 0 <= u <= D8BV_MAX:
            raise TableFormatError(f"{path}: u out of [0, 255] at line {lineno}")
        if not 0 <= e <= D8BV_MAX:
            raise TableFormatError(f"{path}: e out of [0, 255] at line {lineno}")
        if u <= prev_u:
            raise TableFormatError(f"{path}: non-increasing u at line {lineno}")
        prev_u = u
        knots.append((u, e))
    try:
        return ProcessLut(tuple(knots))
    except ValueError as exc:
        raise TableFormatError(f"{path}: {exc}") from exc


def save_lut_csv(lut: ProcessLut, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("u,e\n")
        for u, e in lut.knots:
            fh.write(f"{u},{e}\n")


def load_daylight_csv(path) -> DaylightTrajectory:
    """Read a `k,e` trajectory; k must run 0,1,2,... without gaps."""
    rows = _read_csv_rows(path, header=("k", "e"))
    samples = []
    expect_k = 0
    for lineno, cells in rows:
        k = _int_cell(path, lineno, cells, 0, "k")
        e = _int_cell(path, lineno, cells, 1, "e")
        if k != expect_k:
            raise TableFormatError(
                f"{path}: k must be consecutive from 0, expected {expect_k} at line {lineno}"
            )
        if not 0 <= e <= D8BV_MAX:
            raise TableFormatError(f"{path}: e out of [0, 255] at line {lineno}")
        samples.append(e)
        expect_k += 1
    return DaylightTrajectory(tuple(samples), f"csv({path})")


def save_daylight_csv(traj: DaylightTrajectory, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("k,e\n")
        for k, e in enumerate(traj.samples):
            fh.write(f"{k},{e}\n")


def _read_csv_rows(path, header: tuple[str, ...]):
    """Yield (lineno, cells) for data rows; enforce the exact header."""
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header_seen = False
        for lineno, cells in enumerate(reader, start=1):
            if not cells or (cells[0].lstrip().startswith("#")):
                continue
            cells = [c.strip() for c in cells]
            if not header_seen:
                if tuple(c.lower() for c in cells) != header:
                    raise TableFormatError(
                        f"{path}: expected header {','.join(header)!r} at line {lineno}"
                    )
                header_seen = True
                continue
            out.append((lineno, cells))
        if not header_seen:
            raise TableFormatError(f"{path}: empty file, expected header {','.join(header)!r}")
    return out


def _int_cell(path, lineno: int, cells: list[str], idx: int, name: str) -> int:
    if len(cells) <= idx:
        raise TableFormatError(f"{path}: missing column {name!r} at line {lineno}")
    try:
        return int(cells[idx])
    except ValueError:
        raise TableFormatError(
            f"{path}: column {name!r} must be an integer at line {lineno}, got {cells[idx]!r}"
        ) from None


def _reject_extras(kind: str, params: dict) -> None:
    if params:
        names = ", ".join(sorted(params))
        raise ValueError(f"unexpected parameter(s) for daylight kind {kind!r}: {names}")
