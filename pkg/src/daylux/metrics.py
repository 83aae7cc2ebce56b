"""Steady-state error-band statistics for a simulated run.

The regulation quality of a run is summarised by how the control error eps
sits inside two closed bands once transients have died out: a wide band
[-11, 9] that the error should essentially never leave, and a narrow band
[-5, 5] that should hold the majority of steps.  A third counter watches the
measured illuminance itself against [93, 107], the window around the 100
setpoint within which variation is imperceptible to an occupant.

"Steady state" is a fixed configurable warm-up cut, not a detection
heuristic, so two runs of the same config always agree on what was counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

WIDE_BAND = (-11, 9)
NARROW_BAND = (-5, 5)
PERCEPTION_BAND = (93, 107)


@dataclass(frozen=True)
class BandReport:
    warmup_steps: int
    n_steady: int
    eps_min: int
    eps_max: int
    frac_in_wide: float
    frac_in_narrow: float
    frac_meas_in_perception: float
    rms_eps: float
    valid: bool

    def as_kv_block(self) -> str:
        """Machine-readable summary, one key=value per line."""
        lines = [
            f"warmup_steps={self.warmup_steps}",
            f"n_steady={self.n_steady}",
            f"eps_min={self.eps_min}",
            f"eps_max={self.eps_max}",
            f"frac_in_wide={self.frac_in_wide:.9g}",
            f"frac_in_narrow={self.frac_in_narrow:.9g}",
            f"frac_meas_in_perception={self.frac_meas_in_perception:.9g}",
            f"rms_eps={self.rms_eps:.9g}",
            f"valid={1 if self.valid else 0}",
        ]
        return "\n".join(lines)


def band_report(records, warmup_steps: int) -> BandReport:
    """Band statistics over records with k >= warmup_steps.

    When nothing survives the cut the report carries n_steady=0, zero
    fractions and valid=False rather than raising; a saturated or truncated
    run still gets an honest summary.
    """
    if warmup_steps < 0:
        raise ValueError(f"warmup_steps must be >= 0, got {warmup_steps}")
    steady = [r for r in records if r.k >= warmup_steps]
    n = len(steady)
    if n == 0:
        return BandReport(warmup_steps, 0, 0, 0, 0.0, 0.0, 0.0, 0.0, valid=False)
    n_wide = 0
    n_narrow = 0
    n_percep = 0
    sq = 0.0
    eps_min = steady[0].eps
    eps_max = steady[0].eps
    for r in steady:
        e = r.eps
        if e < eps_min:
            eps_min = e
        if e > eps_max:
            eps_max = e
        if WIDE_BAND[0] <= e <= WIDE_BAND[1]:
            n_wide += 1
        if NARROW_BAND[0] <= e <= NARROW_BAND[1]:
            n_narrow += 1
        if PERCEPTION_BAND[0] <= r.e_measured <= PERCEPTION_BAND[1]:
            n_percep += 1
        sq += e * e
    return BandReport(
        warmup_steps=warmup_steps,
        n_steady=n,
        eps_min=eps_min,
        eps_max=eps_max,
        frac_in_wide=n_wide / n,
        frac_in_narrow=n_narrow / n,
        frac_meas_in_perception=n_percep / n,
        rms_eps=math.sqrt(sq / n),
        valid=True,
    )


def extreme_rarity(records, warmup_steps: int) -> float:
    """Fraction of steady steps with eps inside [-11, 9] but outside [-5, 5].

    Measures how often the error visits the outer shell of the wide band;
    small values mean the extremes of the reported interval are met rarely.
    """
    if warmup_steps < 0:
        raise ValueError(f"warmup_steps must be >= 0, got {warmup_steps}")
    steady = [r for r in records if r.k >= warmup_steps]
    if not steady:
        return 0.0
    n_shell = sum(
        1
        for r in steady
        if WIDE_BAND[0] <= r.eps <= WIDE_BAND[1]
        and not (NARROW_BAND[0] <= r.eps <= NARROW_BAND[1])
    )
    return n_shell / len(steady)
