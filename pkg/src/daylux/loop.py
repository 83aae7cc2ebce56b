"""Closed-loop wiring: neural controller plus online inverse-model identification.

Two small networks run side by side.  The controller (2-3-1) maps the scaled
control error and its first difference to the lamp command U.  The inverse
model (3-3-1) learns, online, the map from three consecutive measured
illuminances back to the command that the controller issued alongside them;
querying it with the *desired* illuminance triple then yields U_IM, the
command it believes would realise the setpoint, and U_IM is the controller's
training target.  Neither network ever sees the plant's equations.

Step ordering (one-step actuation delay, the default):

  (a) the plant responds to the previous command, daylight adds in,
      the sensor saturates at 255;
  (b) eps = E_desired - E_measured, deps = eps - eps_prev (exact integers);
  (c) the controller issues U from (eps, deps);
  (d) the inverse model trains on the measured triple -> command pairing;
  (e) the freshly updated inverse model produces U_IM from the desired triple;
  (f) the controller trains on (eps_prev, deps_prev) -> U_IM, skipped at k=0
      where no previous error exists;
  (g) histories shift, k advances.

(d) before (e) is deliberate: the controller's target comes from the most
accurate inverse model available within the step.

With plant_delay=0 the controller acts first on the previous step's error and
the plant responds to U(k) within the same step; the rest is unchanged.

The inverse model's training pairs U(k) with E_measured(k..k-2) even though,
under the one-step delay, the measurement at k was produced by U(k-1).  That
literal pairing is the default; inverse_target_lag=1 selects the causal
pairing with U(k-1) instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config as config_mod
from .plant import DaylightTrajectory, ProcessLut, lut_eval
from .signals import (
    check_d8bv,
    clamp8_sum,
    scale_delta_error,
    scale_error,
    scale_to_unit,
    unit_to_d8bv,
)
from .tinynet import ActivationKind, MlpNetwork, forward, init_network, train_step

GAMMA_DEFAULT = 0.15
CONTROLLER_INPUTS = 2
INVERSE_INPUTS = 3
HIDDEN_DEFAULT = 3


@dataclass
class ControllerNet:
    """2-3-1 net issuing the lamp command from (eps, deps)."""

    net: MlpNetwork


@dataclass
class InverseModelNet:
    """3-3-1 net identified online from measured illuminance triples."""

    net: MlpNetwork


@dataclass
class LoopOptions:
    error_scaling: str = "independent"
    inverse_target_lag: int = 0
    plant_delay: int = 1

    def __post_init__(self) -> None:
        if self.inverse_target_lag not in (0, 1):
            raise ValueError(f"inverse_target_lag must be 0 or 1, got {self.inverse_target_lag}")
        if self.plant_delay not in (0, 1):
            raise ValueError(f"plant_delay must be 0 or 1, got {self.plant_delay}")


@dataclass
class LoopState:
    """Every lagged signal the training rules need.

    Histories are newest-first and are filled with the first observed values
    during step 0 (no fictitious zero transient); from then on they always
    hold exactly 3 entries.
    """

    k: int = 0
    e_measured_hist: list[int] = field(default_factory=list)
    e_desired_hist: list[int] = field(default_factory=list)
    eps_prev: int = 0
    deps_prev: int = 0
    u_prev: int = 0


@dataclass(frozen=True)
class StepRecord:
    k: int
    e_desired: int
    e_daylight: int
    e_electric: int
    e_measured: int
    eps: int
    deps: int
    u: int
    u_im: int
    loss_inverse: float
    loss_controller: float


def make_controller_net(
    gamma: float = GAMMA_DEFAULT,
    seed: int = 0,
    hidden: int = HIDDEN_DEFAULT,
    use_bias: bool = True,
) -> ControllerNet:
    net = init_network(
        (CONTROLLER_INPUTS, hidden, 1),
        (ActivationKind.TANH, ActivationKind.LINEAR),
        learning_rate=gamma,
        seed=seed,
        use_bias=use_bias,
    )
    return ControllerNet(net)


def make_inverse_net(
    gamma: float = GAMMA_DEFAULT,
    seed: int = 0,
    hidden: int = HIDDEN_DEFAULT,
    use_bias: bool = True,
) -> InverseModelNet:
    net = init_network(
        (INVERSE_INPUTS, hidden, 1),
        (ActivationKind.TANH, ActivationKind.LINEAR),
        learning_rate=gamma,
        seed=seed,
        use_bias=use_bias,
    )
    return InverseModelNet(net)


def controller_action(
    ctl: ControllerNet, eps: int, deps: int, error_scaling: str = "independent"
) -> int:
    """Command U for the current error pair; always a valid 8-bit value."""
    x = [scale_error(eps, error_scaling), scale_delta_error(deps, error_scaling)]
    outputs, _ = forward(ctl.net, x)
    return unit_to_d8bv(outputs[0])


def inverse_action(inv: InverseModelNet, e2: int, e1: int, e0: int) -> int:
    """Command U_IM for an illuminance triple (newest first).

    The raw output is limited to [-1, 1] before conversion, the same rule the
    controller output follows.
    """
    x = [scale_to_unit(check_d8bv(e, "e")) for e in (e2, e1, e0)]
    outputs, _ = forward(inv.net, x)
    return unit_to_d8bv(outputs[0])


def train_inverse(inv: InverseModelNet, e_triple, u_target: int) -> float:
    """One online update toward triple -> command; returns pre-update loss."""
    e2, e1, e0 = e_triple
    x = [scale_to_unit(check_d8bv(e, "e")) for e in (e2, e1, e0)]
    return train_step(inv.net, x, [scale_to_unit(check_d8bv(u_target, "u_target"))])


def train_controller(
    ctl: ControllerNet,
    eps_prev: int,
    deps_prev: int,
    u_im: int,
    error_scaling: str = "independent",
) -> float:
    """One online update toward (eps, deps) -> U_IM; returns pre-update loss."""
    x = [scale_error(eps_prev, error_scaling), scale_delta_error(deps_prev, error_scaling)]
    return train_step(ctl.net, x, [scale_to_unit(check_d8bv(u_im, "u_im"))])


def loop_step(
    state: LoopState,
    ctl: ControllerNet,
    inv: InverseModelNet,
    lut: ProcessLut,
    e_desired_k: int,
    e_daylight_k: int,
    options: LoopOptions | None = None,
):
    """Advance the closed loop one step; returns (state, StepRecord).

    The state object is updated in place and returned as the new state.
    """
    opts = options if options is not None else LoopOptions()
    check_d8bv(e_desired_k, "e_desired_k")
    check_d8bv(e_daylight_k, "e_daylight_k")

    if opts.plant_delay == 1:
        e_electric = lut_eval(lut, state.u_prev)
        e_measured = clamp8_sum(e_electric, e_daylight_k)
        eps = e_desired_k - e_measured
        deps = eps - state.eps_prev
        u = controller_action(ctl, eps, deps, opts.error_scaling)
    else:
        # Zero-delay reading: the controller acts on the freshest error it
        # has (last step's) and the plant answers within the same step.
        u = controller_action(ctl, state.eps_prev, state.deps_prev, opts.error_scaling)
        e_electric = lut_eval(lut, u)
        e_measured = clamp8_sum(e_electric, e_daylight_k)
        eps = e_desired_k - e_measured
        deps = eps - state.eps_prev

    _push_hist(state.e_measured_hist, e_measured)
    _push_hist(state.e_desired_hist, e_desired_k)

    u_target = u if opts.inverse_target_lag == 0 else state.u_prev
    loss_inverse = train_inverse(inv, tuple(state.e_measured_hist), u_target)

    u_im = inverse_action(inv, *state.e_desired_hist)

    if state.k > 0:
        loss_controller = train_controller(
            ctl, state.eps_prev, state.deps_prev, u_im, opts.error_scaling
        )
    else:
        loss_controller = 0.0

    record = StepRecord(
        k=state.k,
        e_desired=e_desired_k,
        e_daylight=e_daylight_k,
        e_electric=e_electric,
        e_measured=e_measured,
        eps=eps,
        deps=deps,
        u=u,
        u_im=u_im,
        loss_inverse=loss_inverse,
        loss_controller=loss_controller,
    )
    state.eps_prev = eps
    state.deps_prev = deps
    state.u_prev = u
    state.k += 1
    return state, record


def run_loop(
    lut: ProcessLut,
    daylight: DaylightTrajectory,
    ctl: ControllerNet,
    inv: InverseModelNet,
    e_desired: int,
    options: LoopOptions | None = None,
) -> list[StepRecord]:
    """Drive loop_step over a whole daylight trajectory."""
    state = LoopState()
    records = []
    for sample in daylight.samples:
        state, record = loop_step(state, ctl, inv, lut, e_desired, sample, options)
        records.append(record)
    return records


def run_simulation(cfg):
    """Build everything from a SimConfig and run it.

    Returns (records, (controller, inverse_model)) with the nets in their
    final trained state.  The record stream is empty when the daylight
    trajectory is (a CSV file with no rows, for instance).
    """
    cfg.validate()
    lut = config_mod.build_lut(cfg)
    daylight = config_mod.build_daylight(cfg)
    ctl = make_controller_net(cfg.gamma_controller, cfg.seed_controller, use_bias=cfg.use_bias)
    inv = make_inverse_net(cfg.gamma_inverse, cfg.seed_inverse, use_bias=cfg.use_bias)
    options = LoopOptions(
        error_scaling=cfg.error_scaling,
        inverse_target_lag=cfg.inverse_target_lag,
        plant_delay=cfg.plant_delay,
    )
    records = run_loop(lut, daylight, ctl, inv, cfg.e_desired, options)
    return records, (ctl, inv)


def _push_hist(hist: list[int], value: int) -> None:
    if not hist:
        hist.extend((value, value, value))
    else:
        hist.insert(0, value)
        del hist[3:]
