"""Command-line front end.

Three commands:

  daylux simulate   run the closed loop and write trajectory/panel/summary
                    artifacts (default when no command is named)
  daylux gradcheck  compare backprop gradients against central differences
  daylux lut        generate or inspect command-to-illuminance tables

Exit codes: 0 success, 1 validation/usage error, 2 I/O error, 3 gradient
check failed its tolerance.
"""

from __future__ import annotations

import argparse
import sys

from .config import (
    ConfigError,
    SimConfig,
    apply_settings,
    load_config_file,
)
from .loop import run_simulation
from .plant import (
    DEFAULT_LUT_E_MAX,
    DEFAULT_LUT_KNOTS,
    DEFAULT_LUT_SHAPE,
    TableFormatError,
    load_lut_csv,
    lut_eval,
    lut_inverse,
    save_lut_csv,
    synth_default_lut,
)
from .report import write_run_artifacts
from .rng import SplitMix64
from .signals import ERROR_SCALINGS
from .tinynet import (
    ActivationKind,
    backprop_gradients,
    init_network,
    numeric_gradient,
)

GRADCHECK_TOLERANCE = 1e-5
_COMMANDS = ("simulate", "gradcheck", "lut")


class UsageError(ValueError):
    """Bad flags or arguments; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit-code control in main()
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="daylux", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the closed-loop simulation")
    sim.add_argument("--config", help="key = value config file; flags take precedence")
    sim.add_argument("--steps", type=int, help="run length for generated daylight (default 2000)")
    sim.add_argument("--e-desired", type=int, help="setpoint illuminance, 0..255 (default 100)")
    sim.add_argument("--gamma-controller", type=float, help="controller learning rate (default 0.15)")
    sim.add_argument("--gamma-inverse", type=float, help="inverse-model learning rate (default 0.15)")
    sim.add_argument("--seed-controller", type=int, help="controller weight-init seed")
    sim.add_argument("--seed-inverse", type=int, help="inverse-model weight-init seed")
    sim.add_argument("--seed-daylight", type=int, help="daylight trajectory seed")
    sim.add_argument(
        "--lut",
        help="plant table: synthetic[:e_max=..,shape=..,knots=..] or csv:PATH",
    )
    sim.add_argument(
        "--daylight",
        help="disturbance: constant:L | step:L0,L1,K | ramp:L0,L1 | fast[:k=v,..] | csv:PATH",
    )
    sim.add_argument("--warmup", type=int, help="steps excluded from band metrics (default 200)")
    sim.add_argument("--error-scaling", choices=ERROR_SCALINGS, help="eps/deps normalization")
    sim.add_argument(
        "--inverse-target-lag",
        type=int,
        choices=(0, 1),
        help="pair the inverse target with U(k) (0) or U(k-1) (1)",
    )
    sim.add_argument(
        "--plant-delay",
        type=int,
        choices=(0, 1),
        help="steps between command and measured response (default 1)",
    )
    sim.add_argument("--no-bias", action="store_true", help="train both nets without bias terms")
    sim.add_argument("--out-dir", help="artifact directory (default out)")

    grad = sub.add_parser("gradcheck", help="finite-difference gradient check")
    grad.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    grad.add_argument("--trials", type=int, default=100, help="number of random nets (default 100)")

    lut = sub.add_parser("lut", help="generate or inspect plant tables")
    lut_sub = lut.add_subparsers(dest="lut_command", required=True)
    gen = lut_sub.add_parser("generate", help="write a synthetic table CSV")
    gen.add_argument("--out", default="lut.csv", help="output path (default lut.csv)")
    gen.add_argument("--e-max", type=int, default=DEFAULT_LUT_E_MAX)
    gen.add_argument("--shape", type=float, default=DEFAULT_LUT_SHAPE)
    gen.add_argument("--knots", type=int, default=DEFAULT_LUT_KNOTS)
    ins = lut_sub.add_parser("inspect", help="print knots, monotonicity, inverse lookups")
    ins.add_argument("path", nargs="?", help="table CSV; omitted = default synthetic table")
    ins.add_argument("--query-e", type=int, help="print the brute-force inverse u* for this e")

    return parser


def parse_config(ns: argparse.Namespace) -> SimConfig:
    """SimConfig from defaults, then config file, then explicit flags."""
    cfg = SimConfig()
    if ns.config:
        apply_settings(cfg, load_config_file(ns.config), origin=ns.config)
    direct = {
        "steps": ns.steps,
        "e_desired": ns.e_desired,
        "gamma_controller": ns.gamma_controller,
        "gamma_inverse": ns.gamma_inverse,
        "seed_controller": ns.seed_controller,
        "seed_inverse": ns.seed_inverse,
        "seed_daylight": ns.seed_daylight,
        "lut_source": ns.lut,
        "daylight_source": ns.daylight,
        "warmup": ns.warmup,
        "error_scaling": ns.error_scaling,
        "inverse_target_lag": ns.inverse_target_lag,
        "plant_delay": ns.plant_delay,
        "out_dir": ns.out_dir,
    }
    for key, value in direct.items():
        if value is not None:
            setattr(cfg, key, value)
    if ns.no_bias:
        cfg.use_bias = False
    cfg.validate()
    return cfg


def cmd_simulate(cfg: SimConfig) -> int:
    records, _nets = run_simulation(cfg)
    artifacts = write_run_artifacts(records, cfg.warmup, cfg.out_dir)
    print(f"wrote {artifacts['trajectory']} ({len(records)} rows)")
    for p in artifacts["panels"] + artifacts["svgs"]:
        print(f"wrote {p}")
    print(f"wrote {artifacts['summary']}")
    with open(artifacts["summary"], "r", encoding="utf-8") as fh:
        sys.stdout.write(fh.read())
    return 0


def cmd_gradcheck(seed: int, trials: int) -> int:
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    max_rel = gradcheck_max_rel_error(seed, trials)
    print(f"gradcheck: trials={trials} max_rel_err={max_rel:.3e}")
    if max_rel < GRADCHECK_TOLERANCE:
        return 0
    print(f"gradcheck FAILED: {max_rel:.3e} >= {GRADCHECK_TOLERANCE:.0e}", file=sys.stderr)
    return 3


def gradcheck_max_rel_error(seed: int, trials: int, h: float = 1e-5) -> float:
    """Worst relative disagreement between backprop and central differences.

    Trials alternate between the controller (2-3-1) and inverse-model (3-3-1)
    shapes; weights come from the usual seeded init, inputs and targets are
    uniform in [-1, 1].  The reference gradient is the finite-difference one,
    floored at 1e-8 to keep the ratio meaningful near zero.
    """
    rng = SplitMix64(seed)
    acts = (ActivationKind.TANH, ActivationKind.LINEAR)
    shapes = ((2, 3, 1), (3, 3, 1))
    worst = 0.0
    for trial in range(trials):
        widths = shapes[trial % 2]
        net = init_network(widths, acts, learning_rate=0.15, seed=rng.next_u64())
        x = [rng.uniform(-1.0, 1.0) for _ in range(widths[0])]
        t = [rng.uniform(-1.0, 1.0) for _ in range(widths[-1])]
        _, gw, gb = backprop_gradients(net, x, t)
        ngw, ngb = numeric_gradient(net, x, t, h)
        for l in range(net.n_layers()):
            for j in range(len(gw[l])):
                for i in range(len(gw[l][j])):
                    rel = abs(gw[l][j][i] - ngw[l][j][i]) / max(abs(ngw[l][j][i]), 1e-8)
                    if rel > worst:
                        worst = rel
            for j in range(len(gb[l])):
                rel = abs(gb[l][j] - ngb[l][j]) / max(abs(ngb[l][j]), 1e-8)
                if rel > worst:
                    worst = rel
    return worst


def cmd_lut(ns: argparse.Namespace) -> int:
    if ns.lut_command == "generate":
        table = synth_default_lut(ns.e_max, ns.shape, ns.knots)
        save_lut_csv(table, ns.out)
        print(f"wrote {ns.out} ({len(table.knots)} knots)")
        return 0
    table = load_lut_csv(ns.path) if ns.path else synth_default_lut()
    source = ns.path if ns.path else "synthetic defaults"
    print(f"table: {source}")
    print("  u    e")
    for u, e in table.knots:
        print(f"{u:5d} {e:4d}")
    # Construction already enforces monotonicity; state it explicitly so the
    # verdict is visible next to the numbers.
    es = table.e_values()
    monotone = all(a <= b for a, b in zip(es, es[1:]))
    print(f"monotone: {'yes' if monotone else 'no'}")
    if ns.query_e is not None:
        u_star = lut_inverse(table, ns.query_e)
        print(f"u*({ns.query_e}) = {u_star}  (lut_eval -> {lut_eval(table, u_star)})")
    return 0


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args or args[0].startswith("-") and args[0] not in ("-h", "--help"):
        args.insert(0, "simulate")
    parser = build_parser()
    try:
        ns = parser.parse_args(args)
        if ns.command == "simulate":
            return cmd_simulate(parse_config(ns))
        if ns.command == "gradcheck":
            return cmd_gradcheck(ns.seed, ns.trials)
        if ns.command == "lut":
            return cmd_lut(ns)
        raise UsageError(f"unknown command {ns.command!r}")
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return 0 if code is None else int(code)
    except (UsageError, ConfigError, TableFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
