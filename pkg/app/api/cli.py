"""
Command-line front end.

Every subcommand reads a quench (--h0 --gamma0 --h1 --gamma1) and a squeeze
(--r --phi). Defaults come from, in increasing precedence, a named preset,
a ``key = value`` config file and explicit flags.
"""

import argparse
import math
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.api.exceptions import (
    EXIT_INVALID_ARGUMENT,
    ConfigurationException,
    DqptException,
    GaplessModeException,
    InvalidArgumentException,
)
from app.api.schemas import Command, OutputFormat, RunConfig
from app.config import load_config_file, settings
from app.core.dqpt import (
    critical_momenta,
    critical_times,
    delta_scan,
    fisher_zero_family,
    fisher_zero_line,
    post_quench_energy_range,
    rate_function,
)
from app.core.model import build_grid
from app.core.observables import entropy_profile, phase_series, winding_series
from app.core.squeeze import pairing_table
from app.entities.oracle import SqueezeKernel
from app.entities.params import QuenchSpec, SqueezeSpec
from app.services import writers
from app.services.presets import PRESETS, get_preset
from app.services.validator import ValidationService
from app.utils.logger import get_logger, log_duration, setup_logger

logger = get_logger(__name__)

VALIDATE_SITES = 8
VALIDATE_T_MAX = 3.0
VALIDATE_STEPS = 301
DEFAULT_STEPS = 2000
T_MAX_MARGIN = 1.1


def float_list(text: str) -> List[float]:
    """Parse a comma-separated list of floats."""
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# ============================================================================
# Parser
# ============================================================================

def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("quench and squeeze")
    group.add_argument("--h0", type=float, default=1.5, help="Pre-quench transverse field")
    group.add_argument("--gamma0", type=float, default=1.0, help="Pre-quench anisotropy")
    group.add_argument("--h1", type=float, default=0.5, help="Post-quench transverse field")
    group.add_argument("--gamma1", type=float, default=1.0, help="Post-quench anisotropy")
    group.add_argument("--r", type=float, default=0.0, help="Squeezing strength")
    group.add_argument("--phi", type=float, default=0.0, help="Squeezing direction")

    group = common.add_argument_group("grid and output")
    group.add_argument("--sites", type=int, default=None, help="Chain length N (even)")
    group.add_argument("--tmax", type=float, default=None, help="End of the time window")
    group.add_argument("--steps", type=int, default=None, help="Number of time samples")
    group.add_argument("-o", "--output", default=None, help="Output file (stdout if omitted)")
    group.add_argument("--format", dest="fmt", choices=[f.value for f in OutputFormat],
                       default=OutputFormat.CSV.value, help="Output format")
    group.add_argument("--config", default=None, help="Run file of 'key = value' lines")
    group.add_argument("--preset", choices=sorted(PRESETS), default=None,
                       help="Named scenario providing defaults")
    group.add_argument("--log-level", default=None,
                       choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    return common


def build_parser() -> Tuple[argparse.ArgumentParser, Dict[str, argparse.ArgumentParser]]:
    """
    Build the argument parser.

    Returns:
        Tuple of the top-level parser and the subparsers keyed by command
    """
    parser = argparse.ArgumentParser(
        prog="squeezed-dqpt",
        description="Dynamical quantum phase transitions of squeezed XY-chain quenches",
    )
    parser.add_argument("--version", action="version", version=settings.APP_VERSION)
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True
    common = _common_arguments()

    def add(command: Command, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(command.value, parents=[common], help=help_text)

    sub = {}
    sub["rate"] = add(Command.RATE, "rate function lambda(t)")
    sub["rate"].add_argument("--prominence", type=float, default=settings.PEAK_PROMINENCE)
    sub["rate"].add_argument("--flip-sign", action="store_true",
                             help="report +(2/N) sum ln|G_k| (peaks become dips)")

    sub["zeros"] = add(Command.ZEROS, "Fisher-zero lines z_n(k)")
    sub["zeros"].add_argument("--n-max", type=int, default=2)
    sub["zeros"].add_argument("--k-samples", type=int, default=200)
    sub["zeros"].add_argument("--r-values", type=float_list, default=[],
                              help="one line per squeezing strength (prepends an r column)")

    sub["scan"] = add(Command.SCAN, "Delta(r, phi) control map")
    sub["scan"].add_argument("--r-steps", type=int, default=settings.SCAN_R_STEPS)
    sub["scan"].add_argument("--phi-steps", type=int, default=settings.SCAN_PHI_STEPS)
    sub["scan"].add_argument("--workers", type=int, default=settings.SCAN_WORKERS)

    sub["phase"] = add(Command.PHASE, "Loschmidt phases of one mode and the winding nu(t)")
    sub["phase"].add_argument("--k", type=float, default=None,
                              help="momentum (default: first critical momentum, else pi/2)")
    sub["phase"].add_argument("--no-winding", dest="winding", action="store_false",
                              help="leave the nu column empty")

    sub["entropy"] = add(Command.ENTROPY, "double-mode entropy S_k")

    sub["pairing"] = add(Command.PAIRING, "pairing amplitudes J_d of the pre-quench chain")
    sub["pairing"].add_argument("--d-max", type=int, default=10)

    sub["validate"] = add(Command.VALIDATE, "oracle comparison report (JSON)")
    sub["validate"].add_argument("--kernel", choices=[k.value for k in SqueezeKernel],
                                 default=settings.ED_KERNEL)
    sub["validate"].add_argument("--samples", type=int, default=settings.VALIDATION_SAMPLES)
    sub["validate"].add_argument("--seed", type=int, default=settings.VALIDATION_SEED)
    return parser, sub


# ============================================================================
# Defaults: preset < config file < flags
# ============================================================================

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _config_defaults(path: str, subparser: argparse.ArgumentParser) -> Dict[str, Any]:
    by_name: Dict[str, argparse.Action] = {}
    for action in subparser._actions:
        for option in action.option_strings:
            by_name[option.lstrip("-").replace("-", "_")] = action
        by_name.setdefault(action.dest, action)

    defaults: Dict[str, Any] = {}
    for key, value in load_config_file(path).items():
        action = by_name.get(key)
        if action is None or key in ("config", "help"):
            raise ConfigurationException(path, f"unknown key '{key}'")
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            lowered = value.lower()
            if lowered not in _TRUE | _FALSE:
                raise ConfigurationException(path, f"'{key}' expects true or false, got {value!r}")
            flag = lowered in _TRUE
            defaults[action.dest] = flag if action.const is True else not flag
        else:
            defaults[action.dest] = value
    return defaults


def parse_arguments(argv: Sequence[str]) -> argparse.Namespace:
    """
    Parse ``argv`` with preset and config-file defaults applied.

    Raises:
        SystemExit: On usage errors (argparse behaviour)
        ConfigurationException: On an unreadable or invalid config file
    """
    parser, sub = build_parser()
    first = parser.parse_args(argv)
    subparser = sub[first.command]

    file_defaults = _config_defaults(first.config, subparser) if first.config else {}
    preset_name = first.preset or file_defaults.pop("preset", None)
    defaults: Dict[str, Any] = {}
    if preset_name:
        defaults.update(get_preset(preset_name).as_defaults())
    defaults.update(file_defaults)
    dests = {action.dest for action in subparser._actions}
    defaults = {key: value for key, value in defaults.items() if key in dests}
    if not defaults:
        return first

    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _pick(value: Any, fallback: Any) -> Any:
    return fallback if value is None else value


def default_t_max(q: QuenchSpec, s: SqueezeSpec, n_max: int = 2) -> float:
    """A window covering the first three critical times (or their scale)."""
    try:
        cs = critical_times(critical_momenta(q, s), q, n_max)
    except GaplessModeException:
        cs = None
    if cs is not None and cs.intervals:
        return T_MAX_MARGIN * cs.intervals[-1].t_max
    if cs is not None and cs.times:
        return T_MAX_MARGIN * max(ct.t for ct in cs.times)
    eps_min, eps_max = post_quench_energy_range(q.post)
    return T_MAX_MARGIN * (2 * n_max + 1) * math.pi / (eps_min + eps_max)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Turn parsed arguments into a validated RunConfig.

    Raises:
        InvalidArgumentException: If a value violates the run invariants
    """
    command = Command(args.command)
    validate = command == Command.VALIDATE
    try:
        q = QuenchSpec.from_values(args.h0, args.gamma0, args.h1, args.gamma1)
        s = SqueezeSpec(r=args.r, phi=args.phi)
        t_max = args.tmax
        if t_max is None:
            t_max = VALIDATE_T_MAX if validate else default_t_max(q, s)
        values: Dict[str, Any] = {
            "command": command,
            "quench": q,
            "squeeze": s,
            "n_sites": _pick(args.sites, VALIDATE_SITES if validate else settings.DEFAULT_SITES),
            "t_max": t_max,
            "n_steps": _pick(args.steps, VALIDATE_STEPS if validate else DEFAULT_STEPS),
            "output": args.output,
            "fmt": OutputFormat(args.fmt),
        }
        for field in (
            "prominence", "flip_sign", "n_max", "k_samples", "r_values", "r_steps",
            "phi_steps", "workers", "k", "winding", "d_max", "kernel", "samples", "seed",
        ):
            if getattr(args, field, None) is not None:
                values[field] = getattr(args, field)
        return RunConfig(**values)
    except ValidationError as exc:
        errors = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'value'}: {err['msg']}"
            for err in exc.errors()
        )
        raise InvalidArgumentException(errors) from None
    except ValueError as exc:
        raise InvalidArgumentException(str(exc)) from None


# ============================================================================
# Handlers
# ============================================================================

def _rate(config: RunConfig) -> int:
    series = rate_function(
        config.quench,
        config.squeeze,
        build_grid(config.n_sites),
        config.times,
        prominence=config.prominence,
        flip_sign=config.flip_sign,
    )
    logger.info(f"Rate peaks at {[round(t, 6) for t in series.peak_times]}")
    writers.write_table(
        config.output, writers.RATE_HEADER, writers.rate_rows(series), config.fmt.value
    )
    return 0


def _zeros(config: RunConfig) -> int:
    k = config.momentum_samples
    if config.r_values:
        orders = range(config.n_max + 1)
        by_order = [
            fisher_zero_family(n, config.quench, config.r_values, config.squeeze.phi, k)
            for n in orders
        ]
        family = [(r, by_order[n][i]) for i, r in enumerate(config.r_values) for n in orders]
        header, rows = writers.ZEROS_FAMILY_HEADER, writers.zero_family_rows(family)
    else:
        lines = [
            fisher_zero_line(n, config.quench, config.squeeze, k)
            for n in range(config.n_max + 1)
        ]
        header, rows = writers.ZEROS_HEADER, writers.zero_rows(lines)
    writers.write_table(config.output, header, rows, config.fmt.value)
    return 0


def _scan(config: RunConfig) -> int:
    delta_map = delta_scan(config.quench, config.r_grid, config.phi_grid, workers=config.workers)
    logger.info(f"Scan: {int(delta_map.zero_mask().sum())} cells with Delta below 1e-6")
    writers.write_table(
        config.output, writers.SCAN_HEADER, writers.scan_rows(delta_map), config.fmt.value
    )
    return 0


def _phase(config: RunConfig) -> int:
    k = config.k
    if k is None:
        cs = critical_momenta(config.quench, config.squeeze)
        k = cs.momenta[0] if cs.momenta else math.pi / 2.0
        logger.info(f"Tracking phases of mode k={k:.12g}")
    phases = phase_series(k, config.quench, config.squeeze, config.times)
    winding = None
    if config.winding:
        winding = winding_series(
            config.quench, config.squeeze, config.times, build_grid(config.n_sites)
        )
    writers.write_table(
        config.output, writers.PHASE_HEADER, writers.phase_rows(phases, winding), config.fmt.value
    )
    return 0


def _entropy(config: RunConfig) -> int:
    profile = entropy_profile(config.quench, config.squeeze, build_grid(config.n_sites))
    writers.write_table(
        config.output, writers.ENTROPY_HEADER, writers.entropy_rows(profile), config.fmt.value
    )
    return 0


def _pairing(config: RunConfig) -> int:
    table = pairing_table(config.d_max, config.quench.pre)
    writers.write_table(
        config.output, writers.PAIRING_HEADER, writers.pairing_rows(table), config.fmt.value
    )
    return 0


def _validate(config: RunConfig) -> int:
    service = ValidationService(
        config.quench,
        config.squeeze,
        n_sites=config.n_sites,
        t_max=config.t_max,
        n_steps=config.n_steps,
        kernel=config.kernel,
        samples=config.samples,
        seed=config.seed,
    )
    report = service.run()
    writers.write_json(config.output, report.to_dict())
    return 0 if report.overall_pass else 2


HANDLERS: Dict[Command, Callable[[RunConfig], int]] = {
    Command.RATE: _rate,
    Command.ZEROS: _zeros,
    Command.SCAN: _scan,
    Command.PHASE: _phase,
    Command.ENTROPY: _entropy,
    Command.PAIRING: _pairing,
    Command.VALIDATE: _validate,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Execute one command line.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 on success, 1 on invalid arguments, 2 on a numerical guard
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_arguments(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else EXIT_INVALID_ARGUMENT
    except DqptException as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code

    if args.log_level:
        setup_logger(
            log_level=args.log_level,
            log_file=settings.LOG_FILE,
            rotation=settings.LOG_ROTATION,
            retention=settings.LOG_RETENTION,
        )

    try:
        config = build_run_config(args)
        logger.info(
            f"Running {config.command.value} (N={config.n_sites}, t_max={config.t_max:.6g})"
        )
        with log_duration(config.command.value):
            return HANDLERS[config.command](config)
    except DqptException as exc:
        logger.error(f"{exc.code}: {exc.message}")
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code


__all__ = [
    "build_parser",
    "parse_arguments",
    "build_run_config",
    "default_t_max",
    "float_list",
    "run",
]
