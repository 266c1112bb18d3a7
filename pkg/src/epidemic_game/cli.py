"""Command-line entry point: ``epidemic-game {simulate,nash,learn,si}``.

Values come from three layers, highest first: flags, a JSON ``--config`` file
(the manifest.json of an earlier run is one), then model defaults. Exit codes
are 0 on success, 1 on a runtime or I/O failure and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from . import __version__, config
from .errors import EpidemicGameError, UsageError
from .pipeline import run
from .schemas.run_config import COMMON_KEYS, OPTIONS_BY_COMMAND, RunConfig
from .schemas.scenario import InterventionCase

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS, allow_abbrev=False)
    common.add_argument("--seed", type=int, help="Master seed of every random stream")
    common.add_argument("--out", help="Output directory (default: $EPIDEMIC_GAME_OUT_DIR or ./output)")
    common.add_argument("--config", type=Path, help="JSON config file; flags override its values")
    common.add_argument("--jobs", type=int, help="Parallel workers for Monte Carlo ensembles")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings and errors only")
    return common


def _add_cost_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, help="Weight of the activity preference cost")
    parser.add_argument("--shaped", action=argparse.BooleanOptionalAction, help="Add the shaping term to infected costs")
    parser.add_argument("--shaping", choices=["linear", "infection_risk"], help="Shaping term q(u, m)")
    parser.add_argument("--activity-cost", choices=["exponential", "parabolic"], help="Preference cost p(u)")
    parser.add_argument("--parabolic-center", type=float, help="Preferred level of the parabolic cost")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="epidemic-game",
        description="Microscopic epidemic model: simulation, stage-game equilibria, learning and SI baseline.",
        argument_default=argparse.SUPPRESS,
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def subcommand(name: str, help_text: str) -> argparse.ArgumentParser:
        return subparsers.add_parser(
            name, help=help_text, parents=[common], argument_default=argparse.SUPPRESS, allow_abbrev=False
        )

    simulate = subcommand("simulate", "Monte Carlo ensemble of one intervention scenario")
    simulate.add_argument("--case", choices=[c.value for c in InterventionCase], help="Intervention scenario")
    simulate.add_argument("--M", type=int, help="Population size")
    simulate.add_argument("--m0", type=int, help="Initially infected agents")
    simulate.add_argument("--u", type=float, help="Normal activity level")
    simulate.add_argument("--u-star", type=float, help="Reduced activity level")
    simulate.add_argument("--T", type=int, help="Detection delay in days (delayed case only)")
    simulate.add_argument("--horizon", type=int, help="Simulated days")
    simulate.add_argument("--runs", type=int, help="Independent runs")
    simulate.add_argument("--keep-runs", action="store_true", help="Also write every run to runs.csv")
    simulate.add_argument("--raster-run", type=int, help="Write per-agent infection days of this run")

    nash = subcommand("nash", "Stage-game Nash equilibrium, system optimum and welfare loss")
    nash.add_argument("--m", type=int, help="Infected agents")
    nash.add_argument("--M", type=int, help="Population size")
    _add_cost_flags(nash)
    nash.add_argument("--sweep", action="store_true", help="Report every m = 0..M")
    nash.add_argument(
        "--curve-alpha",
        dest="curve_alphas",
        type=float,
        nargs="+",
        help="Also sample the healthy objective at m for these weights",
    )

    learn = subcommand("learn", "Shared-table Q-learning over the epidemic environment")
    learn.add_argument("--preset", choices=["case1", "case2", "case3"], help="Named learning case")
    learn.add_argument("--M", type=int, help="Population size")
    learn.add_argument("--m0", type=int, help="Initially infected agents")
    learn.add_argument("--action-levels", type=float, nargs="+", help="Discrete activity levels")
    learn.add_argument("--gamma", type=float, help="Discount factor")
    learn.add_argument("--eta", type=float, help="Learning rate")
    learn.add_argument("--episodes", type=int, help="Training episodes")
    learn.add_argument("--horizon", type=int, help="Days per episode")
    learn.add_argument("--q-init", type=float, help="Initial Q value")
    learn.add_argument("--eval-every", type=int, help="Greedy evaluation period in episodes (0 disables)")
    _add_cost_flags(learn)

    si = subcommand("si", "Deterministic SI baseline integrated with RK4")
    si.add_argument("--beta", type=float, nargs="+", help="Infection coefficient(s)")
    si.add_argument("--s0", type=float, help="Initial infected fraction")
    si.add_argument("--days", type=float, help="Integration horizon in days")
    si.add_argument("--dt", type=float, help="RK4 step")
    si.add_argument("--dense", action="store_true", help="Write every RK4 step instead of integer days")

    return parser


def _read_config_file(path: Path) -> dict:
    text = path.read_text(encoding="utf-8")
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"config file {path} is not valid JSON: {e}") from e
    if not isinstance(values, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    return values


def _check_conflicts(command: str, flags: dict, merged: dict) -> None:
    if command == "simulate" and "T" in flags:
        case = merged.get("case", InterventionCase.NO_INTERVENTION.value)
        if case != InterventionCase.DELAYED_ISOLATION.value:
            raise UsageError(f"--T only applies to the delayed case, got case '{case}'")


def parse_config(argv: Sequence[str] | None = None) -> tuple[RunConfig, dict]:
    """Parse flags and any config file into a validated run.

    Returns:
        The run config and the logging flags (``verbose``, ``quiet``).

    Raises:
        UsageError: For unknown keys, invalid values or conflicting options.
        OSError: If the config file cannot be read.
    """
    namespace = vars(build_parser().parse_args(argv))
    command = namespace.pop("command")
    config_path = namespace.pop("config", None)
    log_flags = {"verbose": namespace.pop("verbose", False), "quiet": namespace.pop("quiet", False)}

    file_values = _read_config_file(config_path) if config_path is not None else {}
    file_command = file_values.pop("command", command)
    if file_command != command:
        raise UsageError(f"config file is for '{file_command}', not '{command}'")
    file_version = file_values.pop("package_version", None)
    if file_version is not None and file_version != __version__:
        logger.warning(f"config was written by version {file_version}, running {__version__}")

    merged = {**file_values, **namespace}
    _check_conflicts(command, namespace, merged)

    common = {key: merged.pop(key) for key in COMMON_KEYS if key in merged}
    try:
        options = OPTIONS_BY_COMMAND[command].model_validate(merged)
        run_config = RunConfig(command=command, options=options, **common)
        run_config.options.resolved(run_config.seed)
    except (ValidationError, EpidemicGameError, ValueError) as e:
        raise UsageError(f"invalid '{command}' configuration:\n{e}") from e
    return run_config, log_flags


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else config.LOG_LEVEL
    logging.basicConfig(level=level, format=LOG_FORMAT)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        run_config, log_flags = parse_config(argv)
    except UsageError as e:
        print(f"epidemic-game: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"epidemic-game: cannot read config: {e}", file=sys.stderr)
        return EXIT_FAILURE

    configure_logging(**log_flags)

    result = run(run_config)
    if result["status"] != "success":
        return EXIT_FAILURE
    for path in result["files"]:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
