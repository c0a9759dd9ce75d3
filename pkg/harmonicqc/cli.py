"""
Command-line interface for harmonicqc.

This module provides the check, extend-verify, render and convolve
subcommands and maps their outcome onto the exit codes 0 (success or member),
1 (condition not met), 2 (input error) and 3 (internal bound violation).
"""

import argparse
import sys
import logging
from typing import Dict, Any, Callable, List, Optional
from tqdm import tqdm

from . import config
from . import core
from .documents import DocumentError, MapDocument, load_document, load_preset
from .harmonic_core import HarmonicMapError
from .render import FigureSpec, RenderError
from .verify import REGION_BOTH, VerificationError, default_grid

# Get logger from config module
logger = logging.getLogger('harmonicqc')

def _non_negative_int(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return number

def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number

def _radii_list(value: str) -> List[float]:
    try:
        return [float(r) for r in value.split(",") if r.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated radii, got {value}")

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    source = common.add_mutually_exclusive_group()
    source.add_argument(
        "-i", "--input",
        help="Path to a JSON map document"
    )
    source.add_argument(
        "--preset",
        help=f"Bundled map document ({', '.join(config.PRESET_FILES)})"
    )

    common.add_argument(
        "--input2",
        help="Second map document (convolve)"
    )

    common.add_argument(
        "--profiles",
        help="Comma separated profiles: starlike, convex, strongly-starlike, sigma (default: configured)"
    )

    common.add_argument(
        "--order",
        type=float,
        help="Strongly-starlike order in (0, 1) (default: the document's 'order')"
    )

    common.add_argument(
        "--grid-radii",
        type=_positive_int,
        help="Radii per side of the unit circle on the verification grid"
    )

    common.add_argument(
        "--grid-angles",
        type=_positive_int,
        help="Angles per circle on the verification grid"
    )

    common.add_argument(
        "--r-max",
        type=float,
        help="Largest sampled radius outside the unit disk"
    )

    common.add_argument(
        "--pairs",
        type=_positive_int,
        help="Random point pairs for the bi-Lipschitz sample"
    )

    common.add_argument(
        "--seed",
        type=_non_negative_int,
        help="Seed of the random point pairs"
    )

    common.add_argument(
        "--figure-radii",
        type=_radii_list,
        help="Comma separated circle radii for render"
    )

    common.add_argument(
        "--figure-rays",
        type=_non_negative_int,
        help="Number of rays for render"
    )

    common.add_argument(
        "--figure-points",
        type=_positive_int,
        help="Samples per circle or ray for render"
    )

    common.add_argument(
        "-o", "--out",
        help="Output path (report JSON, or the SVG figure for render; default: report to stdout)"
    )

    common.add_argument(
        "--no-timestamp",
        action="store_true",
        help="Omit the creation date from SVG figures"
    )

    common.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Verbose mode (show debug messages)"
    )

    return common

def setup_cli_parser() -> argparse.ArgumentParser:
    """
    Set up the command line argument parser.

    Returns:
        argparse.ArgumentParser: Configured parser for command line arguments
    """
    parser = argparse.ArgumentParser(
        prog="harmonicqc",
        description="harmonicqc - Coefficient checks, quasiconformal extensions and their numerical verification",
        epilog="Example: harmonicqc extend-verify --preset sigma-example -o report.json"
    )
    common = _common_options()
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser("check", parents=[common], help="Check coefficient class membership")
    subparsers.add_parser("extend-verify", parents=[common], help="Extend a map to the plane and verify it on a grid")
    subparsers.add_parser("render", parents=[common], help="Draw circle and ray images of the extension as SVG")
    subparsers.add_parser("convolve", parents=[common], help="Convolve two exterior maps and check the closure bound")

    return parser

def create_progress_callback() -> Callable[[float, str], None]:
    """
    Create a progress callback function that displays progress with tqdm.

    Returns:
        Callable[[float, str], None]: Progress callback function
    """
    progress_bar = tqdm(total=100, desc="Processing", unit="%")

    def callback(progress_value: float, status: str) -> None:
        """
        Display progress in the command line.

        Args:
            progress_value (float): Progress value between 0.0 and 1.0
            status (str): Current status message
        """
        nonlocal progress_bar

        current_progress = int(progress_value * 100)
        progress_diff = current_progress - progress_bar.n

        if progress_diff > 0:
            progress_bar.update(progress_diff)

        progress_bar.set_description(status)

        if progress_value >= 1.0:
            progress_bar.close()

    return callback

def _load(path: Optional[str], preset: Optional[str], flag: str) -> MapDocument:
    if path:
        return load_document(path)
    if preset:
        return load_preset(preset)
    raise core.PipelineError(f"a map document is required ({flag})")

def build_run_config(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Merge command line arguments over the environment configuration.

    Returns:
        Dict[str, Any]: Effective settings for this run
    """
    env_config = config.get_config()

    def pick(value: Any, key: str) -> Any:
        return value if value is not None else env_config.get(key)

    return {
        "profiles": config.parse_profile_list(pick(args.profiles, "profiles")),
        # profiles named on the command line must all be evaluated
        "strict_profiles": args.profiles is not None,
        "grid_radii": pick(args.grid_radii, "grid_radii"),
        "grid_angles": pick(args.grid_angles, "grid_angles"),
        "r_min": env_config.get("r_min"),
        "r_max": pick(args.r_max, "r_max"),
        "pairs": pick(args.pairs, "pairs"),
        "seed": pick(args.seed, "seed"),
        "figure_radii": pick(args.figure_radii, "figure_radii"),
        "figure_rays": pick(args.figure_rays, "figure_rays"),
        "figure_points": pick(args.figure_points, "figure_points"),
    }

def _dispatch(args: argparse.Namespace, run_config: Dict[str, Any]) -> int:
    if args.command == "convolve":
        first = _load(args.input, args.preset, "--input or --preset")
        if not args.input2:
            raise core.PipelineError("convolve needs a second document (--input2)")
        second = load_document(args.input2)
        report, exit_code = core.run_convolve(first, second)

    elif args.command == "render":
        document = _load(args.input, args.preset, "--input or --preset")
        spec = FigureSpec(
            radii=tuple(run_config["figure_radii"]),
            rays=run_config["figure_rays"],
            points=run_config["figure_points"],
            title=document.label,
            timestamp=not args.no_timestamp,
        )
        report, exit_code = core.run_render(document, args.out or "extension.svg", spec)
        logger.debug(f"Figure summary: {report['figure']}")
        return exit_code

    elif args.command == "extend-verify":
        document = _load(args.input, args.preset, "--input or --preset")
        try:
            grid = default_grid(
                REGION_BOTH,
                run_config["grid_radii"],
                run_config["grid_angles"],
                run_config["r_min"],
                run_config["r_max"],
            )
        except VerificationError as e:
            raise core.PipelineError(f"invalid grid: {e}") from e
        logger.info(f"Grid: {grid.size} points, {run_config['pairs']} pairs, seed {run_config['seed']}")
        report, exit_code = core.run_extend_verify(
            document,
            grid,
            run_config["pairs"],
            run_config["seed"],
            run_config["profiles"],
            args.order,
            create_progress_callback(),
            run_config["strict_profiles"],
        )

    else:
        document = _load(args.input, args.preset, "--input or --preset")
        report, exit_code = core.run_check(document, run_config["profiles"], args.order, run_config["strict_profiles"])

    if args.out:
        core.write_report(report, args.out)
    else:
        sys.stdout.write(core.dumps_report(report))
    return exit_code

def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Main function for the command line interface.

    This function parses arguments, merges them with the environment
    configuration and runs the requested pipeline.

    Args:
        argv: Command line arguments (default: sys.argv[1:])

    Returns:
        int: Exit code
    """
    parser = setup_cli_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors and 0 for --help
        return int(e.code or 0)

    # Configure logging based on verbosity
    if args.verbose:
        logger.setLevel(logging.DEBUG)

    if args.order is not None and not 0.0 < args.order < 1.0:
        logger.error(f"--order must lie in (0, 1), got {args.order}")
        return core.EXIT_INPUT_ERROR

    run_config = build_run_config(args)
    logger.info(f"Running '{args.command}'")
    logger.debug(f"Run configuration: {run_config}")

    try:
        exit_code = _dispatch(args, run_config)
    except DocumentError as e:
        logger.error(f"Invalid map document: {e}")
        exit_code = core.EXIT_INPUT_ERROR
    except RenderError as e:
        logger.error(f"Error writing figure: {e}")
        exit_code = core.EXIT_INPUT_ERROR
    except core.PipelineError as e:
        logger.error(f"Error: {e}")
        exit_code = e.exit_code
    except (HarmonicMapError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        exit_code = core.EXIT_INPUT_ERROR

    logger.info(f"Exiting with code {exit_code}")
    return exit_code
