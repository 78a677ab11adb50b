import argparse
import logging
import sys

from commands import (
    HarnessError,
    cmd_diagram,
    cmd_intervals,
    cmd_report,
    cmd_simulate,
    cmd_sweep,
    resolve_config,
)
from config import shared_state
from config.presets import PRESETS
from dynamics_service import DynamicsError
from mathieu_service import MathieuError
from resonance_service import ResonanceError
from transfer_service import DetectionError

logger = logging.getLogger(__name__)

COMMANDS = ("diagram", "intervals", "simulate", "sweep", "report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modal-capture",
        description="Residual-mode energy capture: Mathieu stability maps, activating intervals and nonlinear sweeps",
    )
    parser.add_argument("command", choices=COMMANDS, help="Subcommand to run")
    parser.add_argument("--config", default=None, help="Path to an INI experiment file")
    parser.add_argument(
        "--preset",
        default=None,
        help=f"Bundled preset ({', '.join(sorted(PRESETS))}), or a section name when --config is given",
    )
    parser.add_argument("--x0", type=float, default=None, help="Dominating-mode amplitude for simulate")
    parser.add_argument("--out", default=None, help="Output directory")
    parser.add_argument("--threshold", type=float, default=None, help="Growth factor marking capture (default: 10)")
    parser.add_argument(
        "--secondary-lag",
        dest="secondary_lag",
        type=float,
        default=None,
        help="Delay after which a later threshold crossing counts as secondary capture (default: 200)",
    )
    parser.add_argument("--t-end", dest="t_end", type=float, default=None, help="Integration horizon (default: 400)")
    parser.add_argument("--q-max", dest="q_max", type=float, default=None, help="Diagram q range")
    parser.add_argument("--a-max", dest="a_max", type=float, default=None, help="Diagram a range")
    parser.add_argument("--resolution", type=int, default=None, help="Diagram samples per axis")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for sweeps (1 = sequential)")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    return parser


def run(args: argparse.Namespace):
    if args.workers is not None:
        if args.workers < 1:
            raise HarnessError(f"--workers must be at least 1, got {args.workers}")
        shared_state.MAX_WORKERS = args.workers

    config = resolve_config(
        args.config,
        args.preset,
        overrides={
            "x0": args.x0,
            "threshold": args.threshold,
            "secondary_lag": args.secondary_lag,
            "t_end": args.t_end,
            "q_max": args.q_max,
            "a_max": args.a_max,
            "resolution": args.resolution,
            "output_dir": args.out,
        },
    )
    logger.info(f"实验 {config.name}: {args.command}")

    if args.command == "diagram":
        return cmd_diagram(config)
    if args.command == "intervals":
        return cmd_intervals(config)
    if args.command == "simulate":
        return cmd_simulate(config)
    if args.command == "sweep":
        return cmd_sweep(config)
    return cmd_report(config)


def main(argv=None) -> int:
    """命令行入口点"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        result = run(args)
    except (HarnessError, MathieuError, ResonanceError, DynamicsError, DetectionError, OSError) as e:
        print(f"modal-capture: error: {e}", file=sys.stderr)
        return 1
    finally:
        shared_state.shutdown_executor()

    for path in result.files:
        print(path)
    for key, value in result.summary.items():
        print(f"{key}: {value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
