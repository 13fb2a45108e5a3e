#!/usr/bin/env python3
"""
Regenerate the data behind every named preset.

Each preset is run through the command-line front end and written as CSV
into one output directory.

Usage:
    python scripts/reproduce_figures.py --output-dir figures
    python scripts/reproduce_figures.py --only fig2 fig4 --sites 4000
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Dict, List

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.api.cli import run
from app.config import settings
from app.services.presets import PRESETS
from app.utils.logger import get_logger, setup_logger

logger = get_logger(__name__)

COMMANDS: Dict[str, List[str]] = {
    "fig1a": ["zeros", "--n-max", "2"],
    "fig1b": ["zeros", "--n-max", "2"],
    "fig1c": ["zeros", "--n-max", "2"],
    "fig1d": ["zeros", "--n-max", "2"],
    "fig2": ["rate"],
    "fig3a": ["scan"],
    "fig3b": ["scan"],
    "fig4": ["phase"],
}


def build_argv(name: str, args: argparse.Namespace, target: Path) -> List[str]:
    """Command line for one preset."""
    command = COMMANDS[name]
    argv = command + ["--preset", name, "-o", str(target)]
    if command[0] == "scan":
        argv += [
            "--r-steps", str(args.grid),
            "--phi-steps", str(args.grid),
            "--workers", str(args.workers),
        ]
    elif command[0] != "zeros":
        argv += ["--sites", str(args.sites), "--steps", str(args.steps)]
    return argv


def main() -> int:
    """Main entry point for figure reproduction."""
    parser = argparse.ArgumentParser(description="Reproduce preset data sets")
    parser.add_argument("--output-dir", default="figures", help="Directory for the CSV files")
    parser.add_argument("--only", nargs="+", choices=sorted(PRESETS), help="Subset of presets")
    parser.add_argument("--sites", type=int, default=settings.DEFAULT_SITES, help="Chain length")
    parser.add_argument("--steps", type=int, default=2000, help="Number of time samples")
    parser.add_argument("--grid", type=int, default=settings.SCAN_R_STEPS,
                        help="Points per axis of the (r, phi) scans")
    parser.add_argument("--workers", type=int, default=settings.SCAN_WORKERS,
                        help="Worker processes for the scans")
    args = parser.parse_args()

    setup_logger(log_level="INFO", log_file=settings.LOG_FILE)
    output_dir = Path(args.output_dir)
    names = args.only or sorted(PRESETS)

    failures = []
    for name in names:
        target = output_dir / f"{name}.csv"
        argv = build_argv(name, args, target)
        logger.info(f"{name}: {PRESETS[name].description}")
        start = time.time()
        code = run(argv)
        if code != 0:
            logger.error(f"{name} exited with code {code}")
            failures.append(name)
            continue
        logger.info(f"{name} written to {target} in {time.time() - start:.1f}s")

    if failures:
        logger.error(f"Failed presets: {', '.join(failures)}")
        return 1
    logger.info(f"Reproduced {len(names)} preset(s) into {output_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
