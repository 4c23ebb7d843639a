"""
FluteType - parabolicity of symmetric infinite hyperbolic surfaces

Classifies flutes, basic end surfaces and trees of ends from their
Fenchel-Nielsen data, develops the nested geodesic chain, and synthesizes
length sequences certified parabolic.

Usage:
    python -m src.main analyze --generator plog:2 --pattern none --truncate 10000
    python -m src.main analyze --input surface.yaml --format structured
    python -m src.main develop --generator pairs-of:power:1:1 --pattern adjacent-powers:4 --truncate 500 --svg-out chain.svg
    python -m src.main synthesize --generator power:1:1 --pattern all --truncate 100 --mode lower
    python -m src.main endtree --input tree.yaml

Exit codes: 0 success, 2 input error, 3 precision exhausted, 4 hypothesis refused.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from src.context_.context import log_level, precision_bits
from src.context_.settings import LOG_FORMAT
from src.data_schema.run_config import RunConfig
from src.data_schema.surface import BasicEndDescriptor, EndTree, FluteDescriptor
from src.data_schema.verdict import DivergencePolicy
from src.FluteType.data_pipeline.generators import parse_inline_generator, parse_inline_pattern
from src.FluteType.data_pipeline.surface_loader import parse_surface, validate_flute
from src.FluteType.exceptions import DomainError, HypothesisRefusal, PrecisionExhaustedError
from src.FluteType.reports.builders import (
    RunReport,
    analyze_report,
    develop_report,
    endtree_report,
    synthesize_report,
)
from src.tools.general_tools import timestamped_results_path, working_precision

logger = logging.getLogger("src.main")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_REFUSAL = 4


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("surface")
    source.add_argument("--input", help="Surface document (YAML or JSON)")
    source.add_argument("--generator", help="Inline length generator, e.g. plog:2.5, pairs-of:power:1:1, list:lengths.txt")
    source.add_argument("--pattern", default="none",
                        help="Inline half-twist pattern: none, all, list:i,j, factorial, powers:q, adjacent-powers:q")
    source.add_argument("--declared-finite", action="store_true",
                        help="Do not declare the inline half-twist pattern infinite")
    common.add_argument("--precision-bits", type=int, default=precision_bits, help="Mantissa bits (default: %(default)s)")
    common.add_argument("--truncate", type=int, help="Truncation N (required with --generator)")
    policy = common.add_argument_group("divergence policy")
    policy.add_argument("--policy-window", type=int, default=DivergencePolicy().window)
    policy.add_argument("--policy-delta", type=float, default=DivergencePolicy().delta)
    policy.add_argument("--policy-margin", type=float, default=DivergencePolicy().margin)
    policy.add_argument("--policy-resid", type=float, default=DivergencePolicy().resid)
    common.add_argument("--out", help="Report path (default: results/<command>/<command>_<timestamp>.<ext>)")
    common.add_argument("--format", choices=["text", "structured"], default="text", help="Report format")
    common.add_argument("--seed", type=int, default=0, help="Seed recorded in the report only; no computation here is random")
    common.add_argument("--log-level", default=log_level, help="Logging level (default: %(default)s)")

    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Parabolicity of flutes, basic ends and trees of ends",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="Classify a surface and report the evidence")
    develop = sub.add_parser("develop", parents=[common], help="Develop the geodesic chain and its gaps")
    develop.add_argument("--svg-out", help="Write the disk drawing here")
    synth = sub.add_parser("synthesize", parents=[common], help="Raise or lower lengths to a parabolic sequence")
    synth.add_argument("--mode", choices=["raise", "lower"], default="raise")
    endtree = sub.add_parser("endtree", parents=[common], help="Classify every end of a tree")
    endtree.add_argument(
        "--num-threads", type=int, default=1,
        help="Threads for per-node classification (default 1); the work holds the GIL, so more threads rarely help",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=args.input,
        generator=args.generator,
        pattern=args.pattern if args.generator else None,
        declared_infinite=not args.declared_finite,
        precision_bits=args.precision_bits,
        truncation=args.truncate,
        policy=DivergencePolicy(
            window=args.policy_window,
            delta=args.policy_delta,
            margin=args.policy_margin,
            resid=args.policy_resid,
        ),
        mode=getattr(args, "mode", "raise"),
        out=args.out,
        svg_out=getattr(args, "svg_out", None),
        seed=args.seed,
        format=args.format,
    )


def load_surface(config: RunConfig):
    """The surface named by --input, or a flute built from the inline flags."""
    if config.input_path:
        surface = parse_surface(Path(config.input_path))
        if config.truncation is not None and isinstance(surface, FluteDescriptor):
            surface = validate_flute(FluteDescriptor(
                generator=surface.generator,
                twists=surface.twists,
                truncation=config.truncation,
                label=surface.label,
            ))
        return surface
    if not config.generator:
        raise DomainError("give --input or --generator")
    if config.truncation is None:
        raise DomainError("--truncate is required with --generator")
    twists = parse_inline_pattern(config.pattern or "none", config.truncation, config.declared_infinite)
    flute = FluteDescriptor(
        generator=parse_inline_generator(config.generator, Path.cwd()),
        twists=twists,
        truncation=config.truncation,
        label=config.generator,
    )
    return validate_flute(flute)


def run(config: RunConfig, num_threads: int = 1) -> RunReport:
    surface = load_surface(config)
    if config.command == "analyze":
        return analyze_report(config, surface)
    if config.command == "develop":
        if isinstance(surface, EndTree):
            raise DomainError("develop needs a flute or a basic end, not an end tree")
        return develop_report(config, surface)
    if config.command == "synthesize":
        return synthesize_report(config, surface)
    if not isinstance(surface, EndTree):
        kind = "basic-end" if isinstance(surface, BasicEndDescriptor) else "flute"
        raise DomainError(f"endtree needs an end-tree document, got a {kind}")
    return endtree_report(config, surface, num_threads=num_threads)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT)

    try:
        config = config_from_args(args)
        logger.info("%s: precision %d bits", config.command, config.precision_bits)
        with working_precision(config.precision_bits):
            report = run(config, num_threads=getattr(args, "num_threads", 1))
        suffix = "json" if config.format == "structured" else "txt"
        out = Path(config.out) if config.out else timestamped_results_path(config.command, suffix)
        report.write(out, config.format)
    except PrecisionExhaustedError as e:
        logger.error("%s (exit %d)", e, EXIT_PRECISION)
        return EXIT_PRECISION
    except HypothesisRefusal as e:
        where = f" at index {e.index}" if e.index is not None else ""
        logger.error("refused, hypothesis %s fails%s: %s (exit %d)", e.hypothesis, where, e, EXIT_REFUSAL)
        return EXIT_REFUSAL
    except (DomainError, ValidationError) as e:
        logger.error("input error: %s (exit %d)", e, EXIT_INPUT)
        return EXIT_INPUT

    print(report.text)
    print(f"\nReport saved to: {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
