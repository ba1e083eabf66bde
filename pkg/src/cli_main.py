import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional


def setup_environment():
    """Set up the environment for the application."""
    # Add project root to Python path
    project_root = Path(__file__).parent.parent
    if str(project_root) not in sys.path:
        sys.path.insert(0, str(project_root))
    return project_root


def setup_logging(verbose: bool = False):
    """Log to stderr so stdout carries only the report."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    """Subcommands with the shared flags."""
    from src import __version__
    from src.controllers.base_controller import CommandOption
    from src.core.constants import CONTRACTIVE_TOL, DEFAULT_SEED

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default %(default)s)")
    common.add_argument("--tol", type=float, default=CONTRACTIVE_TOL, help="contractivity tolerance")
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "human"], default="json")
    common.add_argument("--method", default=None, help="algorithm variant of the command")
    common.add_argument("--output", default=None, help="write the report to this file")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    kernel = argparse.ArgumentParser(add_help=False)
    kernel.add_argument("--kernel", choices=["matrix_ball", "nil2", "reinhardt3"])
    kernel.add_argument("--lambda", dest="lam", type=float, default=None)
    kernel.add_argument("--r", type=int, default=None)
    kernel.add_argument("--s", type=int, default=None)
    kernel.add_argument("--point", default=None, help="comma separated complex coordinates, e.g. 0.1,0.2j")

    parser = argparse.ArgumentParser(prog="omega-a", description="Operator norms and contractivity on Omega_A.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for option in (CommandOption.CHECK, CommandOption.CHECK_COMPLETE):
        p = sub.add_parser(option.value, parents=[common])
        p.add_argument("domain", help="DomainSpec JSON file")
        p.add_argument("vtuple", help="VTuple JSON file")

    p = sub.add_parser(CommandOption.DUAL_NORM.value, parents=[common])
    p.add_argument("domain")
    p.add_argument("--point", required=True, help="comma separated complex coordinates of w")

    for option in (CommandOption.CANONICALIZE, CommandOption.SEARCH):
        p = sub.add_parser(option.value, parents=[common])
        p.add_argument("domain")

    for option in (CommandOption.BERGMAN_CURVATURE, CommandOption.JET_GRAM):
        sub.add_parser(option.value, parents=[common, kernel])

    p = sub.add_parser(CommandOption.THRESHOLDS.value, parents=[common, kernel])
    p.add_argument("--example", default=None, help="nil2, reinhardt3 or matrix_ball(r,s)")
    p.add_argument("--lambda-range", dest="lambda_range", nargs=3, type=float, default=None,
                   metavar=("START", "STOP", "NUM"))
    return parser


def config_from_args(args: argparse.Namespace):
    """RunConfig from parsed arguments."""
    from src.models.run_config import RunConfig

    inputs = [getattr(args, name) for name in ("domain", "vtuple") if getattr(args, name, None) is not None]
    options = {
        "output": args.output,
        "point": getattr(args, "point", None),
        "kernel": getattr(args, "kernel", None),
        "lambda": getattr(args, "lam", None),
        "r": getattr(args, "r", None),
        "s": getattr(args, "s", None),
        "example": getattr(args, "example", None),
        "lambda_range": getattr(args, "lambda_range", None),
    }
    return RunConfig(
        command=args.command,
        inputs=inputs,
        seed=args.seed,
        tol=args.tol,
        fmt=args.fmt,
        method=args.method,
        options={k: v for k, v in options.items() if v is not None},
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI application."""
    try:
        setup_environment()

        # Import after environment setup
        from src.controllers.app_controller import AppController
        from src.core.constants import EXIT_INPUT
        from src.core.errors import InputError
        from src.views.cli import make_view

        try:
            args = build_parser().parse_args(argv)
        except SystemExit as e:
            return int(e.code or 0)
        setup_logging(args.verbose)

        try:
            config = config_from_args(args)
        except InputError as e:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_INPUT

        controller = AppController(make_view(config.fmt))
        return controller.execute(config)

    except KeyboardInterrupt:
        print("\nApplication terminated by user.", file=sys.stderr)
        return 0
    except Exception as e:
        print(f"\nAn unexpected error occurred: {e}", file=sys.stderr)
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
