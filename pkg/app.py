import sys
from typing import Optional, Sequence

from config import constants
from config.logging_config import initialize_logging
from services.coxeter.coxeter_service import CoxeterService
from services.coxeter.root_system_service import RootSystemService
from services.oracle.flag_service import FlagService
from services.verification.harness_service import HarnessService
from ui.cli import CommandLineUI, build_parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    # Initialize services
    if not initialize_logging("DEBUG" if args.verbose else None):
        print(f"error: unknown log level {constants.LOG_LEVEL!r}", file=sys.stderr)
        return constants.EXIT_USAGE

    threads = args.threads if args.threads is not None else constants.DEFAULT_THREADS
    coxeter_service = CoxeterService(RootSystemService())
    flag_service = FlagService(budget=args.budget, threads=threads)
    harness_service = HarnessService(coxeter_service, flag_service, threads=threads)
    cli = CommandLineUI(coxeter_service, flag_service, harness_service, threads=threads)
    return cli.render(args)


if __name__ == "__main__":
    sys.exit(main())
