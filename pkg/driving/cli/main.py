"""Command-line entry point."""

import sys
from typing import Optional

from driving.cli.adapter import SweepCommandLineAdapter


def main(argv: Optional[list[str]] = None) -> int:
    return SweepCommandLineAdapter().run(argv)


if __name__ == "__main__":
    sys.exit(main())
