"""Run the command-line application."""

import sys

from driving.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
