"""Command-line port interface."""

from abc import ABC


class CommandLinePort(ABC):
    """Port interface for the command-line front end."""

    # This is a marker interface
    # The actual implementation is in the argparse adapter
    pass
