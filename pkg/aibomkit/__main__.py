"""Entry point for ``python -m aibomkit``."""

from .cli import cli

if __name__ == "__main__":
    cli(prog_name="aibomkit")
