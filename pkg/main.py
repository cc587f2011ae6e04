import logging

import click
from dotenv import load_dotenv

from commands import compute, runs, verify
from utils.settings import LOG_FORMAT, LOG_LEVEL, TOOL_NAME, TOOL_VERSION

# Load environment variables first
load_dotenv()


@click.group()
@click.version_option(TOOL_VERSION, prog_name=TOOL_NAME)
@click.option("--log-level", default=LOG_LEVEL, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level):
    """Strong summability of Fourier series: numerics and inequality verification."""
    logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT)


for command in [*compute.commands, *verify.commands, *runs.commands]:
    cli.add_command(command)


if __name__ == "__main__":
    cli()
