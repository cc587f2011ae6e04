"""
Options shared by every subcommand.
"""
from pathlib import Path

import click

config_option = click.option(
    "--config", "config_file", type=click.Path(dir_okay=False, path_type=Path), default=None,
    help="key=value run configuration; flags override its values",
)
out_option = click.option("--out", default=None, help="CSV path (stdout when omitted)")
record_option = click.option("--record/--no-record", default=None, help="Record the run in the ledger")
