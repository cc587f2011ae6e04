"""
Ledger listing and manifest replay.
"""
import logging
from pathlib import Path

import click

from commands.pipeline import execute, get_ledger
from utils.config import build_config
from utils.csv_output import read_manifest
from utils.errors import StrongSumError

logger = logging.getLogger(__name__)


@click.command("runs")
@click.option("--limit", type=int, default=20, show_default=True)
def runs(limit):
    """List recorded runs, newest first."""
    try:
        ledger = get_ledger()
        ledger.init_db()
        records = ledger.get_recent_runs(limit)
    except Exception as e:
        logger.warning(f"Could not read the ledger: {e}")
        click.echo(f"Error: could not read the ledger: {e}", err=True)
        raise SystemExit(2)
    for run in records:
        verdicts = ", ".join(f"{r.inequality_id}={r.verdict}" for r in run.results)
        click.echo(
            f"{run.id}\t{run.created_at:%Y-%m-%d %H:%M:%S}\t{run.subcommand}\t{run.target or '-'}\t"
            f"{run.sweep_name or '-'}\texit={run.exit_code}\t{run.execution_time:.2f}s\t{verdicts}"
        )


@click.command("replay")
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", default=None, help="Write to this path instead of the manifest's output next to it")
@click.pass_context
def replay(ctx, manifest, out):
    """Re-run the configuration recorded in MANIFEST."""
    try:
        recorded = read_manifest(manifest)
        values = dict(recorded.config)
        values["out"] = out or str(manifest.with_name(recorded.output))
        code = execute(build_config(values), echo=click.echo)
    except StrongSumError as e:
        click.echo(f"Error: {e}", err=True)
        code = 2
    ctx.exit(code)


commands = [runs, replay]
