"""
Verification subcommands over a named sweep.
"""
import functools

import click

from commands.options import config_option, out_option, record_option
from commands.pipeline import run_cli


def sweep_options(func):
    """--sweep, reproducibility and resolution overrides common to every verify run."""
    options = [
        click.option("--sweep", default=None, help="Preset name (default, small) or JSON sweep file"),
        click.option("--seed", type=int, default=None, help="Seed for --subsample"),
        click.option("--subsample", type=int, default=None, help="Evaluate this many configurations"),
        click.option("--quad-cells", type=int, default=None, help="Base quadrature cells"),
        click.option("--threads", type=int, default=None, help="Worker cap (default STRONGSUM_THREADS)"),
        click.option("--constant-scale", type=float, default=None, help="Scale literal constants (test fixture)"),
        out_option,
        config_option,
        record_option,
    ]
    return functools.reduce(lambda f, option: option(f), reversed(options), func)


@click.command("verify-elementary")
@click.argument("target")
@sweep_options
@click.pass_context
def verify_elementary(ctx, config_file, **flags):
    """Check E1..E4 between the pointwise characteristics."""
    ctx.exit(run_cli({"subcommand": "verify-elementary", **flags}, config_file))


@click.command("verify-lemma")
@click.argument("target")
@sweep_options
@click.pass_context
def verify_lemma(ctx, config_file, **flags):
    """Check L1..L7 (L4 and L5 run both halves; L4a, L4b, L5b individually)."""
    ctx.exit(run_cli({"subcommand": "verify-lemma", **flags}, config_file))


@click.command("verify-theorem")
@click.argument("target")
@click.option("--include-non-theorem", is_flag=True, default=None, help="Also run flagged q < 2 rows")
@sweep_options
@click.pass_context
def verify_theorem(ctx, config_file, **flags):
    """Check T1..T6 or the power-mean reduction PM."""
    ctx.exit(run_cli({"subcommand": "verify-theorem", **flags}, config_file))


@click.command("verify-corollary")
@sweep_options
@click.pass_context
def verify_corollary(ctx, config_file, **flags):
    """Decay of the block means at Gabisonia points."""
    ctx.exit(run_cli({"subcommand": "verify-corollary", **flags}, config_file))


@click.command("sweep")
@click.option("--include-non-theorem", is_flag=True, default=None)
@sweep_options
@click.pass_context
def sweep(ctx, config_file, **flags):
    """Every check in suite order plus the corollary."""
    ctx.exit(run_cli({"subcommand": "sweep", **flags}, config_file))


commands = [verify_elementary, verify_lemma, verify_theorem, verify_corollary, sweep]
