"""
Compute subcommands: coefficients, partial sums, characteristics and strong means.
"""
import click

from commands.options import config_option, out_option, record_option
from commands.pipeline import run_cli


@click.command("coeffs")
@click.option("--function", "function", default=None, help="Corpus function name")
@click.option("--degree", type=int, default=None, help="Highest frequency N")
@click.option("--samples", type=int, default=None, help="FFT sample count M (default 4N)")
@click.option("--method", type=click.Choice(["fft", "quadrature", "analytic"]), default=None)
@out_option
@config_option
@record_option
@click.pass_context
def coeffs(ctx, config_file, **flags):
    """Fourier coefficients a_k, b_k for k = 0..N."""
    ctx.exit(run_cli({"subcommand": "coeffs", **flags}, config_file))


@click.command("partial-sums")
@click.option("--function", "function", default=None)
@click.option("--degree", type=int, default=None)
@click.option("--x", "x", type=float, multiple=True, help="Evaluation point (repeatable)")
@click.option("--quad-cells", type=int, default=None)
@out_option
@config_option
@record_option
@click.pass_context
def partial_sums(ctx, config_file, **flags):
    """S_k f(x) for k = 0..N with coefficient-route and kernel-route deviations."""
    ctx.exit(run_cli({"subcommand": "partial-sums", **flags}, config_file))


@click.command("chars")
@click.option("--function", "function", default=None)
@click.option("--x", "x", type=float, multiple=True)
@click.option("--p", type=float, default=None)
@click.option("--s", type=float, default=None)
@click.option("--delta-exponents", type=int, multiple=True, help="j in delta = pi * 2**-j (repeatable)")
@click.option("--quad-cells", type=int, default=None)
@out_option
@config_option
@record_option
@click.pass_context
def chars(ctx, config_file, **flags):
    """Pointwise characteristics w, G, sup G, Phi, W, Psi and omega over dyadic deltas."""
    ctx.exit(run_cli({"subcommand": "chars", **flags}, config_file))


@click.command("means")
@click.option("--function", "function", default=None)
@click.option("--x", "x", type=float, multiple=True)
@click.option("--indices", default=None, help="arith:r, lacunary:r, shifted:k0,r or k0,k1,...")
@click.option("--q", type=float, default=None)
@click.option("--scheme", type=click.Choice(["block", "cesaro", "abel"]), default=None)
@click.option("--u", type=float, default=None)
@click.option("--growth", default=None, help="identity, power<q> or expsquare")
@out_option
@config_option
@record_option
@click.pass_context
def means(ctx, config_file, **flags):
    """Strong means H^q over an index family, or H^{lambda phi}_u with --scheme."""
    ctx.exit(run_cli({"subcommand": "means", **flags}, config_file))


commands = [coeffs, partial_sums, chars, means]
