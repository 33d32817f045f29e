#!/usr/bin/env python3
"""
Pretty Good Measurement Toolkit CLI
"""
import click
import sys
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src import __version__
from src.config import load_config, format_report_diff
from src.errors import EXIT_BOUND_VIOLATION, EXIT_OK, exit_code_for, failure_entry
from src.formats import FORMATS, failure_report, write_report
from src.states import GENERATOR_KINDS
from src.utils.logger import configure_logging, setup_logger
from src.utils.validator import validate_config
from src.commands.bounds import run_bounds
from src.commands.copies import run_copies
from src.commands.diff import run_diff
from src.commands.gen import run_gen
from src.commands.multicopy import run_multicopy
from src.commands.pgm import run_pgm
from src.commands.simulate import run_simulate

logger = setup_logger('cli')


def input_option(f):
    return click.option('--input', 'input_path', required=True, type=click.Path(),
                        help='Ensemble file (JSON)')(f)


def output_option(f):
    return click.option('--output', type=click.Path(), default=None,
                        help='Report file (default: stdout)')(f)


def format_option(f):
    return click.option('--format', 'fmt', type=click.Choice(FORMATS), default=None,
                        help='Report format (default: defaults.format)')(f)


def cutoff_option(f):
    return click.option('--cutoff', type=float, default=None,
                        help='Relative support cutoff (default: numerics.support_cutoff)')(f)


def delta_option(f):
    return click.option('--delta', type=float, default=None,
                        help='Target failure probability (default: defaults.delta)')(f)


def _format(cfg, fmt):
    return fmt or cfg['defaults']['format']


def _delta(cfg, delta):
    return cfg['defaults']['delta'] if delta is None else delta


def _finish(report, output, fmt):
    """Write the report and exit 0, or 1 when it lists failures"""
    write_report(report, output, fmt)
    if report['failures']:
        for failure in report['failures']:
            click.echo(f"✗ {failure['kind']}: {failure['message']}", err=True)
        sys.exit(EXIT_BOUND_VIOLATION)
    sys.exit(EXIT_OK)


def _abort(command, error, output, fmt):
    """Report an exception as a failure report and exit with its mapped code"""
    click.echo(f"\n✗ Error: {str(error)}", err=True)
    logger.debug("Traceback", exc_info=error)
    try:
        write_report(failure_report(command, [failure_entry(error)]), output, fmt)
    except Exception as write_error:
        click.echo(f"✗ Could not write failure report: {write_error}", err=True)
    sys.exit(exit_code_for(error))


@click.group()
@click.version_option(version=__version__)
@click.option('--config', 'config_file', type=click.Path(), default=None,
              help='Configuration file path (default: $PGM_CONFIG or built-in defaults)')
@click.option('--verbose', is_flag=True, help='Debug logging')
@click.option('--quiet', is_flag=True, help='Warnings and errors only')
@click.option('--log-file', type=click.Path(), default=None, help='Also log to this file')
@click.pass_context
def cli(ctx, config_file, verbose, quiet, log_file):
    """
    Pretty Good Measurement Toolkit

    Build the PGM for finite quantum ensembles, check the bounds on its
    error, and simulate the two-stage discrimination protocol.
    """
    try:
        cfg = load_config(config_file)
        validate_config(cfg)
    except Exception as e:
        click.echo(f"✗ Error: {str(e)}", err=True)
        sys.exit(exit_code_for(e))

    if verbose:
        level = 'DEBUG'
    elif quiet:
        level = 'WARNING'
    else:
        level = cfg['logging']['level']
    configure_logging(level, log_file or cfg['logging']['file'])
    ctx.obj = cfg


@cli.command()
@input_option
@output_option
@format_option
@cutoff_option
@click.pass_obj
def pgm(cfg, input_path, output, fmt, cutoff):
    """
    Build the PGM and report its confusion matrix

    Reports both the direct and the Gram-matrix confusion matrices, the
    worst-case error P_E, ||G||, ||G^-1|| and the per-state success
    probabilities.
    """
    fmt = _format(cfg, fmt)
    try:
        report = run_pgm(cfg, input_path, cutoff=cutoff)
    except Exception as e:
        _abort('pgm', e, output, fmt)
    _finish(report, output, fmt)


@cli.command()
@input_option
@output_option
@format_option
@delta_option
@cutoff_option
@click.pass_obj
def bounds(cfg, input_path, output, fmt, delta, cutoff):
    """
    Evaluate every bound on the PGM error

    Exit status is 1 when any bound or chain link is violated.
    """
    fmt = _format(cfg, fmt)
    try:
        report = run_bounds(cfg, input_path, _delta(cfg, delta), cutoff=cutoff)
    except Exception as e:
        _abort('bounds', e, output, fmt)
    _finish(report, output, fmt)


@cli.command()
@input_option
@output_option
@format_option
@delta_option
@cutoff_option
@click.option('--epsilon', type=float, default=None,
              help='Overlap gap for the copy budget (default: measured)')
@click.option('--trials', type=int, default=None, help='Trials per true index (default: defaults.trials)')
@click.option('--seed', type=int, default=None, help='Master seed (required)')
@click.option('--dedup', is_flag=True, help='Test each distinct PGM outcome once')
@click.option('--workers', type=int, default=None, help='Worker threads (default: simulation.workers)')
@click.pass_obj
def simulate(cfg, input_path, output, fmt, delta, cutoff, epsilon, trials, seed, dedup, workers):
    """
    Monte Carlo run of the two-stage protocol on a pure ensemble

    The report is identical for equal seeds whatever the worker count.
    """
    fmt = _format(cfg, fmt)
    trials = cfg['defaults']['trials'] if trials is None else trials
    try:
        report = run_simulate(cfg, input_path, _delta(cfg, delta), trials, seed,
                              epsilon=epsilon, dedup=dedup, workers=workers, cutoff=cutoff)
    except Exception as e:
        _abort('simulate', e, output, fmt)
    _finish(report, output, fmt)


@cli.command()
@output_option
@format_option
@delta_option
@click.option('--epsilon', type=float, required=True, help='Distinguishability gap')
@click.option('--n', 'n', type=int, default=None, help='Number of states (joint PGM budget)')
@click.option('--gram-norm', type=float, default=None, help='Gram operator norm (two-stage budget)')
@click.option('--max-overlap', type=float, default=None, help='Largest |<psi_i|psi_j>| (Gram flattening)')
@click.option('--eta', type=float, default=None, help='Allowed Gram norm excess over 1 (Gram flattening)')
@click.pass_obj
def copies(cfg, output, fmt, delta, epsilon, n, gram_norm, max_overlap, eta):
    """
    Evaluate the copy-count formulas
    """
    fmt = _format(cfg, fmt)
    try:
        report = run_copies(epsilon, _delta(cfg, delta), n=n, gram_norm=gram_norm,
                            max_overlap=max_overlap, eta=eta)
    except Exception as e:
        _abort('copies', e, output, fmt)
    _finish(report, output, fmt)


@cli.command()
@input_option
@output_option
@format_option
@delta_option
@cutoff_option
@click.option('--copies', 'copy_counts', type=int, multiple=True,
              help='Copy count k (repeatable; default: joint PGM budget)')
@click.pass_obj
def multicopy(cfg, input_path, output, fmt, delta, cutoff, copy_counts):
    """
    Exact worst-case error of the PGM applied jointly to k copies
    """
    fmt = _format(cfg, fmt)
    try:
        report = run_multicopy(cfg, input_path, copies=copy_counts, delta=_delta(cfg, delta), cutoff=cutoff)
    except Exception as e:
        _abort('multicopy', e, output, fmt)
    _finish(report, output, fmt)


@cli.command()
@click.option('--kind', required=True, type=click.Choice(GENERATOR_KINDS), help='Generator')
@click.option('--output', required=True, type=click.Path(), help='Ensemble file to write')
@click.option('--n', 'n', required=True, type=int, help='Number of states')
@click.option('--d', 'd', type=int, default=None, help='Dimension')
@click.option('--c', 'c', type=float, default=None, help='Common overlap (equal-overlap)')
@click.option('--rank', type=int, default=None, help='State rank (ginibre)')
@click.option('--seed', type=int, default=None, help='Seed (required except for equal-overlap)')
@format_option
@cutoff_option
@click.pass_obj
def gen(cfg, kind, output, n, d, c, rank, seed, fmt, cutoff):
    """
    Generate an ensemble file

    The summary report goes to stdout.
    """
    fmt = _format(cfg, fmt)
    try:
        report = run_gen(cfg, kind, output, n, d=d, c=c, rank=rank, seed=seed, cutoff=cutoff)
    except Exception as e:
        _abort('gen', e, None, fmt)
    _finish(report, None, fmt)


@cli.command()
@click.argument('old', type=click.Path())
@click.argument('new', type=click.Path())
@output_option
@format_option
@click.pass_obj
def diff(cfg, old, new, output, fmt):
    """
    Compare two structured reports

    Exit status is 0 iff their results carry no numeric or structural
    differences.
    """
    fmt = _format(cfg, fmt)
    try:
        report, changes = run_diff(old, new)
    except Exception as e:
        _abort('diff', e, output, fmt)
    click.echo(format_report_diff(changes), err=True)
    _finish(report, output, fmt)


if __name__ == '__main__':
    cli()
