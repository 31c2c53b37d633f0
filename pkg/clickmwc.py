"""
Click CLI for the maximum weight clique solver.  Options live here, the work is done by
engine.mwc_main.ClickMain.
"""

# standard imports for all click scripts
import click
import os
from dotenv import load_dotenv        # loading environment variable

# Imports for this specific script
from engine.mwc_config import ClickConfig
from engine.mwc_main import run_command
from mwcsolver.solver import SolverMode

# Pull defaults from config object
config = ClickConfig()
CLICK_ENV_PREFIX = config.CLICK_ENV_PREFIX
CLICK_PROGRAM_NAME = config.CLICK_PROGRAM_NAME
CLICK_PROGRAM_HEADER = config.CLICK_PROGRAM_HEADER
CLICK_PROGRAM_VERSION = config.CLICK_PROGRAM_VERSION
CLICK_PROGRAM_HELP_LINE = config.CLICK_PROGRAM_HELP_LINE
CLICK_HELP_EPILOG = config.CLICK_HELP_EPILOG

DEFAULT_ENV_FILE = config.DEFAULT_ENV_FILE
DEFAULT_LOG_DIR = config.DEFAULT_LOG_DIR
DEFAULT_IN_DIR = config.DEFAULT_IN_DIR

MODE_CHOICES = [m.cli_name for m in SolverMode] + [m.value for m in SolverMode if m.value != m.cli_name]


def load_env_file(ctx, param, filename='', input_dir=DEFAULT_IN_DIR):
    """
    Click method to load an environment file.

    Command-line variables are named PREFIX_COMMAND_VARIABLE, e.g. MWC_SOLVE_SEED.

    This callback is called by the --config command-line option and is run
    as "eager" so that it occurs before other options are processed.

    :param filename: filename to load as an ENV file, looked up in input_dir then the working
                     directory, as FILENAME or as .env.FILENAME
    """

    # load default .env without override from input or local directory
    file_path_1 = os.path.join(input_dir, DEFAULT_ENV_FILE)
    if os.path.exists(file_path_1):
        load_dotenv(file_path_1)
    else:
        load_dotenv(DEFAULT_ENV_FILE)

    # load --config file as "FILENAME" or as ".env.FILENAME", overriding the environment
    if isinstance(filename, str) and filename != '':
        candidates = [os.path.join(input_dir, filename),
                      os.path.join(input_dir, '.env.' + filename),
                      filename,
                      '.env.' + filename,
                      ]
        for file_path in candidates:
            if os.path.exists(file_path):
                load_dotenv(file_path, override=True)
                click.secho(f'Using configuration file "{file_path}" . . .', fg='red', err=True)
                break
        else:
            click.secho(f'WARNING: Environment file "{filename}" not found.  Using default values.', fg='red', err=True)


# ########################################################################
# Shared option groups
#

def common_options(func):
    """Log directory, input directory and console verbosity"""
    options = [
        click.option('--logdir', 'log_dir',
                     help='log directory',
                     default=DEFAULT_LOG_DIR,
                     show_default=True,
                     ),
        click.option('--indir', 'input_dir',
                     hidden=True,
                     help='Input directory for .env and plan files',
                     default=DEFAULT_IN_DIR,
                     show_default=True,
                     ),
        click.option('-v', '--verbose',
                     is_flag=True,
                     help='Log INFO messages to the console',
                     default=False,
                     ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def instance_options(multiple=False):
    """Instance path(s) and how to read them"""
    def decorator(func):
        options = [
            click.option('-i', '--instance', 'instance',
                         type=click.Path(dir_okay=multiple),
                         multiple=multiple,
                         required=not multiple,
                         help='Instance file' + (' or directory, repeatable' if multiple else ''),
                         ),
            click.option('--format', 'instance_format',
                         type=click.Choice(['dimacs', 'wclq', 'auto'], case_sensitive=False),
                         default=ClickConfig.DEFAULT_FORMAT,
                         show_default=True,
                         help='dimacs: no weight lines; wclq: `v i w` weight lines',
                         ),
            click.option('--weights',
                         type=click.Choice(['mod200', 'file', 'auto'], case_sensitive=False),
                         default=ClickConfig.DEFAULT_WEIGHTS,
                         show_default=True,
                         help='mod200: w(v_i) = (i mod 200) + 1; auto: file weights if present',
                         ),
            click.option('--complement',
                         is_flag=True,
                         default=False,
                         help='Solve on the complement graph',
                         ),
        ]
        for option in reversed(options):
            func = option(func)
        return func
    return decorator


def solver_options(func):
    """Budget, hash and restart settings shared by solve and bench"""
    options = [
        click.option('--cutoff-seconds', 'cutoff_seconds',
                     type=click.FloatRange(min=0, min_open=True),
                     default=None,
                     help=f'Wall-clock budget [default: {ClickConfig.DEFAULT_CUTOFF_SECONDS} unless --max-steps]',
                     ),
        click.option('--max-steps', 'max_steps',
                     type=click.IntRange(min=1),
                     default=None,
                     help='Deterministic step budget',
                     ),
        click.option('--target-weight', 'target_weight',
                     type=click.IntRange(min=0),
                     default=None,
                     help='Stop once a clique of this weight is found',
                     ),
        click.option('--prime',
                     type=int,
                     default=ClickConfig.DEFAULT_PRIME,
                     show_default=True,
                     help='Scenario hash modulus',
                     ),
        click.option('--mark-store', 'mark_store',
                     type=click.Choice(['bitset', 'sparse'], case_sensitive=False),
                     default=ClickConfig.DEFAULT_MARK_STORE,
                     show_default=True,
                     help='bitset: one bit per hash value; sparse: set of marked values',
                     ),
        click.option('--restart-period', 'restart_period',
                     type=click.IntRange(min=1),
                     default=ClickConfig.DEFAULT_RESTART_PERIOD,
                     show_default=True,
                     help='lscc restart period L in steps',
                     ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


# ########################################################################
# Commands
#

@click.group(help=CLICK_PROGRAM_HELP_LINE, epilog=CLICK_HELP_EPILOG)
@click.version_option(CLICK_PROGRAM_VERSION, prog_name=CLICK_PROGRAM_NAME)
@click.option('-c', '--config',
              type=click.Path(dir_okay=False),
              callback=load_env_file,
              is_eager=True,
              expose_value=False,
              help=f'env file to auto-load options, will override existing environment variables.  All variables should be prefixed with "{CLICK_ENV_PREFIX}_".',
              )
def cli():
    """Master CLICK group; ENV file has already been loaded"""


@cli.command(help='Solve one instance and print the best clique found')
@instance_options()
@click.option('--mode',
              type=click.Choice(MODE_CHOICES, case_sensitive=False),
              default=ClickConfig.DEFAULT_MODE,
              show_default=True,
              )
@click.option('--seed', type=int, default=ClickConfig.DEFAULT_SEED, show_default=True)
@solver_options
@click.option('--sweep-locks/--no-sweep-locks', 'sweep_locks',
              default=True,
              show_default=True,
              help='Lock every vertex swept out by a scenario restart',
              )
@click.option('--output',
              type=click.Choice(['text', 'json'], case_sensitive=False),
              default=ClickConfig.DEFAULT_OUTPUT,
              show_default=True,
              )
@common_options
@click.pass_context
def solve(ctx: click.Context, **kwargs):
    run_command(ctx, 'solve')


@cli.command(help='Run every (instance, seed, mode) and write CSV results with a per-instance summary')
@instance_options(multiple=True)
@click.option('--mode',
              type=click.Choice(MODE_CHOICES, case_sensitive=False),
              multiple=True,
              help=f'Solver mode, repeatable  [default: {ClickConfig.DEFAULT_MODE}]',
              )
@click.option('--seeds',
              default=ClickConfig.DEFAULT_SEEDS,
              show_default=True,
              help='Seed range A..B (inclusive) or a comma separated list',
              )
@click.option('--jobs', type=click.IntRange(min=1), default=ClickConfig.DEFAULT_JOBS, show_default=True)
@solver_options
@click.option('--csv', 'csv', type=click.Path(dir_okay=False), default=None, help='CSV file [default: stdout]')
@click.option('--xlsx', 'xlsx', type=click.Path(dir_okay=False), default=None, help='Also write an Excel workbook')
@click.option('--plan', default=None, help='YAML plan file; explicit options win over its values')
@click.option('--timing/--no-timing', 'timing',
              default=True,
              show_default=True,
              help='--no-timing writes time_to_best_ms as 0 for byte-identical reruns',
              )
@common_options
@click.pass_context
def bench(ctx: click.Context, **kwargs):
    run_command(ctx, 'bench')


@cli.command(help='Check that a solution file is a clique of the claimed weight')
@instance_options()
@click.option('-s', '--solution', type=click.Path(dir_okay=False), required=True,
              help='Vertex indices and the claimed weight, e.g. "3 5 6 8 / 193"')
@common_options
@click.pass_context
def verify(ctx: click.Context, **kwargs):
    run_command(ctx, 'verify')


@cli.command(help='Write an instance back out with explicit `v i w` weight lines')
@instance_options()
@click.option('-o', '--out', 'out_file', type=click.Path(dir_okay=False), default=None,
              help='Output file [default: stdout]')
@common_options
@click.pass_context
def convert(ctx: click.Context, **kwargs):
    run_command(ctx, 'convert')


# ########################################################################


if __name__ == '__main__':

    # print out banners at start of script
    click.echo('\n', err=True)
    click.echo(click.style('*-' * 30, fg='red'), err=True)
    click.echo(click.style(CLICK_PROGRAM_NAME, fg='red'), err=True)
    click.echo(click.style(CLICK_PROGRAM_HEADER, fg='red'), err=True)
    click.echo(err=True)

    # call CLICK top-level method with auto_envvar
    cli(auto_envvar_prefix=CLICK_ENV_PREFIX)
