"""
Command runners behind the click entry point.

Each click command builds a ClickMain from its context and calls the matching method.
Options are read from ctx.params; the method sets up logging, does the work, prints the
result with click.echo and returns the process exit code:

    0   success
    1   invalid option combination / solver configuration (bench: any run failed)
    2   instance or solution file could not be read or parsed
    3   verify: the vertex set is not a clique
    4   verify: the clique weight differs from the claimed weight
"""
import json
import logging
import os
import time

import click
from click.core import ParameterSource

from mwcsolver.exceptions import ConfigError, InstanceParseError, MwcSolverException
from mwcsolver.graph import WeightMode, load_instance, write_instance
from mwcsolver.solver import MwcSolver, SolverConfig, SolverMode

from .bench_lib import BenchEngine
from .mwc_config import ClickConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NOT_CLIQUE = 3
EXIT_WEIGHT_MISMATCH = 4

_HANDLER_TAG = '_mwc_handler'


# ########################################
# Script supporting methods
# Not CLICK related
#


def get_current_time():
    """Utility function to return current time"""
    return time.monotonic()


def initialize_logging(log_directory='logs', time_uid=ClickConfig.TIME_UID, verbose=False):
    """Root logger to a DEBUG log file plus a console handler on stderr.

    Handlers from an earlier call in the same process are removed first.

    :return: log file name
    """
    if not os.path.exists(log_directory):
        os.makedirs(log_directory)

    log_filename = ClickConfig.program_stem() + '_LOGFILE_' + time_uid + '.txt'
    log_full_path = os.path.join(log_directory, log_filename)

    log_file_format = '[%(asctime)-15s][%(levelname)s][%(filename)s][%(funcName)s][%(lineno)s] %(message)s'
    log_console_format = '[%(asctime)-15s][%(levelname)-8s][%(funcName)s] %(message)s'

    root = logging.getLogger('')
    for handler in list(root.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root.removeHandler(handler)
            handler.close()

    file_log = logging.FileHandler(log_full_path)
    file_log.setFormatter(logging.Formatter(log_file_format))
    file_log.setLevel(logging.DEBUG)

    console_log = logging.StreamHandler()       # stderr, stdout carries results only
    console_log.setFormatter(logging.Formatter(log_console_format))
    console_log.setLevel(logging.INFO if verbose else logging.WARNING)

    for handler in (file_log, console_log):
        setattr(handler, _HANDLER_TAG, True)
        root.addHandler(handler)
    root.setLevel(logging.DEBUG)

    return log_filename


def resolve_weight_mode(instance_format, weights):
    """Combine --format and --weights: dimacs means mod200 weights, wclq means file weights"""
    instance_format = (instance_format or 'auto').lower()
    weights = WeightMode(weights or 'auto')
    if instance_format == 'dimacs':
        if weights is WeightMode.FILE:
            raise ConfigError('--format dimacs has no weight lines, cannot use --weights file')
        return WeightMode.MOD200
    if instance_format == 'wclq' and weights is WeightMode.AUTO:
        return WeightMode.FILE
    return weights


def read_solution_file(path):
    """Vertex indices and a claimed weight.

    Either "3 5 6 8 / 193" on one line, or the vertices on one or more lines followed by
    the weight alone on the last line.  Lines starting with 'c' or '#' are comments.
    """
    with open(path, 'r') as handle:
        lines = [line.strip() for line in handle]
    lines = [line for line in lines if line and line[0] not in 'c#']
    text = ' '.join(lines)
    try:
        if '/' in text:
            left, right = text.split('/', 1)
            vertices = [int(t) for t in left.split()]
            weight = int(right.strip())
        elif len(lines) >= 2:
            vertices = [int(t) for line in lines[:-1] for t in line.split()]
            weight = int(lines[-1])
        else:
            raise InstanceParseError(f'{path}: expected vertex indices and a claimed weight')
    except ValueError:
        raise InstanceParseError(f'{path}: malformed solution file') from None
    return vertices, weight


class ClickMain(object):

    def __init__(self, ctx):
        # initialize ClickConfig object/class if it hasn't been done already
        default_config = ClickConfig()
        self.TIME_UID = default_config.TIME_UID
        self.ctx = ctx      # Click context

        self.log_dir = self.ctx.params.get('log_dir', ClickConfig.DEFAULT_LOG_DIR)
        self.input_dir = self.ctx.params.get('input_dir', ClickConfig.DEFAULT_IN_DIR)
        self.verbose = self.ctx.params.get('verbose', False)

        self.log_filename = initialize_logging(log_directory=self.log_dir, time_uid=self.TIME_UID,
                                               verbose=self.verbose)
        logging.debug(f'{ctx.info_name} options: {ctx.params}')

    def _param(self, name, default=None):
        value = self.ctx.params.get(name)
        return default if value is None else value

    def _fail(self, code, message):
        logging.error(message)
        click.secho(f'ERROR: {message}', fg='red', err=True)
        return code

    # ###############################################################
    # solve
    #

    def solve(self):
        start_time = get_current_time()
        try:
            weight_mode = resolve_weight_mode(self._param('instance_format'), self._param('weights'))
            max_steps = self._param('max_steps')
            cutoff = self._param('cutoff_seconds')
            if cutoff is None and max_steps is None:
                cutoff = ClickConfig.DEFAULT_CUTOFF_SECONDS
            config = SolverConfig(mode=SolverMode.parse(self._param('mode', ClickConfig.DEFAULT_MODE)),
                                  cutoff_seconds=cutoff,
                                  max_steps=max_steps,
                                  seed=self._param('seed', ClickConfig.DEFAULT_SEED),
                                  restart_period=self._param('restart_period', ClickConfig.DEFAULT_RESTART_PERIOD),
                                  prime=self._param('prime', ClickConfig.DEFAULT_PRIME),
                                  restart_sweep_locks=self._param('sweep_locks', True),
                                  mark_store=self._param('mark_store', ClickConfig.DEFAULT_MARK_STORE),
                                  target_weight=self._param('target_weight'),
                                  )
        except (ConfigError, ValueError) as exc:
            return self._fail(EXIT_USAGE, str(exc))

        instance = self._param('instance')
        try:
            graph = load_instance(instance, weight_mode=weight_mode,
                                  complement_graph=self._param('complement', False))
        except (InstanceParseError, OSError) as exc:
            return self._fail(EXIT_INPUT, f'{instance}: {exc}')

        try:
            result = MwcSolver(graph, config).run()
        except ConfigError as exc:
            return self._fail(EXIT_USAGE, str(exc))

        if self._param('output', ClickConfig.DEFAULT_OUTPUT) == 'json':
            report = {'instance': str(instance)}
            report.update(result.to_dict())
            click.echo(json.dumps(report, sort_keys=True))
        else:
            click.echo(f'instance:      {instance}')
            click.echo(f'mode:          {result.mode}')
            click.echo(f'seed:          {result.seed}')
            click.echo(f'best_weight:   {result.best_weight}')
            click.echo(f'clique:        {" ".join(str(v) for v in result.best_clique)}')
            click.echo(f'time_to_best:  {result.time_to_best:.3f}')
            click.echo(f'steps:         {result.steps}')
            click.echo(f'restarts:      {result.restarts}')

        logging.info(f'solve completed in {get_current_time() - start_time:.3f} seconds')
        logging.info(f'LOG file at:    {os.path.join(self.log_dir, self.log_filename)}')
        return EXIT_OK

    # ###############################################################
    # bench
    #

    def _bench_settings(self):
        """Options merged with the YAML plan: explicit option / env var > plan > default"""
        settings = dict(self.ctx.params)
        plan_name = settings.get('plan')
        if not plan_name:
            return settings

        plan = BenchEngine.load_yaml(BenchEngine.find_plan_file(plan_name, self.input_dir))
        plan = BenchEngine.resolve_env_vars(plan)
        logging.info(f'bench plan {plan_name}: {sorted(plan)}')

        renamed = {'instances': 'instance', 'modes': 'mode'}
        for key, value in plan.items():
            name = renamed.get(key, key)
            source = self.ctx.get_parameter_source(name)
            if source in (None, ParameterSource.DEFAULT):
                if name in ('instance', 'mode') and isinstance(value, str):
                    value = [value]
                settings[name] = value
        return settings

    def bench(self):
        start_time = get_current_time()
        try:
            settings = self._bench_settings()
            weight_mode = resolve_weight_mode(settings.get('instance_format'), settings.get('weights'))
            max_steps = settings.get('max_steps')
            cutoff = settings.get('cutoff_seconds')
            if cutoff is None and max_steps is None:
                cutoff = ClickConfig.DEFAULT_CUTOFF_SECONDS
            modes = list(settings.get('mode') or ()) or [ClickConfig.DEFAULT_MODE]
            engine = BenchEngine(instances=list(settings.get('instance') or ()),
                                 seeds=settings.get('seeds') or ClickConfig.DEFAULT_SEEDS,
                                 modes=modes,
                                 jobs=int(settings.get('jobs') or ClickConfig.DEFAULT_JOBS),
                                 weights=weight_mode.value,
                                 complement=bool(settings.get('complement', False)),
                                 max_steps=max_steps,
                                 cutoff_seconds=cutoff,
                                 target_weight=settings.get('target_weight'),
                                 prime=int(settings.get('prime') or ClickConfig.DEFAULT_PRIME),
                                 mark_store=settings.get('mark_store') or ClickConfig.DEFAULT_MARK_STORE,
                                 restart_period=int(settings.get('restart_period') or ClickConfig.DEFAULT_RESTART_PERIOD),
                                 )
        except (ConfigError, ValueError) as exc:
            return self._fail(EXIT_USAGE, str(exc))
        except OSError as exc:
            return self._fail(EXIT_INPUT, str(exc))

        # imported here so solve/verify/convert never need openpyxl
        from rep_bench import BenchReport

        records = engine.run()
        report = BenchReport(records, timing=settings.get('timing', True))
        report.run()

        csv_path = settings.get('csv')
        if csv_path:
            with open(csv_path, 'w', newline='') as stream:
                report.write_csv(stream)
            logging.info(f'CSV written to {csv_path}')
        else:
            report.write_csv(click.get_text_stream('stdout'))

        xlsx_path = settings.get('xlsx')
        if xlsx_path:
            from lib_excel import ExcelManager
            excel = ExcelManager()
            excel.create_spreadsheet(xlsx_path)
            excel.add_title_tab('TITLE', ClickConfig.CLICK_PROGRAM_NAME + ' benchmark',
                                {'time_uid': self.TIME_UID,
                                 'instances': len(engine.instances),
                                 'seeds': f'{engine.seeds[0]}..{engine.seeds[-1]}',
                                 'modes': ', '.join(m.value for m in engine.modes),
                                 'max_steps': max_steps,
                                 'cutoff_seconds': cutoff,
                                 })
            report.excel_manager = excel
            report.write_excel_tab()
            excel.save_and_close()

        elapsed_time = get_current_time() - start_time
        logging.info(f'bench completed: {len(records)} runs, {report.failed} failed, {elapsed_time:.1f} seconds')
        logging.info(f'LOG file at:    {os.path.join(self.log_dir, self.log_filename)}')
        return EXIT_USAGE if report.failed else EXIT_OK

    # ###############################################################
    # verify
    #

    def verify(self):
        instance = self._param('instance')
        solution = self._param('solution')
        try:
            weight_mode = resolve_weight_mode(self._param('instance_format'), self._param('weights'))
        except ConfigError as exc:
            return self._fail(EXIT_USAGE, str(exc))
        try:
            graph = load_instance(instance, weight_mode=weight_mode,
                                  complement_graph=self._param('complement', False))
            vertices, claimed = read_solution_file(solution)
        except (InstanceParseError, OSError) as exc:
            return self._fail(EXIT_INPUT, str(exc))

        outside = [v for v in vertices if not 1 <= v <= graph.n]
        if outside:
            click.echo(f'not a clique: vertex {outside[0]} outside [1, {graph.n}]')
            return EXIT_NOT_CLIQUE
        pair = graph.first_non_adjacent_pair(vertices)
        if pair is not None:
            click.echo(f'not a clique: vertices {pair[0]} and {pair[1]} are not adjacent')
            return EXIT_NOT_CLIQUE
        actual = graph.clique_weight(set(vertices))
        if actual != claimed:
            click.echo(f'weight mismatch: claimed {claimed}, actual {actual}')
            return EXIT_WEIGHT_MISMATCH
        click.echo(f'valid clique of {len(set(vertices))} vertices, weight {actual}')
        return EXIT_OK

    # ###############################################################
    # convert
    #

    def convert(self):
        instance = self._param('instance')
        try:
            weight_mode = resolve_weight_mode(self._param('instance_format'), self._param('weights'))
        except ConfigError as exc:
            return self._fail(EXIT_USAGE, str(exc))
        try:
            graph = load_instance(instance, weight_mode=weight_mode,
                                  complement_graph=self._param('complement', False))
        except (InstanceParseError, OSError) as exc:
            return self._fail(EXIT_INPUT, f'{instance}: {exc}')

        comment = f'converted from {os.path.basename(str(instance))}, weights {graph.diagnostics["weight_mode"]}'
        if graph.diagnostics.get('complemented'):
            comment += ', complemented'
        out_path = self._param('out_file')
        if out_path:
            try:
                with open(out_path, 'w') as stream:
                    write_instance(graph, stream, comment=comment)
            except OSError as exc:
                return self._fail(EXIT_INPUT, str(exc))
            logging.info(f'wrote {out_path}: n={graph.n} m={graph.m}')
        else:
            write_instance(graph, click.get_text_stream('stdout'), comment=comment)
        return EXIT_OK


def run_command(ctx, method_name):
    """Run ClickMain.<method_name> and exit with its code"""
    try:
        code = getattr(ClickMain(ctx), method_name)()
    except MwcSolverException as exc:
        logging.exception(f'{method_name} failed')
        click.secho(f'ERROR: {exc}', fg='red', err=True)
        code = EXIT_USAGE
    ctx.exit(code)
