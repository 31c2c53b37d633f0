"""
Benchmark engine: expands instances x seeds x modes into solver jobs and runs them

The engine owns:
    -the optional YAML plan file (keys mirror the bench options)
    -instance discovery (files, or every instance file inside a directory)
    -the job list, in deterministic (instance, seed, mode) order
    -the worker pool for --jobs K; results are sorted after collection so K does not
     change the output
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import yaml

from engine.mwc_config import ClickConfig
from mwcsolver.exceptions import ConfigError, MwcSolverException
from mwcsolver.graph import load_instance
from mwcsolver.solver import MwcSolver, SolverConfig, SolverMode

logger = logging.getLogger(__name__)

PLAN_KEYS = ('instances', 'seeds', 'modes', 'max_steps', 'cutoff_seconds', 'target_weight',
             'weights', 'complement', 'prime', 'mark_store', 'restart_period', 'jobs', 'csv', 'xlsx')


@dataclass(frozen=True)
class BenchJob:
    instance: str
    seed: int
    mode: str
    mode_rank: int
    weights: str = 'auto'
    complement: bool = False
    max_steps: Optional[int] = None
    cutoff_seconds: Optional[float] = None
    target_weight: Optional[int] = None
    prime: int = ClickConfig.DEFAULT_PRIME
    mark_store: str = ClickConfig.DEFAULT_MARK_STORE
    restart_period: int = ClickConfig.DEFAULT_RESTART_PERIOD

    @property
    def sort_key(self):
        return self.instance, self.seed, self.mode_rank


@dataclass(frozen=True)
class RunRecord:
    """One (instance, seed, mode) run; error is set instead of the result fields on failure"""
    instance: str
    seed: int
    mode: str
    best_weight: Optional[int] = None
    time_to_best: Optional[float] = None
    steps: Optional[int] = None
    restarts: Optional[int] = None
    restart_period_avg: Optional[float] = None
    best_clique: Tuple[int, ...] = ()
    error: Optional[str] = None
    mode_rank: int = 0

    @property
    def ok(self):
        return self.error is None

    @property
    def sort_key(self):
        return self.instance, self.seed, self.mode_rank


@lru_cache(maxsize=8)
def _cached_instance(path, weights, complement):
    return load_instance(path, weight_mode=weights, complement_graph=complement)


def run_job(job):
    """Worker entry point; never raises, failures become error records"""
    try:
        graph = _cached_instance(job.instance, job.weights, job.complement)
        config = SolverConfig(mode=job.mode,
                              cutoff_seconds=job.cutoff_seconds,
                              max_steps=job.max_steps,
                              seed=job.seed,
                              restart_period=job.restart_period,
                              prime=job.prime,
                              mark_store=job.mark_store,
                              target_weight=job.target_weight,
                              )
        result = MwcSolver(graph, config).run()
    except (MwcSolverException, OSError) as exc:
        logger.error(f'{job.instance} seed={job.seed} mode={job.mode}: {exc}')
        return RunRecord(instance=job.instance, seed=job.seed, mode=job.mode,
                         error=f'{exc.__class__.__name__}: {exc}', mode_rank=job.mode_rank)

    return RunRecord(instance=job.instance,
                     seed=job.seed,
                     mode=job.mode,
                     best_weight=result.best_weight,
                     time_to_best=result.time_to_best,
                     steps=result.steps,
                     restarts=result.restarts,
                     restart_period_avg=result.restart_period_avg,
                     best_clique=result.best_clique,
                     mode_rank=job.mode_rank,
                     )


class BenchEngine(object):
    def __init__(self, instances, seeds, modes, jobs=1, **solver_options):
        """
        :param instances:       list of instance files and/or directories
        :param seeds:           seed range string ("1..10", "3", "1,4,9") or iterable of ints
        :param modes:           list of mode names, either spelling
        :param jobs:            worker processes; 1 runs in-process
        :param solver_options:  weights, complement, max_steps, cutoff_seconds, target_weight,
                                prime, mark_store, restart_period
        """
        if jobs < 1:
            raise ConfigError(f'--jobs must be at least 1, got {jobs}')
        self.instances = self.collect_instances(instances)
        self.seeds = self.parse_seeds(seeds)
        self.modes = [SolverMode.parse(m) for m in modes]
        if not self.modes:
            raise ConfigError('no solver mode selected')
        self.jobs = jobs
        self.solver_options = solver_options

        # validate the shared solver settings once, before any worker starts
        SolverConfig(mode=self.modes[0],
                     **{k: v for k, v in solver_options.items()
                        if k in ('cutoff_seconds', 'max_steps', 'restart_period', 'prime',
                                 'mark_store', 'target_weight')})

    # ###############################################################
    # Plan file and option parsing
    #

    @staticmethod
    def find_plan_file(filename, input_dir=ClickConfig.DEFAULT_IN_DIR, suffix='yaml'):
        """First match of FILENAME (with or without .yaml) in input_dir, then the working directory"""
        for d in (input_dir, '.'):
            for candidate in (os.path.join(d, filename), os.path.join(d, f'{filename}.{suffix}')):
                if os.path.isfile(candidate):
                    return candidate
        raise ConfigError(f'plan file "{filename}" not found in "{input_dir}" or the working directory')

    @staticmethod
    def load_yaml(file_path):
        """
        Loads a YAML plan file.

        :param file_path (str): The path to the YAML file.
        :return:                plan dictionary, keys restricted to PLAN_KEYS
        """
        try:
            with open(file_path, 'r') as yaml_file:
                data = yaml.safe_load(yaml_file)
        except yaml.YAMLError as exc:
            raise ConfigError(f'error parsing plan file {file_path}: {exc}') from None

        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(f'plan file {file_path} must hold a mapping')
        unknown = sorted(set(data) - set(PLAN_KEYS))
        if unknown:
            raise ConfigError(f'unknown plan keys: {", ".join(unknown)}')
        return data

    @classmethod
    def resolve_env_vars(cls, data, env_prefix='.env.'):
        """
        Recursively resolve ".env.NAME" string values against the environment.

        Edits data in place and returns it.  A missing variable is a ConfigError, a
        benchmark never stops to prompt.
        """
        if isinstance(data, dict):
            for key, value in data.items():
                data[key] = cls.resolve_env_vars(value, env_prefix)
        elif isinstance(data, list):
            for i in range(len(data)):
                data[i] = cls.resolve_env_vars(data[i], env_prefix)
        elif isinstance(data, str) and data.startswith(env_prefix):
            var_name = data[len(env_prefix):]
            if var_name not in os.environ:
                raise ConfigError(f'plan references unset environment variable {var_name}')
            return os.environ[var_name]
        return data

    @staticmethod
    def parse_seeds(value):
        """ "A..B" (inclusive), "N" or "N,M,..." -> sorted list of distinct seeds"""
        if isinstance(value, int):
            value = [value]
        if not isinstance(value, str):
            try:
                seeds = sorted({int(s) for s in value})
            except (TypeError, ValueError):
                raise ConfigError(f'invalid seed list {value!r}') from None
        else:
            text = value.strip()
            try:
                if '..' in text:
                    low, high = (int(part) for part in text.split('..', 1))
                    if low > high:
                        raise ConfigError(f'empty seed range "{value}"')
                    seeds = list(range(low, high + 1))
                else:
                    seeds = sorted({int(part) for part in text.split(',') if part.strip()})
            except ValueError:
                raise ConfigError(f'invalid seed range "{value}", expected A..B') from None
        if not seeds:
            raise ConfigError('no seeds selected')
        return seeds

    @staticmethod
    def collect_instances(paths):
        """Instance files in sorted path order; directories contribute their instance files"""
        found = set()
        for path in paths:
            path = str(path)
            if os.path.isdir(path):
                for name in os.listdir(path):
                    full = os.path.join(path, name)
                    if os.path.isfile(full) and name.lower().endswith(ClickConfig.INSTANCE_SUFFIXES):
                        found.add(full)
            else:
                found.add(path)
        if not found:
            raise ConfigError('no instance files found')
        return sorted(found)

    # ###############################################################
    # Running
    #

    def build_jobs(self):
        jobs = []
        for instance in self.instances:
            for seed in self.seeds:
                for rank, mode in enumerate(self.modes):
                    jobs.append(BenchJob(instance=instance, seed=seed, mode=mode.value,
                                         mode_rank=rank, **self.solver_options))
        return jobs

    def run(self):
        """Run every job and return the RunRecords sorted by (instance, seed, mode order)"""
        jobs = self.build_jobs()
        logger.info(f'bench: {len(self.instances)} instances x {len(self.seeds)} seeds x '
                    f'{len(self.modes)} modes = {len(jobs)} runs, {self.jobs} worker(s)')

        if self.jobs == 1:
            records = [run_job(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                records = list(pool.map(run_job, jobs))

        records.sort(key=lambda r: r.sort_key)
        failed = sum(1 for r in records if not r.ok)
        if failed:
            logger.warning(f'bench: {failed} of {len(records)} runs failed')
        return records
