"""Multi-neighborhood local search for maximum weight clique

One local move (C empty -> random maximal clique construction first):

    v      = best free vertex of S_add
    (u, u') = best pair of S_swap with u' free
    if v exists:          add v, unless a swap exists with Delta_swap >= Delta_add
    else:
        if no swap or Delta_swap < 0:               # no improving move
            if the previous move improved:          # local optimum
                record best; if hash(scenario) is marked: sweep C and return
                mark hash(scenario)
            lastStepImproved = false
        else:
            lastStepImproved = true
        x = best vertex of C to drop (drops are never tabu)
        drop x, unless a swap exists with Delta_swap >= Delta_drop
    apply tabu rules; step += 1

Best = greatest Delta, ties to the oldest vertex (smallest last_flip_step), residual ties to
the lowest index.  "Free" is FRU's free(v) for the scenario-checking modes and SCC's
confChange(v) for the baseline modes.
"""

import logging
import random
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Tuple

from .clique_state import CliqueState
from .exceptions import ConfigError, SolutionError
from .scenario_hash import DEFAULT_PRIME, MarkStore, ScenarioHash, SolutionHash, make_mark_table
from .tabu import FruState, SccState

logger = logging.getLogger(__name__)

DEFAULT_RESTART_PERIOD = 4000


class SolverMode(str, Enum):
    TRSC = 'trsc'                                   # FRU + scenario-hash restart
    LSCC = 'lscc'                                   # SCC + restart every L steps
    TRSC_SOLUTION_HASH = 'trsc_solution_hash'       # FRU + restart on revisited clique
    TRSC_NO_RESTART = 'trsc_no_restart'             # FRU alone
    SCC_NO_RESTART = 'scc_no_restart'               # SCC alone

    @classmethod
    def parse(cls, name):
        """Accept a member, or either of the 'trsc-no-restart' / 'trsc_no_restart' spellings"""
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower().replace('-', '_'))
        except ValueError:
            raise ConfigError(f'unknown solver mode "{name}"') from None

    @property
    def cli_name(self):
        return self.value.replace('_', '-')

    @property
    def uses_fru(self):
        return self in (SolverMode.TRSC, SolverMode.TRSC_SOLUTION_HASH, SolverMode.TRSC_NO_RESTART)

    @property
    def restarts_on_revisit(self):
        return self in (SolverMode.TRSC, SolverMode.TRSC_SOLUTION_HASH)

    @property
    def counts_construction_steps(self):
        return not self.uses_fru


@dataclass(frozen=True)
class SolverConfig:
    """Run parameters; at least one of cutoff_seconds / max_steps must be set"""
    mode: SolverMode = SolverMode.TRSC
    cutoff_seconds: Optional[float] = None
    max_steps: Optional[int] = None
    seed: int = 1
    restart_period: int = DEFAULT_RESTART_PERIOD     # L, lscc only
    prime: int = DEFAULT_PRIME
    restart_sweep_locks: bool = True
    mark_store: MarkStore = MarkStore.BITSET
    target_weight: Optional[int] = None
    start_vertex: Optional[int] = None               # pins the first construction
    construction_order: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'mode', SolverMode.parse(self.mode))
        try:
            object.__setattr__(self, 'mark_store', MarkStore(self.mark_store))
        except ValueError:
            raise ConfigError(f'unknown mark store "{self.mark_store}"') from None
        if self.construction_order is not None:
            object.__setattr__(self, 'construction_order', tuple(self.construction_order))

        if self.cutoff_seconds is None and self.max_steps is None:
            raise ConfigError('set at least one of cutoff_seconds / max_steps')
        if self.cutoff_seconds is not None and self.cutoff_seconds <= 0:
            raise ConfigError(f'cutoff_seconds must be positive, got {self.cutoff_seconds}')
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigError(f'max_steps must be at least 1, got {self.max_steps}')
        if self.restart_period < 1:
            raise ConfigError(f'restart period must be at least 1, got {self.restart_period}')
        if self.prime <= 2:
            raise ConfigError(f'hash modulus must be a prime > 2, got {self.prime}')


@dataclass(frozen=True)
class SolverResult:
    best_weight: int
    best_clique: Tuple[int, ...]
    time_to_best: float
    steps: int
    restarts: int
    restart_period_avg: float
    marked_scenarios: int
    best_step: int = 0
    restart_steps: Tuple[int, ...] = field(default=())
    mode: str = SolverMode.TRSC.value
    seed: int = 1

    def to_dict(self):
        data = asdict(self)
        data['best_clique'] = list(self.best_clique)
        data['restart_steps'] = list(self.restart_steps)
        return data


class MoveOutcome(NamedTuple):
    moved: bool
    restarted: bool


def select_best(candidates, delta, age):
    """argmax by delta, then by age (oldest), then lowest index; None for no candidates"""
    best = None
    best_key = None
    for x in candidates:
        key = (delta(x), age(x), -x)
        if best_key is None or key > best_key:
            best, best_key = x, key
    return best


class MwcSolver(object):
    """One solver run over an immutable graph; owns all mutable search state"""

    def __init__(self, graph, config, pow_table=None):
        if graph.n < 1:
            raise ConfigError('graph has no vertices')
        if config.start_vertex is not None and not 1 <= config.start_vertex <= graph.n:
            raise ConfigError(f'start vertex {config.start_vertex} outside [1, {graph.n}]')

        self.graph = graph
        self.config = config
        self.mode = config.mode
        self.rng = random.Random(config.seed)
        self.state = CliqueState(graph)

        if self.mode.uses_fru:
            self.tabu = FruState(graph)
            self._free = self.tabu.free
            hash_class = SolutionHash if self.mode is SolverMode.TRSC_SOLUTION_HASH else ScenarioHash
            self.scenario_hash = hash_class(graph.n, graph.m, config.prime, pow_table)
            self.marks = make_mark_table(config.mark_store, config.prime)
        else:
            self.tabu = SccState(graph)
            self._free = self.tabu.conf_change
            self.scenario_hash = None
            self.marks = None

        self.last_step_improved = False
        self.best_weight = -1
        self.best_clique = ()
        self.best_step = 0
        self.time_to_best = 0.0
        self.restarts = 0
        self.restart_log = []
        self.local_optima = 0
        self.marked_hits = 0
        self._constructions = 0
        self._start = time.monotonic()

    # ###############################################################
    # Driver
    #

    def run(self):
        """Call local_move until the step budget, the cutoff or the target weight is reached"""
        config = self.config
        self._start = time.monotonic()
        deadline = None if config.cutoff_seconds is None else self._start + config.cutoff_seconds
        logger.info(f'run start: mode={self.mode.value} seed={config.seed} n={self.graph.n} m={self.graph.m}')

        while True:
            if config.max_steps is not None and self.steps >= config.max_steps:
                break
            if deadline is not None and time.monotonic() >= deadline:
                break
            if config.target_weight is not None and self.best_weight >= config.target_weight:
                break
            self.local_move()

        result = self.result()
        logger.info(f'run end: best={result.best_weight} steps={result.steps} restarts={result.restarts}')
        return result

    @property
    def steps(self):
        """Steps performed so far"""
        return self.state.step - 1

    def result(self):
        graph = self.graph
        if not graph.is_clique(self.best_clique) or graph.clique_weight(self.best_clique) != max(self.best_weight, 0):
            raise SolutionError(f'best clique {self.best_clique} fails revalidation')
        steps = self.steps
        period = steps / self.restarts if self.restarts else float(steps)
        return SolverResult(best_weight=max(self.best_weight, 0),
                            best_clique=self.best_clique,
                            time_to_best=self.time_to_best,
                            steps=steps,
                            restarts=self.restarts,
                            restart_period_avg=period,
                            marked_scenarios=self.marks.count if self.marks is not None else 0,
                            best_step=self.best_step,
                            restart_steps=tuple(self.restart_log),
                            mode=self.mode.value,
                            seed=self.config.seed,
                            )

    # ###############################################################
    # Local move
    #

    def local_move(self):
        state = self.state
        free = self._free
        last_flip = state.last_flip_step

        def age(x):
            return -last_flip[x]

        if not state.members:
            cut_short = self._construct()
            if cut_short is not None:
                return cut_short
            self.last_step_improved = True
            self._update_best()

        add_v = select_best((x for x in state.add_set if free[x]), state.delta_add, age)

        witness = state.witness
        swap_in = select_best((x for x in state.swap_set if free[x]),
                              lambda x: state.delta_swap(witness(x), x), age)
        if swap_in is not None:
            swap_out = witness(swap_in)
            delta_swap = state.delta_swap(swap_out, swap_in)

        if add_v is not None:
            if swap_in is None or state.delta_add(add_v) > delta_swap:
                self._apply_add(add_v)
            else:
                self._apply_swap(swap_out, swap_in)
            self.last_step_improved = True
        else:
            if swap_in is None or delta_swap < 0:
                if self.last_step_improved:
                    self._update_best()
                    if self._check_scenario():
                        return MoveOutcome(moved=False, restarted=True)
                self.last_step_improved = False
            else:
                self.last_step_improved = True

            drop_x = select_best(state.members, state.delta_drop, age)
            if swap_in is None or state.delta_drop(drop_x) > delta_swap:
                self._apply_drop(drop_x)
            else:
                self._apply_swap(swap_out, swap_in)

        state.step += 1
        self._update_best()
        if self._period_elapsed():
            self._periodic_restart()
            return MoveOutcome(moved=True, restarted=True)
        return MoveOutcome(moved=True, restarted=False)

    def lscc_mode_step(self):
        """One baseline move: SCC best-picking, C emptied whenever step % L == 0"""
        assert self.mode is SolverMode.LSCC, f'lscc_mode_step in mode {self.mode.value}'
        return self.local_move()

    def _check_scenario(self):
        """Local-optimum bookkeeping; True when the scenario was seen before and C was swept"""
        self.local_optima += 1
        if self.marks is None:
            return False
        h = self.scenario_hash.value
        if self.marks.is_marked(h):
            self.marked_hits += 1
            if self.mode.restarts_on_revisit:
                self._sweep_restart()
                return True
            return False
        self.marks.mark(h)
        return False

    # ###############################################################
    # Construction and restarts
    #

    def _construct(self):
        """Random maximal clique from C = {}.

        Returns None once C is maximal.  In the step-counting modes an lscc restart or the
        max_steps budget can end the construction early; the outcome of the move is returned
        then.
        """
        state = self.state
        rng = self.rng
        config = self.config
        pinned = self._constructions == 0
        self._constructions += 1

        if pinned and config.start_vertex is not None:
            first = config.start_vertex
        else:
            first = rng.randrange(1, self.graph.n + 1)
        cut_short = self._construction_add(first)
        if cut_short is not None:
            return cut_short

        preferred = list(config.construction_order or ()) if pinned else []
        while state.add_set:
            choice = next((x for x in preferred if x in state.add_set), None)
            if choice is None:
                candidates = sorted(state.add_set)
                choice = candidates[rng.randrange(len(candidates))]
            cut_short = self._construction_add(choice)
            if cut_short is not None:
                return cut_short
        return None

    def _construction_add(self, v):
        self._apply_add(v)
        if not self.mode.counts_construction_steps:
            return None
        self.state.step += 1
        if self._period_elapsed():
            self._update_best()
            self._periodic_restart()
            return MoveOutcome(moved=True, restarted=True)
        max_steps = self.config.max_steps
        if max_steps is not None and self.steps >= max_steps:
            self._update_best()
            return MoveOutcome(moved=True, restarted=False)
        return None

    def _period_elapsed(self):
        return self.mode is SolverMode.LSCC and self.state.step % self.config.restart_period == 0

    def _sweep_restart(self):
        """Drop every vertex of C in one step"""
        state = self.state
        lock = self.config.restart_sweep_locks
        for v in sorted(state.members):
            self.tabu.on_remove(v, self.scenario_hash, lock=lock)
        state.clear()
        self.restarts += 1
        self.restart_log.append(state.step)
        logger.debug(f'scenario revisited, restart {self.restarts} at step {state.step}')
        state.step += 1

    def _periodic_restart(self):
        self.state.clear()
        self.restarts += 1
        self.restart_log.append(self.state.step)
        logger.debug(f'periodic restart {self.restarts} at step {self.state.step}')

    # ###############################################################
    # Moves with tabu rules
    #

    def _apply_add(self, v):
        self.state.add(v)
        if self.mode.uses_fru:
            self.tabu.on_add(v, self.scenario_hash)
        else:
            self.tabu.on_add(v)

    def _apply_drop(self, v):
        self.state.drop(v)
        if self.mode.uses_fru:
            self.tabu.on_remove(v, self.scenario_hash)
        else:
            self.tabu.on_drop(v)

    def _apply_swap(self, u, v):
        self.state.swap(u, v)
        if self.mode.uses_fru:
            self.tabu.on_remove(u, self.scenario_hash)
            self.tabu.on_add(v, self.scenario_hash)
        else:
            self.tabu.on_swap_out(u)
            self.tabu.on_add(v)

    def _update_best(self):
        state = self.state
        if state.clique_weight > self.best_weight:
            self.best_weight = state.clique_weight
            self.best_clique = tuple(sorted(state.members))
            self.best_step = state.step
            self.time_to_best = time.monotonic() - self._start


def run(graph, config, pow_table=None):
    """Solve graph under config and return the SolverResult"""
    return MwcSolver(graph, config, pow_table=pow_table).run()
