import sys
import time


class ClickConfig(object):
    """
    Default Config holding all defaults for program.

    Variables that need to be initialized once are done so in __init__ but stored as
    class variables so they are common.  This config can be called by multiple modules
    and it will not re-initialize those variables.
    """

    # Variables used by calling click module
    CLICK_ENV_PREFIX = 'MWC'        # prefix for auto environment variables
    CLICK_PROGRAM_NAME = 'MWC Solver'
    CLICK_PROGRAM_HEADER = ' - maximum weight clique local search'
    CLICK_PROGRAM_VERSION = '0.1.0'
    CLICK_PROGRAM_HELP_LINE = '''Maximum weight clique local search (scenario-checking restarts)

        '''
    CLICK_HELP_EPILOG = '''Commands:

        solve   run one solver on one instance and print the best clique.

        bench   run every (instance, seed, mode) combination and write one CSV row per run plus a
        w_max / w_avg summary per instance and mode.

        verify  check a solution file (vertex indices and a claimed weight) against an instance.

        convert write an instance back out with explicit vertex weight lines.

        *** Using the CONFIG file option (-c, --config) ***

        The -c, --config option loads an environment file before the other options are read.
        Name the file ".env.NAME" and place it in the "input" directory, then call "-c NAME".
        Variables are named MWC_<COMMAND>_<OPTION>, for example MWC_BENCH_SEEDS=1..100.  An
        explicit option on the command-line still wins over the config file.


        '''

    # variables for supporting Click command line options
    DEFAULT_ENV_FILE = '.env'
    DEFAULT_LOG_DIR = 'logs'
    DEFAULT_IN_DIR = 'input'

    DEFAULT_MODE = 'trsc'
    DEFAULT_FORMAT = 'auto'
    DEFAULT_WEIGHTS = 'auto'
    DEFAULT_CUTOFF_SECONDS = 10.0
    DEFAULT_SEED = 1
    DEFAULT_RESTART_PERIOD = 4000
    DEFAULT_PRIME = 1_000_000_007
    DEFAULT_MARK_STORE = 'bitset'
    DEFAULT_SEEDS = '1..10'
    DEFAULT_JOBS = 1
    DEFAULT_OUTPUT = 'text'

    INSTANCE_SUFFIXES = ('.clq', '.wclq', '.col', '.dimacs', '.txt', '.gz', '.bz2')
    CSV_SCHEMA_LINE = '# mwc-bench-csv v1'

    # variables for supporting active script
    TIME_UID = 'UNINITIALIZED'

    def __init__(self):

        # variables that need to be initialized once
        if ClickConfig.TIME_UID == 'UNINITIALIZED':
            ClickConfig.TIME_UID = str(time.strftime("%Y%m%d-%H%M%S"))

    @staticmethod
    def program_stem():
        stem = sys.argv[0].replace('\\', '/').split('/')[-1].split('.')[0]
        return stem or 'clickmwc'
