"""mwcsolver Library


mwcsolver is a local-search library for the Maximum Weight Clique problem.  It carries the
scenario-checking solver (forbidding-repeated-unlocking tabu plus scenario-hash restart), the
strong-configuration-checking baseline with its fixed restart period, a solution-only-hash
ablation, DIMACS instance parsing and an exact branch-and-bound oracle for small graphs.

"""

# Set default logging handler to avoid "No handler found" warnings.
import logging

from .graph import WeightedGraph, parse_instance, load_instance, complement
from .solver import MwcSolver, SolverConfig, SolverMode, SolverResult, run
from .oracle import exact_mwc


__version__ = '0.1.0'


# Initialize Package Logging
logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())
