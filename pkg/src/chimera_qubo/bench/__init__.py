"""Instance files, statistics and the experiment harness."""

from .experiment import ExperimentSpec, Report, run_experiment, run_on_instances
from .fileio import (convert_external, parse_edge_list, parse_instance, read_instance,
                     serialize_instance, write_instance)
from .stats import RunStats, compute_stats

__all__ = [
    "ExperimentSpec", "Report", "RunStats", "compute_stats", "convert_external",
    "parse_edge_list", "parse_instance", "read_instance", "run_experiment",
    "run_on_instances", "serialize_instance", "write_instance",
]
