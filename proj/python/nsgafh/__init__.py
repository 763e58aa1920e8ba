"""NSGA-II with a fixed-hypergrid external archive."""

import json as _json

from ._nsgafh import (
    Archive,
    ArchiveFullError,
    ArchiveStats,
    ConfigError,
    ContractViolation,
    EngineParams,
    HypergridConfig,
    Problem,
    RunResult,
    Solution,
    UpdateOutcome,
    cell_index,
    dominates,
    evolve,
    identical,
    metrics,
    problem,
    problem_names,
)
from ._nsgafh import harness as _harness


def run(config):
    """Run a harness experiment from a config dict. Returns the report path."""
    return _harness.run(_json.dumps(config))


def compare_timing(config):
    """CSV timing table for the config with and without the archive."""
    return _harness.compare_timing(_json.dumps(config))


def default_config():
    return _json.loads(_harness.default_config())
