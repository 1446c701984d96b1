"""Nullcone ideals, arithmetic-rank certificates and point counts."""

import json

from . import _core
from ._core import BudgetExceeded, ResourceLimit, formulas, generators, grid_names

__all__ = [
    "BudgetExceeded",
    "ResourceLimit",
    "certify",
    "check_height",
    "closed_count",
    "count",
    "formulas",
    "generators",
    "grid_names",
    "run_cli",
    "run_grid",
]


def check_height(family, t, n, m=0, field="p=32003"):
    return json.loads(_core.check_height_json(family, t, n, m, field))


def certify(family, t, n, m=0, field="p=32003", seed=0, count=-1):
    return json.loads(_core.certify_json(family, t, n, m, field, seed, count))


def count(space, q, t=0, n=0, m=0, k=0, threads=0):
    return int(_core.enumerate(space, q, t, n, m, k, threads))


def closed_count(space, q, t=0, n=0, m=0, k=0):
    return int(_core.closed_count(space, q, t, n, m, k))


def run_grid(name, threads=0):
    return json.loads(_core.run_grid_json(name, threads))


def run_cli(*args):
    """Returns (exit_code, stdout, stderr) for the command line given by args."""
    return _core.run_cli(list(args))
