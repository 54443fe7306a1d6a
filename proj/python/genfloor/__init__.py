"""Floorplan generation from perturbed O-trees and B*-trees."""

import json

from . import _core
from ._core import ValidationError

__all__ = [
    "ValidationError",
    "problem_from_csv",
    "load_problem",
    "standard_tree",
    "identity_params",
    "perturb",
    "generate",
    "evaluate",
    "optimize",
    "extend",
    "render",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def problem_from_csv(text, method="bstar_available_nodes"):
    return json.loads(_core.problem_from_csv(text, method))


def load_problem(path):
    """Problem dict from a .csv requirements file or a problem .json file."""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    if str(path).endswith(".csv"):
        return problem_from_csv(text)
    return json.loads(_core.normalize_problem(text))


def standard_tree(method, n):
    return _core.standard_tree(method, n)


def identity_params(method, n):
    return _core.identity_params(method, n)


def perturb(method, n, params):
    """Bracket string of the standard tree of size n after perturbation."""
    return _core.perturb(method, n, params)


def generate(problem, params="", rotations=()):
    return json.loads(_core.generate(_dump(problem), params, list(rotations)))


def evaluate(floorplan, problem, level="L1"):
    return json.loads(_core.evaluate(_dump(floorplan), _dump(problem), level))


def optimize(problem, config=None, out_dir=""):
    """Runs NSGA-II. Returns {"history": [...], "pareto": [...]}; writes run artifacts when out_dir is set."""
    return json.loads(_core.optimize(_dump(problem), _dump(config or {}), str(out_dir)))


def extend(floorplan, width, height, problem):
    return json.loads(_core.extend(_dump(floorplan), float(width), float(height), _dump(problem)))


def render(floorplan, kind="floorplan", problem=None, level="L1", size=640):
    return _core.render(_dump(floorplan), kind, "" if problem is None else _dump(problem), level, size)
