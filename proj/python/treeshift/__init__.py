"""Shift operators on Hardy spaces of rooted trees.

Trees are given the same way as on the command line: ``gallery:k_tree?k=3``,
an inline JSON spec, or a path to a JSON file. Reports come back as dicts.
"""

import json

from ._treeshift import (
    ContradictionError,
    DepthError,
    InvalidArgument,
    ResourceLimitError,
    TreeshiftError,
)
from ._treeshift import Tree as _Tree
from ._treeshift import gallery_list as _gallery_list
from ._treeshift import self_test as _self_test

__all__ = [
    "Tree",
    "gallery_list",
    "self_test",
    "TreeshiftError",
    "DepthError",
    "ResourceLimitError",
    "ContradictionError",
    "InvalidArgument",
]


def _function_text(f):
    return f if isinstance(f, str) else json.dumps(f)


class Tree:
    """A materialized prefix of levels 0..depth."""

    def __init__(self, spec, depth=32):
        if isinstance(spec, dict):
            spec = json.dumps(spec)
        self._t = _Tree(spec, depth)

    @property
    def depth(self):
        return self._t.depth

    @property
    def level_sizes(self):
        return self._t.level_sizes

    def gamma(self, n):
        return self._t.gamma(n)

    def gamma_sub(self, m, level, index):
        return self._t.gamma_sub(m, level, str(index))

    def K(self, m, r):
        return self._t.K(m, r)

    def leafless(self):
        return self._t.leafless()

    def describe(self):
        return json.loads(self._t.describe())

    def norm(self, op, p=1.0, power=1):
        return json.loads(self._t.norm(op, p, power))

    def function_norm(self, f, p=1.0):
        return json.loads(self._t.function_norm(_function_text(f), p))

    def apply(self, op, f, power=1):
        return json.loads(self._t.apply(op, _function_text(f), power))

    def radius(self, op, p=1.0, max_power=10):
        return json.loads(self._t.radius(op, p, max_power))

    def witness(self, kind, lam="0", p=1.0, vertex="0:0", mode="Hp"):
        return json.loads(self._t.witness(kind, str(lam), p, vertex, mode))

    def isometry(self, p=1.0):
        return json.loads(self._t.isometry(p))

    def hypercyclic(self, op):
        return json.loads(self._t.hypercyclic(op))

    def kgs_suite(self, samples=100, n_max=10, p=1.0, seed=1):
        return json.loads(self._t.kgs_suite(samples, n_max, p, seed))

    def verify(self, op, power=1, p=1.0, trials=500, seed=1):
        return json.loads(self._t.verify(op, power, p, trials, seed))


def gallery_list():
    return json.loads(_gallery_list())


def self_test(name, params=None, depth=32, p_list=(1.0, 2.0), max_power=6):
    return json.loads(_self_test(name, json.dumps(params or {}), depth, list(p_list), max_power))
